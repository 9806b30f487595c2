#include "dtpasp/ast.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace dtpasp {

std::string Term::to_string() const {
  switch (kind) {
    case Kind::Constant: return name;
    case Kind::Variable: return name;
    case Kind::Integer: return std::to_string(value);
  }
  return {};
}

std::string Atom::to_string() const {
  if (args.empty()) return predicate;
  std::string out = predicate + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ",";
    out += args[i].to_string();
  }
  out += ")";
  return out;
}

std::string Literal::to_string() const {
  return positive ? atom.to_string() : "not " + atom.to_string();
}

std::string comparator_to_string(Comparator c) {
  switch (c) {
    case Comparator::Lt: return "<";
    case Comparator::Le: return "<=";
    case Comparator::Gt: return ">";
    case Comparator::Ge: return ">=";
    case Comparator::Eq: return "=";
    case Comparator::Ne: return "!=";
  }
  return {};
}

bool compare(std::int64_t lhs, Comparator c, std::int64_t rhs) {
  switch (c) {
    case Comparator::Lt: return lhs < rhs;
    case Comparator::Le: return lhs <= rhs;
    case Comparator::Gt: return lhs > rhs;
    case Comparator::Ge: return lhs >= rhs;
    case Comparator::Eq: return lhs == rhs;
    case Comparator::Ne: return lhs != rhs;
  }
  return false;
}

std::string AggregateAtom::to_string() const {
  std::string out = "#count{";
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (i) out += "; ";
    const auto& e = elements[i];
    for (std::size_t j = 0; j < e.terms.size(); ++j) {
      if (j) out += ",";
      out += e.terms[j].to_string();
    }
    out += " : ";
    for (std::size_t j = 0; j < e.condition.size(); ++j) {
      if (j) out += ", ";
      out += e.condition[j].to_string();
    }
  }
  out += "} " + comparator_to_string(comparator) + " " + guard.to_string();
  return out;
}

std::string BodyElement::to_string() const {
  return kind == Kind::Literal ? literal.to_string() : aggregate.to_string();
}

std::string Rule::to_string() const {
  std::string out;
  if (kind == Kind::Choice) {
    out = "{" + head[0].to_string() + "}";
  } else {
    for (std::size_t i = 0; i < head.size(); ++i) {
      if (i) out += " ; ";
      out += head[i].to_string();
    }
  }
  if (!body.empty() || kind == Kind::Constraint) {
    out += head.empty() && kind == Kind::Constraint ? ":- " : " :- ";
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (i) out += ", ";
      out += body[i].to_string();
    }
  }
  out += ".";
  return out;
}

std::string format_real(double v) {
  // Shortest round-trippable decimal form.
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  std::string s = buf;
  if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
      s.find("inf") == std::string::npos && s.find("nan") == std::string::npos)
    s += ".0";
  return s;
}

std::string Program::to_string() const {
  std::ostringstream out;
  for (const auto& pf : prob_facts)
    out << format_real(pf.prob) << "::" << pf.atom.to_string() << ".\n";
  for (const auto& d : decisions) out << "decision " << d.to_string() << ".\n";
  for (const auto& u : utilities)
    out << "utility(" << u.atom.to_string() << "," << format_real(u.reward) << ").\n";
  for (const auto& r : rules) out << r.to_string() << "\n";
  return out.str();
}

}  // namespace dtpasp
