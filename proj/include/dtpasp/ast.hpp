#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dtpasp {

// Error raised for malformed input or violated program-level contracts.
class ProgramError : public std::runtime_error {
 public:
  explicit ProgramError(const std::string& msg) : std::runtime_error(msg) {}
};

// A term is a constant symbol, an integer, or a variable. Variables start
// with an upper-case letter or '_', constants with a lower-case letter.
struct Term {
  enum class Kind { Constant, Integer, Variable };
  Kind kind = Kind::Constant;
  std::string name;      // constant or variable name
  std::int64_t value = 0;  // integer value when kind == Integer

  static Term constant(std::string n) { return {Kind::Constant, std::move(n), 0}; }
  static Term integer(std::int64_t v) { return {Kind::Integer, "", v}; }
  static Term variable(std::string n) { return {Kind::Variable, std::move(n), 0}; }

  bool is_variable() const { return kind == Kind::Variable; }
  bool operator==(const Term&) const = default;
  std::string to_string() const;
};

struct Atom {
  std::string predicate;
  std::vector<Term> args;

  bool ground() const {
    for (const auto& t : args)
      if (t.is_variable()) return false;
    return true;
  }
  bool operator==(const Atom&) const = default;
  std::string to_string() const;
};

// Body literal: an atom, possibly under negation as failure.
struct Literal {
  Atom atom;
  bool positive = true;

  bool operator==(const Literal&) const = default;
  std::string to_string() const;
};

enum class Comparator { Lt, Le, Gt, Ge, Eq, Ne };

std::string comparator_to_string(Comparator c);
bool compare(std::int64_t lhs, Comparator c, std::int64_t rhs);

// #count aggregate: elements are (term tuple : condition literals) pairs.
struct AggregateElement {
  std::vector<Term> terms;
  std::vector<Literal> condition;

  bool operator==(const AggregateElement&) const = default;
};

struct AggregateAtom {
  std::vector<AggregateElement> elements;
  Comparator comparator = Comparator::Eq;
  Term guard;  // integer or variable

  bool operator==(const AggregateAtom&) const = default;
  std::string to_string() const;
};

// One body element: either a literal or an aggregate atom.
struct BodyElement {
  enum class Kind { Literal, Aggregate };
  Kind kind = Kind::Literal;
  Literal literal;
  AggregateAtom aggregate;

  static BodyElement lit(Literal l) {
    BodyElement b;
    b.kind = Kind::Literal;
    b.literal = std::move(l);
    return b;
  }
  static BodyElement agg(AggregateAtom a) {
    BodyElement b;
    b.kind = Kind::Aggregate;
    b.aggregate = std::move(a);
    return b;
  }
  bool operator==(const BodyElement&) const = default;
  std::string to_string() const;
};

struct Rule {
  enum class Kind { Disjunctive, Normal, Constraint, Fact, Choice };
  std::vector<Atom> head;
  std::vector<BodyElement> body;
  Kind kind = Kind::Fact;

  bool operator==(const Rule&) const = default;
  std::string to_string() const;
};

struct ProbFact {
  Atom atom;
  double prob = 0.0;
  bool operator==(const ProbFact&) const = default;
};

struct UtilityAttr {
  Atom atom;
  double reward = 0.0;
  bool operator==(const UtilityAttr&) const = default;
};

// A DTPASP program: probabilistic facts, decision atoms, utility
// attributes, and plain ASP rules.
struct Program {
  std::vector<ProbFact> prob_facts;
  std::vector<Atom> decisions;
  std::vector<UtilityAttr> utilities;
  std::vector<Rule> rules;

  std::string to_string() const;
};

// Renders a real the way the surface syntax accepts it back.
std::string format_real(double v);

}  // namespace dtpasp
