#include "dtpasp/ground.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace dtpasp {
namespace {

using Subst = std::map<std::string, Term>;

Term substitute(const Term& t, const Subst& s) {
  if (!t.is_variable()) return t;
  auto it = s.find(t.name);
  return it == s.end() ? t : it->second;
}

Atom substitute(const Atom& a, const Subst& s) {
  Atom out{a.predicate, {}};
  out.args.reserve(a.args.size());
  for (const auto& t : a.args) out.args.push_back(substitute(t, s));
  return out;
}

void collect_vars(const Atom& a, std::set<std::string>& out) {
  for (const auto& t : a.args)
    if (t.is_variable()) out.insert(t.name);
}

std::string mangle(const Atom& a) {
  std::string out = a.predicate;
  for (const auto& t : a.args) out += "_" + t.to_string();
  return out;
}

struct RawRule {
  std::vector<Atom> head;
  std::vector<BodyElement> body;
  bool constraint = false;
};

class Grounder {
 public:
  explicit Grounder(const Program& p) : p_(p) {}

  GroundProgram run() {
    collect_universe();
    translate_rules();
    for (const auto& r : raw_) instantiate(r);
    prune_and_build();
    return std::move(out_);
  }

 private:
  void collect_term(const Term& t) {
    if (!t.is_variable()) universe_.insert(t);
  }
  void collect_atom(const Atom& a) {
    for (const auto& t : a.args) collect_term(t);
  }
  void collect_universe() {
    for (const auto& pf : p_.prob_facts) collect_atom(pf.atom);
    for (const auto& d : p_.decisions) collect_atom(d);
    for (const auto& u : p_.utilities) collect_atom(u.atom);
    for (const auto& r : p_.rules) {
      for (const auto& h : r.head) collect_atom(h);
      for (const auto& b : r.body) {
        if (b.kind == BodyElement::Kind::Literal) {
          collect_atom(b.literal.atom);
        } else {
          collect_term(b.aggregate.guard);
          for (const auto& e : b.aggregate.elements) {
            for (const auto& t : e.terms) collect_term(t);
            for (const auto& l : e.condition) collect_atom(l.atom);
          }
        }
      }
    }
    universe_list_.assign(universe_.begin(), universe_.end());
  }

  // Choice rule {a} :- B becomes a :- B, not aux and aux :- B, not a.
  void translate_rules() {
    for (const auto& r : p_.rules) {
      if (r.kind == Rule::Kind::Choice) {
        Atom aux{"_chc_" + mangle(r.head[0]), {}};
        for (const auto& t : r.head[0].args)
          if (t.is_variable()) aux.args.push_back(t);
        RawRule pick{{r.head[0]}, r.body, false};
        pick.body.push_back(BodyElement::lit({aux, false}));
        RawRule skip{{aux}, r.body, false};
        skip.body.push_back(BodyElement::lit({r.head[0], false}));
        raw_.push_back(std::move(pick));
        raw_.push_back(std::move(skip));
        aux_preds_.insert(aux.predicate);
      } else {
        raw_.push_back({r.head, r.body, r.kind == Rule::Kind::Constraint});
      }
    }
  }

  void check_safety(const RawRule& r) {
    std::set<std::string> positive;
    for (const auto& b : r.body)
      if (b.kind == BodyElement::Kind::Literal && b.literal.positive)
        collect_vars(b.literal.atom, positive);
    std::set<std::string> required;
    for (const auto& h : r.head) collect_vars(h, required);
    for (const auto& b : r.body) {
      if (b.kind == BodyElement::Kind::Literal) {
        if (!b.literal.positive) collect_vars(b.literal.atom, required);
      } else if (b.aggregate.guard.is_variable()) {
        required.insert(b.aggregate.guard.name);
      }
    }
    for (const auto& v : required) {
      if (!positive.count(v)) {
        std::string rule_text;
        for (std::size_t i = 0; i < r.head.size(); ++i)
          rule_text += (i ? " ; " : "") + r.head[i].to_string();
        throw ProgramError("unsafe rule (variable " + v +
                           " does not occur in a positive body literal): head " +
                           (rule_text.empty() ? "<constraint>" : rule_text));
      }
    }
  }

  // Global variables: everything outside aggregate elements, plus aggregate
  // element variables that also occur outside (local ones stay).
  std::set<std::string> global_vars(const RawRule& r) {
    std::set<std::string> outside;
    for (const auto& h : r.head) collect_vars(h, outside);
    for (const auto& b : r.body) {
      if (b.kind == BodyElement::Kind::Literal) {
        collect_vars(b.literal.atom, outside);
      } else if (b.aggregate.guard.is_variable()) {
        outside.insert(b.aggregate.guard.name);
      }
    }
    return outside;
  }

  void instantiate(const RawRule& r) {
    check_safety(r);
    std::vector<std::string> vars;
    for (const auto& v : global_vars(r)) vars.push_back(v);
    Subst s;
    enumerate(r, vars, 0, s);
  }

  void enumerate(const RawRule& r, const std::vector<std::string>& vars, std::size_t i, Subst& s) {
    if (i == vars.size()) {
      emit(r, s);
      return;
    }
    for (const auto& c : universe_list_) {
      s[vars[i]] = c;
      enumerate(r, vars, i + 1, s);
    }
    s.erase(vars[i]);
  }

  void emit(const RawRule& r, const Subst& s) {
    RawRule g;
    g.constraint = r.constraint;
    for (const auto& h : r.head) g.head.push_back(substitute(h, s));
    for (const auto& b : r.body) {
      if (b.kind == BodyElement::Kind::Literal) {
        Literal l{substitute(b.literal.atom, s), b.literal.positive};
        g.body.push_back(BodyElement::lit(std::move(l)));
      } else {
        g.body.push_back(BodyElement::agg(ground_aggregate(b.aggregate, s)));
      }
    }
    ground_rules_.push_back(std::move(g));
  }

  AggregateAtom ground_aggregate(const AggregateAtom& agg, const Subst& outer) {
    AggregateAtom out;
    out.comparator = agg.comparator;
    out.guard = substitute(agg.guard, outer);
    for (const auto& e : agg.elements) {
      std::set<std::string> local;
      for (const auto& t : e.terms)
        if (t.is_variable() && !outer.count(t.name)) local.insert(t.name);
      for (const auto& l : e.condition) {
        std::set<std::string> vs;
        collect_vars(l.atom, vs);
        for (const auto& v : vs)
          if (!outer.count(v)) local.insert(v);
      }
      std::vector<std::string> locals(local.begin(), local.end());
      Subst s = outer;
      enumerate_element(e, locals, 0, s, out.elements);
    }
    return out;
  }

  void enumerate_element(const AggregateElement& e, const std::vector<std::string>& vars,
                         std::size_t i, Subst& s, std::vector<AggregateElement>& out) {
    if (i == vars.size()) {
      AggregateElement g;
      for (const auto& t : e.terms) g.terms.push_back(substitute(t, s));
      for (const auto& l : e.condition) g.condition.push_back({substitute(l.atom, s), l.positive});
      out.push_back(std::move(g));
      return;
    }
    for (const auto& c : universe_list_) {
      s[vars[i]] = c;
      enumerate_element(e, vars, i + 1, s, out);
    }
    s.erase(vars[i]);
  }

  // Least fixpoint of "derivable ignoring negation and aggregates"; rules
  // and aggregate elements over underivable positive atoms are dropped.
  void prune_and_build() {
    std::set<std::string> possible;
    for (const auto& pf : p_.prob_facts) possible.insert(pf.atom.to_string());
    for (const auto& d : p_.decisions) possible.insert(d.to_string());
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& r : ground_rules_) {
        if (r.head.empty()) continue;
        bool body_possible = true;
        for (const auto& b : r.body) {
          if (b.kind == BodyElement::Kind::Literal && b.literal.positive &&
              !possible.count(b.literal.atom.to_string())) {
            body_possible = false;
            break;
          }
        }
        if (!body_possible) continue;
        for (const auto& h : r.head)
          if (possible.insert(h.to_string()).second) changed = true;
      }
    }

    auto intern = [&](const Atom& a) -> AtomId {
      std::string key = a.to_string();
      auto it = out_.atom_index.find(key);
      if (it != out_.atom_index.end()) return it->second;
      AtomId id = static_cast<AtomId>(out_.atoms.size());
      out_.atoms.push_back(a);
      out_.aux.push_back(aux_preds_.count(a.predicate) > 0);
      out_.atom_index.emplace(std::move(key), id);
      return id;
    };

    for (const auto& pf : p_.prob_facts) out_.prob_facts.emplace_back(intern(pf.atom), pf.prob);
    for (const auto& d : p_.decisions) out_.decisions.push_back(intern(d));

    for (const auto& r : ground_rules_) {
      GroundRule g;
      bool keep = true;
      for (const auto& b : r.body) {
        if (b.kind == BodyElement::Kind::Literal) {
          const auto& l = b.literal;
          bool poss = possible.count(l.atom.to_string()) > 0;
          if (l.positive && !poss) {
            keep = false;
            break;
          }
          if (!l.positive && !poss) continue;  // negation of underivable atom is true
          GroundBodyElement be;
          be.kind = GroundBodyElement::Kind::Literal;
          be.literal = {intern(l.atom), l.positive};
          g.body.push_back(std::move(be));
        } else {
          GroundBodyElement be;
          be.kind = GroundBodyElement::Kind::Aggregate;
          be.aggregate.comparator = b.aggregate.comparator;
          be.aggregate.guard = b.aggregate.guard.value;
          std::set<std::string> seen;
          for (const auto& e : b.aggregate.elements) {
            bool el_ok = true;
            GroundAggregate::Element ge;
            for (const auto& t : e.terms) ge.tuple += t.to_string() + ",";
            for (const auto& l : e.condition) {
              bool poss = possible.count(l.atom.to_string()) > 0;
              if (l.positive && !poss) {
                el_ok = false;
                break;
              }
              if (!l.positive && !poss) continue;
              ge.condition.push_back({intern(l.atom), l.positive});
            }
            if (!el_ok) continue;
            // Identical ground elements collapse.
            std::string key = ge.tuple + "|";
            for (const auto& c : ge.condition)
              key += std::to_string(c.atom) + (c.positive ? "+" : "-");
            if (seen.insert(key).second) be.aggregate.elements.push_back(std::move(ge));
          }
          g.body.push_back(std::move(be));
        }
      }
      if (!keep) continue;
      for (const auto& h : r.head) {
        std::string key = h.to_string();
        for (const auto& pf : p_.prob_facts)
          if (pf.atom.to_string() == key)
            throw ProgramError("probabilistic fact " + key +
                               " appears in a ground rule head (disjoint condition violated)");
        for (const auto& d : p_.decisions)
          if (d.to_string() == key)
            throw ProgramError("decision atom " + key +
                               " appears in a ground rule head (disjoint condition violated)");
        g.head.push_back(intern(h));
      }
      // Duplicate ground rules (from redundant substitutions) collapse.
      rules_dedup_.emplace_back(std::move(g));
    }
    dedup_rules();

    for (const auto& u : p_.utilities) {
      AtomId id = out_.find_atom(u.atom.to_string());
      if (id >= 0) out_.utilities.emplace_back(id, u.reward);
    }
  }

  void dedup_rules() {
    std::set<std::string> seen;
    for (auto& g : rules_dedup_) {
      std::string key;
      for (AtomId h : g.head) key += "h" + std::to_string(h);
      for (const auto& b : g.body) {
        if (b.kind == GroundBodyElement::Kind::Literal) {
          key += (b.literal.positive ? "+" : "-") + std::to_string(b.literal.atom);
        } else {
          key += "#" + std::to_string(static_cast<int>(b.aggregate.comparator)) +
                 std::to_string(b.aggregate.guard);
          for (const auto& e : b.aggregate.elements) {
            key += "[" + e.tuple;
            for (const auto& c : e.condition)
              key += (c.positive ? "+" : "-") + std::to_string(c.atom);
            key += "]";
          }
        }
      }
      if (seen.insert(key).second) out_.rules.push_back(std::move(g));
    }
  }

  const Program& p_;
  struct TermLess {
    bool operator()(const Term& a, const Term& b) const {
      if (a.kind != b.kind) return a.kind < b.kind;
      if (a.kind == Term::Kind::Integer) return a.value < b.value;
      return a.name < b.name;
    }
  };
  std::set<Term, TermLess> universe_;
  std::vector<Term> universe_list_;
  std::set<std::string> aux_preds_;
  std::vector<RawRule> raw_;
  std::vector<RawRule> ground_rules_;
  std::vector<GroundRule> rules_dedup_;
  GroundProgram out_;
};

}  // namespace

GroundProgram ground(const Program& p) { return Grounder(p).run(); }

}  // namespace dtpasp
