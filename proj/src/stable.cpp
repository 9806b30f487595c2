#include "dtpasp/stable.hpp"

#include <algorithm>
#include <set>

namespace dtpasp {
namespace {

enum class Tri { False, True, Unknown };

Tri lit_value(const std::vector<signed char>& assign, const GroundLiteral& l) {
  signed char v = assign[l.atom];
  if (v < 0) return Tri::Unknown;
  bool truth = (v == 1) == l.positive;
  return truth ? Tri::True : Tri::False;
}

Tri aggregate_value(const std::vector<signed char>& assign, const GroundAggregate& agg) {
  // Count distinct tuples with a definitely-true condition; if any
  // condition is still open the aggregate is unknown unless the verdict
  // cannot change anymore.
  std::set<std::string> definite, open;
  for (const auto& e : agg.elements) {
    bool any_false = false, any_unknown = false;
    for (const auto& c : e.condition) {
      Tri v = lit_value(assign, c);
      if (v == Tri::False) {
        any_false = true;
        break;
      }
      if (v == Tri::Unknown) any_unknown = true;
    }
    if (any_false) continue;
    if (any_unknown)
      open.insert(e.tuple);
    else
      definite.insert(e.tuple);
  }
  for (const auto& t : definite) open.erase(t);
  auto lo = static_cast<std::int64_t>(definite.size());
  auto hi = static_cast<std::int64_t>(definite.size() + open.size());
  bool lo_sat = compare(lo, agg.comparator, agg.guard);
  if (lo == hi) return lo_sat ? Tri::True : Tri::False;
  // Monotone comparators let us decide early in some cases.
  bool hi_sat = compare(hi, agg.comparator, agg.guard);
  switch (agg.comparator) {
    case Comparator::Ge:
    case Comparator::Gt:
      if (lo_sat) return Tri::True;
      if (!hi_sat) return Tri::False;
      break;
    case Comparator::Le:
    case Comparator::Lt:
      if (!lo_sat) return Tri::False;
      if (hi_sat) return Tri::True;
      break;
    default: break;
  }
  return Tri::Unknown;
}

Tri body_value(const std::vector<signed char>& assign, const GroundRule& r) {
  bool unknown = false;
  for (const auto& b : r.body) {
    Tri v = b.kind == GroundBodyElement::Kind::Literal ? lit_value(assign, b.literal)
                                                       : aggregate_value(assign, b.aggregate);
    if (v == Tri::False) return Tri::False;
    if (v == Tri::Unknown) unknown = true;
  }
  return unknown ? Tri::Unknown : Tri::True;
}

std::vector<signed char> to_assignment(const Interpretation& i) {
  std::vector<signed char> assign(i.size());
  for (std::size_t a = 0; a < i.size(); ++a) assign[a] = i.test(a) ? 1 : 0;
  return assign;
}

class Search {
 public:
  Search(const GroundProgram& p, const SolveLimits& limits) : p_(p) {
    assign_.assign(p.atom_count(), -1);
    std::vector<bool> branchable(p.atom_count(), false);
    for (const auto& r : p_.rules)
      for (AtomId h : r.head) branchable[h] = true;
    for (std::size_t a = 0; a < p.atom_count(); ++a) {
      if (branchable[a])
        branch_.push_back(static_cast<AtomId>(a));
      else
        assign_[a] = 0;  // underivable atoms are false in every stable model
    }
    if (branch_.size() > limits.max_branch_atoms)
      throw ResourceLimitError("answer-set search over " + std::to_string(branch_.size()) +
                               " atoms exceeds the cap of " +
                               std::to_string(limits.max_branch_atoms));
  }

  AnswerSetCollection run() {
    dfs(0);
    std::sort(found_.sets.begin(), found_.sets.end());
    found_.sets.erase(std::unique(found_.sets.begin(), found_.sets.end()), found_.sets.end());
    return std::move(found_);
  }

 private:
  // Returns false on conflict. Assigns forced atoms (single viable head of
  // a rule with a true body).
  bool propagate() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& r : p_.rules) {
        if (body_value(assign_, r) != Tri::True) continue;
        AtomId undecided = -1;
        int undecided_count = 0;
        bool satisfied = false;
        for (AtomId h : r.head) {
          if (assign_[h] == 1) {
            satisfied = true;
            break;
          }
          if (assign_[h] < 0) {
            undecided = h;
            ++undecided_count;
          }
        }
        if (satisfied) continue;
        if (undecided_count == 0) return false;
        if (undecided_count == 1) {
          assign_[undecided] = 1;
          changed = true;
        }
      }
    }
    return true;
  }

  void dfs(std::size_t depth) {
    std::vector<signed char> saved = assign_;
    if (!propagate()) {
      assign_ = saved;
      return;
    }
    while (depth < branch_.size() && assign_[branch_[depth]] >= 0) ++depth;
    if (depth == branch_.size()) {
      emit();
      assign_ = saved;
      return;
    }
    AtomId a = branch_[depth];
    std::vector<signed char> at_node = assign_;
    assign_[a] = 0;
    dfs(depth + 1);
    assign_ = at_node;
    assign_[a] = 1;
    dfs(depth + 1);
    assign_ = saved;
  }

  void emit() {
    Interpretation i(p_.atom_count());
    for (std::size_t a = 0; a < p_.atom_count(); ++a)
      if (assign_[a] == 1) i.set(a);
    if (check_stable(p_, i)) found_.sets.push_back(std::move(i));
  }

  const GroundProgram& p_;
  std::vector<signed char> assign_;
  std::vector<AtomId> branch_;
  AnswerSetCollection found_;
};

}  // namespace

bool satisfies(const Interpretation& i, const GroundRule& r) {
  auto assign = to_assignment(i);
  if (body_value(assign, r) != Tri::True) return true;
  for (AtomId h : r.head)
    if (i.test(h)) return true;
  return false;
}

bool is_model(const GroundProgram& p, const Interpretation& i) {
  auto assign = to_assignment(i);
  for (const auto& r : p.rules) {
    if (body_value(assign, r) != Tri::True) continue;
    bool sat = false;
    for (AtomId h : r.head)
      if (i.test(h)) {
        sat = true;
        break;
      }
    if (!sat) return false;
  }
  return true;
}

GroundProgram reduct(const GroundProgram& p, const Interpretation& i) {
  GroundProgram out = p;
  out.rules.clear();
  auto assign = to_assignment(i);
  for (const auto& r : p.rules)
    if (body_value(assign, r) == Tri::True) out.rules.push_back(r);
  return out;
}

namespace {

// Atoms whose truth is forced in every model of the reduct: closure of
// single-head rules whose positive body is already forced and whose
// negative part is true in i (subsets of i cannot re-enable a negation).
// Aggregates are non-monotone, so rules with aggregates do not propagate.
Bitset forced_atoms(const GroundProgram& red, const Interpretation& i) {
  Bitset forced(i.size());
  bool changed = true;
  auto assign_i = to_assignment(i);
  while (changed) {
    changed = false;
    for (const auto& r : red.rules) {
      if (r.head.size() != 1 || r.has_aggregate()) continue;
      bool ok = true;
      for (const auto& b : r.body) {
        const auto& l = b.literal;
        if (l.positive) {
          if (!forced.test(l.atom)) {
            ok = false;
            break;
          }
        } else if (i.test(l.atom)) {
          ok = false;
          break;
        }
      }
      if (ok && !forced.test(r.head[0])) {
        forced.set(r.head[0]);
        changed = true;
      }
    }
  }
  return forced;
}

bool subset_models(const GroundProgram& red, const Interpretation& i, const Bitset& forced,
                   const std::vector<AtomId>& free, std::size_t idx, Interpretation& j) {
  if (idx == free.size()) {
    if (j == i) return false;  // only proper subsets count
    return is_model(red, j);
  }
  AtomId a = free[idx];
  if (subset_models(red, i, forced, free, idx + 1, j)) return true;
  j.set(a);
  bool r = subset_models(red, i, forced, free, idx + 1, j);
  j.set(a, false);
  return r;
}

}  // namespace

bool check_stable(const GroundProgram& p, const Interpretation& i) {
  if (!is_model(p, i)) return false;
  GroundProgram red = reduct(p, i);
  Bitset forced = forced_atoms(red, i);
  if (!forced.is_subset_of(i)) return false;  // forced atom outside i: not even a model
  std::vector<AtomId> free;
  for (std::size_t a = 0; a < i.size(); ++a)
    if (i.test(a) && !forced.test(a)) free.push_back(static_cast<AtomId>(a));
  Interpretation j = forced;
  return !subset_models(red, i, forced, free, 0, j);
}

AnswerSetCollection answer_sets(const GroundProgram& p, const SolveLimits& limits) {
  return Search(p, limits).run();
}

std::vector<Interpretation> project(const AnswerSetCollection& c, const Bitset& atoms) {
  std::vector<Interpretation> out;
  out.reserve(c.sets.size());
  for (const auto& s : c.sets) out.push_back(s & atoms);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace dtpasp
