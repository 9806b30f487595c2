#include "dtpasp/sat.hpp"

#include <algorithm>
#include <optional>

namespace dtpasp {

namespace {

enum class Val : std::int8_t { Free, True, False };

bool assign(std::vector<Val>& model, Lit l) {
  Val want = lit_sign(l) ? Val::True : Val::False;
  Val& slot = model[lit_var(l)];
  if (slot == Val::Free) {
    slot = want;
    return true;
  }
  return slot == want;
}

// Returns false on conflict; otherwise simplifies `clauses` in place under
// the current model (satisfied clauses removed, false literals dropped) and
// propagates units to fixpoint.
bool propagate(std::vector<Clause>& clauses, std::vector<Val>& model) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Clause> next;
    next.reserve(clauses.size());
    for (const auto& clause : clauses) {
      Clause reduced;
      bool sat = false;
      for (Lit l : clause) {
        Val v = model[lit_var(l)];
        if (v == Val::Free) {
          reduced.push_back(l);
        } else if ((v == Val::True) == lit_sign(l)) {
          sat = true;
          break;
        }
      }
      if (sat) continue;
      if (reduced.empty()) return false;
      if (reduced.size() == 1) {
        if (!assign(model, reduced[0])) return false;
        changed = true;
        continue;
      }
      next.push_back(std::move(reduced));
    }
    clauses = std::move(next);
  }
  return true;
}

bool solve(std::vector<Clause> clauses, std::vector<Val> model) {
  if (!propagate(clauses, model)) return false;
  if (clauses.empty()) return true;
  Lit branch = clauses[0][0];
  {
    std::vector<Val> m = model;
    if (assign(m, branch) && solve(clauses, std::move(m))) return true;
  }
  std::vector<Val> m = std::move(model);
  if (!assign(m, -branch)) return false;
  return solve(std::move(clauses), std::move(m));
}

}  // namespace

bool satisfiable(const Cnf& cnf, const std::vector<Lit>& assumptions) {
  if (cnf.contradiction) return false;
  std::vector<Val> model(cnf.num_vars, Val::Free);
  for (Lit l : assumptions)
    if (!assign(model, l)) return false;
  return solve(cnf.clauses, std::move(model));
}

}  // namespace dtpasp
