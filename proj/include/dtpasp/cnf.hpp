#pragma once

#include <cstdlib>
#include <string>
#include <vector>

#include "dtpasp/ast.hpp"

namespace dtpasp {

// DIMACS-style literal: var v (0-based) is +(v+1) positive, -(v+1) negated.
using Lit = int;
using Clause = std::vector<Lit>;

inline int lit_var(Lit l) { return std::abs(l) - 1; }
inline bool lit_sign(Lit l) { return l > 0; }

struct Cnf {
  int num_vars = 0;
  std::vector<Clause> clauses;
  std::vector<std::string> var_names;  // optional, sized num_vars when present

  bool contradiction = false;  // constant-false formula (empty clause seen)

  std::string var_name(int v) const {
    if (v < static_cast<int>(var_names.size()) && !var_names[v].empty()) return var_names[v];
    return "v" + std::to_string(v + 1);
  }
};

// Evaluates all clauses under a full assignment (bit v of `assignment`).
bool satisfies_cnf(const Cnf& cnf, std::uint64_t assignment);

std::string to_dimacs(const Cnf& cnf);
Cnf parse_dimacs(const std::string& text);

}  // namespace dtpasp
