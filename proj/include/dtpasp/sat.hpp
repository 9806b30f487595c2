#pragma once

#include <vector>

#include "dtpasp/cnf.hpp"

namespace dtpasp {

// DPLL satisfiability with unit propagation; `assumptions` are literals
// forced before search. Intended for the desk-scale formulas of the
// definability and audit paths, not competitive solving.
bool satisfiable(const Cnf& cnf, const std::vector<Lit>& assumptions = {});

}  // namespace dtpasp
