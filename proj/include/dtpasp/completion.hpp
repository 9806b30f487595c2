#pragma once

#include <vector>

#include "dtpasp/cnf.hpp"
#include "dtpasp/ground.hpp"

namespace dtpasp {

// Raised when a program falls outside the fragment the circuit pipeline
// handles (aggregates, head cycles, positive recursion); callers are
// expected to fall back to enumeration.
class CompileUnsupported : public ProgramError {
 public:
  explicit CompileUnsupported(const std::string& msg) : ProgramError(msg) {}
};

// Per variable: alternative definitions, each a list of variables whose
// values determine it. An empty list means the variable is fixed outright.
using Definitions = std::vector<std::vector<std::vector<int>>>;

struct CompletionResult {
  Cnf cnf;  // vars 0..atom_count-1 are the atoms, then body auxiliaries
  Definitions defs;
  int num_atoms = 0;
};

// Translates a variable-free program into clauses whose models are exactly
// its answer sets extended with the body auxiliaries. Disjunctive heads are
// shifted first (requires head-cycle freedom); the program must be tight
// and aggregate-free. Probabilistic-fact and decision atoms stay
// unconstrained except where clauses mention them.
CompletionResult to_cnf(const GroundProgram& p);

enum class DefinabilityMode { Syntactic, Semantic };

// Which variables have their value fixed by any assignment of the `base`
// variables together with the theory. Base variables themselves are
// reported as defined. Syntactic mode takes the closure of the supplied
// definition hints plus unit clauses and two-clause equivalences; semantic
// mode decides the condition exactly with SAT calls and is capped at
// `semantic_cap` base variables.
std::vector<bool> definable_from(const Cnf& cnf, const std::vector<bool>& base,
                                 DefinabilityMode mode, const Definitions& hints = {},
                                 std::size_t semantic_cap = 20);

}  // namespace dtpasp
