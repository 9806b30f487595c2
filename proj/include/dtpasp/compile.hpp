#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dtpasp/algebra.hpp"
#include "dtpasp/cnf.hpp"
#include "dtpasp/enum_solver.hpp"

namespace dtpasp {

// Decision-DNNF. Decision nodes encode (v and hi) or (not v and lo);
// and-nodes have variable-disjoint children.
struct CircuitNode {
  enum class Kind { False, True, Literal, And, Decision };
  Kind kind = Kind::True;
  Lit lit = 0;                 // Literal nodes
  int var = -1;                // Decision nodes
  std::vector<int> children;   // And: any arity; Decision: {hi, lo}
  std::uint64_t vars = 0;      // variables mentioned at or below this node
};

struct Circuit {
  std::vector<CircuitNode> nodes;  // node 0 is False, node 1 is True
  int root = 1;
  int num_vars = 0;

  const CircuitNode& at(int id) const { return nodes[id]; }
};

struct CompileOptions {
  std::vector<int> order;               // global branching order over variables
  std::uint64_t outer_set = 0;          // decisions plus their definable closure
  std::uint64_t outer_middle_set = 0;   // adds facts and their closure
  std::size_t max_nodes = 4'000'000;
};

// Top-down Shannon expansion with unit propagation, formula caching and
// component splitting. While variables of `outer_set` remain in a residual,
// only components fully inside `outer_set` are split off (and analogously
// for `outer_middle_set` afterwards), so and-nodes never mix the phases.
Circuit compile_cnf(const Cnf& cnf, const CompileOptions& opt);

// Number of satisfying assignments over all `num_vars` variables.
unsigned long long count_models(const Circuit& c);

// Structural check that and/decision nodes keep at most one child mixing a
// phase set with later variables, with all siblings inside the set.
bool audit_phase_purity(const Circuit& c, std::uint64_t outer_set,
                        std::uint64_t outer_middle_set, std::string* why = nullptr);

// c2d-style listing: "nnf <nodes> <edges> <vars>" then one node per line
// ("L <lit>", "A <k> <ids...>", "O <var> 2 <hi> <lo>"); decision branches
// are emitted as binary and-nodes under an or-node.
std::string to_nnf_format(const Circuit& c);

// Bottom-up 3AMC evaluation; missing variables are folded in where branch
// variable sets differ and at the root.
OuterValue eval_circuit_3amc(const Circuit& c, const Amc3Instance& inst);

// End-to-end pipeline: completion, definability, split decomposition,
// constrained compilation, circuit evaluation. Throws CompileUnsupported
// for programs outside the tight aggregate-free fragment.
struct Amc3Solution {
  UtilityReport report;
  int circuit_nodes = 0;
  int decomposition_width = 0;
};

Amc3Solution solve_amc3(const GroundProgram& p);
Amc3Solution solve_amc3(const Program& p);

}  // namespace dtpasp
