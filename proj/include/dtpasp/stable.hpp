#pragma once

#include <vector>

#include "dtpasp/bitset.hpp"
#include "dtpasp/ground.hpp"

namespace dtpasp {

class ResourceLimitError : public ProgramError {
 public:
  explicit ResourceLimitError(const std::string& msg) : ProgramError(msg) {}
};

using Interpretation = Bitset;

struct AnswerSetCollection {
  std::vector<Interpretation> sets;  // lexicographically ordered, distinct
};

struct SolveLimits {
  // Atoms that can be branched on during answer-set search.
  std::size_t max_branch_atoms = 26;
};

// Rule satisfaction: body true implies some head atom true. Aggregates
// count distinct term tuples whose condition holds.
bool satisfies(const Interpretation& i, const GroundRule& r);

bool is_model(const GroundProgram& p, const Interpretation& i);

// Faber-style reduct: keeps exactly the rules whose entire body is true
// in i (uniform for negation and aggregates).
GroundProgram reduct(const GroundProgram& p, const Interpretation& i);

// i is stable iff it models the reduct and no proper subset does.
bool check_stable(const GroundProgram& p, const Interpretation& i);

AnswerSetCollection answer_sets(const GroundProgram& p, const SolveLimits& limits = {});

std::vector<Interpretation> project(const AnswerSetCollection& c, const Bitset& atoms);

}  // namespace dtpasp
