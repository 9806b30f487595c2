#pragma once

#include <cstdint>
#include <vector>

#include "dtpasp/stable.hpp"

namespace dtpasp {

struct World {
  std::uint64_t mask = 0;  // bit i: probabilistic fact i selected
  double prob = 0.0;
};

struct CredalResult {
  double lower = 0.0;
  double upper = 0.0;
  double inconsistent_mass = 0.0;
};

struct CredalLimits {
  std::size_t max_prob_facts = 30;
  SolveLimits solve;
};

// All 2^n worlds in integer mask order, probabilities as the product of
// selected-fact probabilities and complements.
std::vector<World> enumerate_worlds(const GroundProgram& p, const CredalLimits& limits = {});

// Copy of p with the atoms selected by `mask` (over p.prob_facts) added
// as facts; `extra_facts` are appended unconditionally.
GroundProgram world_program(const GroundProgram& p, std::uint64_t mask,
                            const std::vector<AtomId>& extra_facts = {});

// Lower/upper probability of a conjunction of ground literals plus the
// inconsistency mass.
CredalResult query_probability(const GroundProgram& p, const std::vector<GroundLiteral>& query,
                               const CredalLimits& limits = {});

}  // namespace dtpasp
