#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "dtpasp/credal.hpp"

namespace dtpasp {

using StrategyMask = std::uint64_t;  // bit i: decision atom i selected

struct UtilityRange {
  double lower = 0.0;
  double upper = 0.0;
};

struct StrategyOutcome {
  UtilityRange utility;
  double inconsistent_mass = 0.0;
  bool all_worlds_inconsistent = false;
};

struct UtilityReport {
  StrategyMask best_lower_strategy = 0;
  double best_lower_value = 0.0;
  StrategyMask best_upper_strategy = 0;
  double best_upper_value = 0.0;
  bool has_admissible_strategy = false;
  std::map<StrategyMask, StrategyOutcome> per_strategy;
  std::uint64_t evaluated_pairs = 0;  // (strategy, world) pairs examined
};

struct EnumLimits {
  std::size_t max_decisions = 26;
  CredalLimits credal;
};

// Sum of the rewards of the utility atoms true in a.
double answer_set_reward(const Interpretation& a,
                         const std::vector<std::pair<AtomId, double>>& utilities);

// Min/max answer-set reward of a fully instantiated (strategy + world)
// program; empty when the program has no answer set.
std::optional<UtilityRange> world_reward_range(const GroundProgram& p_sigma_w,
                                               const std::vector<std::pair<AtomId, double>>& utilities,
                                               const SolveLimits& limits = {});

// Expected lower/upper utility of one strategy; inconsistent worlds are
// skipped and their mass reported.
StrategyOutcome strategy_utility(const GroundProgram& p, StrategyMask sigma,
                                 const EnumLimits& limits = {});

// Exhaustive baseline: evaluates every (strategy, world) pair.
UtilityReport solve(const GroundProgram& p, const EnumLimits& limits = {});
UtilityReport solve(const Program& p, const EnumLimits& limits = {});

// DTProbLog-degenerate scalar utility; errors unless every world of
// p under sigma has exactly one answer set.
double dtproblog_utility(const GroundProgram& p, StrategyMask sigma, const EnumLimits& limits = {});

std::vector<AtomId> strategy_atoms(const GroundProgram& p, StrategyMask sigma);

}  // namespace dtpasp
