#include "dtpasp/enum_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dtpasp {

double answer_set_reward(const Interpretation& a,
                         const std::vector<std::pair<AtomId, double>>& utilities) {
  double reward = 0.0;
  for (const auto& [atom, r] : utilities)
    if (a.test(atom)) reward += r;
  return reward;
}

std::optional<UtilityRange> world_reward_range(
    const GroundProgram& p_sigma_w, const std::vector<std::pair<AtomId, double>>& utilities,
    const SolveLimits& limits) {
  auto collection = answer_sets(p_sigma_w, limits);
  if (collection.sets.empty()) return std::nullopt;
  UtilityRange range{std::numeric_limits<double>::infinity(),
                     -std::numeric_limits<double>::infinity()};
  for (const auto& m : collection.sets) {
    double r = answer_set_reward(m, utilities);
    range.lower = std::min(range.lower, r);
    range.upper = std::max(range.upper, r);
  }
  return range;
}

std::vector<AtomId> strategy_atoms(const GroundProgram& p, StrategyMask sigma) {
  std::vector<AtomId> atoms;
  for (std::size_t i = 0; i < p.decisions.size(); ++i)
    if ((sigma >> i) & 1) atoms.push_back(p.decisions[i]);
  return atoms;
}

namespace {

StrategyOutcome evaluate_strategy(const GroundProgram& p, StrategyMask sigma,
                                  const EnumLimits& limits, const std::vector<World>& worlds,
                                  std::uint64_t* pair_counter) {
  StrategyOutcome out;
  auto sigma_facts = strategy_atoms(p, sigma);
  bool any_consistent = false;
  for (const auto& w : worlds) {
    if (pair_counter) ++*pair_counter;
    auto range = world_reward_range(world_program(p, w.mask, sigma_facts), p.utilities,
                                    limits.credal.solve);
    if (!range) {
      out.inconsistent_mass += w.prob;
      continue;
    }
    any_consistent = true;
    out.utility.lower += w.prob * range->lower;
    out.utility.upper += w.prob * range->upper;
  }
  if (!any_consistent) {
    out.all_worlds_inconsistent = true;
    out.utility = {0.0, 0.0};
  }
  return out;
}

}  // namespace

StrategyOutcome strategy_utility(const GroundProgram& p, StrategyMask sigma,
                                 const EnumLimits& limits) {
  return evaluate_strategy(p, sigma, limits, enumerate_worlds(p, limits.credal), nullptr);
}

UtilityReport solve(const GroundProgram& p, const EnumLimits& limits) {
  std::size_t d = p.decisions.size();
  if (d > limits.max_decisions)
    throw ResourceLimitError("program has " + std::to_string(d) + " decision atoms, cap is " +
                             std::to_string(limits.max_decisions));
  auto worlds = enumerate_worlds(p, limits.credal);

  UtilityReport report;
  for (StrategyMask sigma = 0; sigma < (StrategyMask{1} << d); ++sigma) {
    StrategyOutcome outcome =
        evaluate_strategy(p, sigma, limits, worlds, &report.evaluated_pairs);
    bool admissible = !outcome.all_worlds_inconsistent;
    if (admissible) {
      // Ties keep the smallest strategy bitmask (first encountered).
      if (!report.has_admissible_strategy || outcome.utility.lower > report.best_lower_value) {
        report.best_lower_value = outcome.utility.lower;
        report.best_lower_strategy = sigma;
      }
      if (!report.has_admissible_strategy || outcome.utility.upper > report.best_upper_value) {
        report.best_upper_value = outcome.utility.upper;
        report.best_upper_strategy = sigma;
      }
      report.has_admissible_strategy = true;
    }
    report.per_strategy.emplace(sigma, std::move(outcome));
  }
  return report;
}

UtilityReport solve(const Program& p, const EnumLimits& limits) {
  return solve(ground(p), limits);
}

double dtproblog_utility(const GroundProgram& p, StrategyMask sigma, const EnumLimits& limits) {
  auto sigma_facts = strategy_atoms(p, sigma);
  double utility = 0.0;
  for (const auto& w : enumerate_worlds(p, limits.credal)) {
    auto collection = answer_sets(world_program(p, w.mask, sigma_facts), limits.credal.solve);
    if (collection.sets.size() != 1)
      throw ProgramError("world " + std::to_string(w.mask) + " has " +
                         std::to_string(collection.sets.size()) +
                         " answer sets; the program is not DTProbLog-degenerate");
    utility += w.prob * answer_set_reward(collection.sets[0], p.utilities);
  }
  return utility;
}

}  // namespace dtpasp
