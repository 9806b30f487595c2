#include "dtpasp/credal.hpp"

namespace dtpasp {

std::vector<World> enumerate_worlds(const GroundProgram& p, const CredalLimits& limits) {
  std::size_t n = p.prob_facts.size();
  if (n > limits.max_prob_facts)
    throw ResourceLimitError("program has " + std::to_string(n) +
                             " probabilistic facts, cap is " +
                             std::to_string(limits.max_prob_facts));
  std::vector<World> worlds;
  worlds.reserve(std::size_t{1} << n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    double prob = 1.0;
    for (std::size_t i = 0; i < n; ++i)
      prob *= (mask >> i) & 1 ? p.prob_facts[i].second : 1.0 - p.prob_facts[i].second;
    worlds.push_back({mask, prob});
  }
  return worlds;
}

GroundProgram world_program(const GroundProgram& p, std::uint64_t mask,
                            const std::vector<AtomId>& extra_facts) {
  GroundProgram out = p;
  for (std::size_t i = 0; i < p.prob_facts.size(); ++i)
    if ((mask >> i) & 1) out.rules.push_back({{p.prob_facts[i].first}, {}});
  for (AtomId a : extra_facts) out.rules.push_back({{a}, {}});
  return out;
}

CredalResult query_probability(const GroundProgram& p, const std::vector<GroundLiteral>& query,
                               const CredalLimits& limits) {
  CredalResult out;
  for (const auto& w : enumerate_worlds(p, limits)) {
    auto collection = answer_sets(world_program(p, w.mask), limits.solve);
    if (collection.sets.empty()) {
      out.inconsistent_mass += w.prob;
      continue;
    }
    bool in_all = true, in_some = false;
    for (const auto& m : collection.sets) {
      bool holds = true;
      for (const auto& l : query)
        if (m.test(l.atom) != l.positive) {
          holds = false;
          break;
        }
      in_all = in_all && holds;
      in_some = in_some || holds;
    }
    if (in_all) out.lower += w.prob;
    if (in_some) out.upper += w.prob;
  }
  return out;
}

}  // namespace dtpasp
