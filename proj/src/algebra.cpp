#include "dtpasp/algebra.hpp"

#include <map>

namespace dtpasp {

std::vector<VarTier> tier_partition(const GroundProgram& p, std::size_t num_vars) {
  std::vector<VarTier> tiers(num_vars, VarTier::Inner);
  for (const auto& [atom, prob] : p.prob_facts) tiers[atom] = VarTier::Middle;
  for (AtomId d : p.decisions) tiers[d] = VarTier::Outer;
  return tiers;
}

TierWeights tier_weights(const GroundProgram& p, std::size_t num_vars) {
  std::map<AtomId, double> utility;
  for (const auto& [atom, r] : p.utilities) utility[atom] = r;
  for (const auto& [atom, prob] : p.prob_facts)
    if (utility.count(atom))
      throw ProgramError("utility on probabilistic fact " + p.atoms[atom].to_string() +
                         "; attach it to a derived atom via a rule instead");
  for (AtomId d : p.decisions)
    if (utility.count(d))
      throw ProgramError("utility on decision atom " + p.atoms[d].to_string() +
                         "; attach it to a derived atom via a rule instead");

  TierWeights w;
  w.inner.assign(num_vars, {inner_one(), inner_one()});
  w.middle.assign(num_vars, {middle_one(), middle_one()});
  w.outer.assign(num_vars, {outer_one(), outer_one()});
  for (const auto& [atom, r] : p.utilities) w.inner[atom][1] = {r, r};
  for (const auto& [atom, prob] : p.prob_facts) {
    w.middle[atom][1] = {prob, 0.0, 0.0};
    w.middle[atom][0] = {1.0 - prob, 0.0, 0.0};
  }
  for (std::size_t i = 0; i < p.decisions.size(); ++i) {
    DecisionSet s = DecisionSet{1} << i;
    w.outer[p.decisions[i]][1] = {0.0, 0.0, s, s};
  }
  return w;
}

OuterValue eval_3amc_by_definition(const Amc3Instance& inst, std::size_t max_vars) {
  const auto& cnf = inst.cnf;
  if (static_cast<std::size_t>(cnf.num_vars) > max_vars)
    throw ProgramError("3AMC by definition over " + std::to_string(cnf.num_vars) +
                       " variables exceeds the cap of " + std::to_string(max_vars));
  std::vector<int> outer_vars, middle_vars, inner_vars;
  for (int v = 0; v < cnf.num_vars; ++v) {
    switch (inst.tiers[v]) {
      case VarTier::Outer: outer_vars.push_back(v); break;
      case VarTier::Middle: middle_vars.push_back(v); break;
      case VarTier::Inner: inner_vars.push_back(v); break;
    }
  }
  auto spread = [](std::uint64_t compact, const std::vector<int>& vars) {
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < vars.size(); ++i)
      if ((compact >> i) & 1) bits |= std::uint64_t{1} << vars[i];
    return bits;
  };

  OuterValue total = outer_zero(inst.all_decisions);
  for (std::uint64_t om = 0; om < (std::uint64_t{1} << outer_vars.size()); ++om) {
    std::uint64_t outer_bits = spread(om, outer_vars);
    MiddleValue middle_sum = middle_zero();
    bool outer_satisfiable = false;
    for (std::uint64_t mm = 0; mm < (std::uint64_t{1} << middle_vars.size()); ++mm) {
      std::uint64_t mid_bits = outer_bits | spread(mm, middle_vars);
      InnerValue inner_sum = inner_zero();
      bool any_model = false;
      for (std::uint64_t im = 0; im < (std::uint64_t{1} << inner_vars.size()); ++im) {
        std::uint64_t bits = mid_bits | spread(im, inner_vars);
        if (!satisfies_cnf(cnf, bits)) continue;
        any_model = true;
        InnerValue prod = inner_one();
        for (int v : inner_vars) prod = inner_times(prod, inst.weights.inner[v][(bits >> v) & 1]);
        inner_sum = inner_plus(inner_sum, prod);
      }
      if (!any_model) continue;  // inconsistent world: f_im(inner zero) = middle zero
      outer_satisfiable = true;
      MiddleValue term = transform_im(inner_sum);
      for (int v : middle_vars)
        term = middle_times(term, inst.weights.middle[v][(mid_bits >> v) & 1]);
      middle_sum = middle_plus(middle_sum, term);
    }
    // A strategy with no satisfying extension at all is inadmissible.
    OuterValue term =
        outer_satisfiable ? transform_mo(middle_sum) : outer_zero(inst.all_decisions);
    for (std::size_t i = 0; i < outer_vars.size(); ++i)
      term = outer_times(term, inst.weights.outer[outer_vars[i]][(om >> i) & 1]);
    total = outer_plus(total, term);
  }
  return total;
}

}  // namespace dtpasp
