#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "dtpasp/cnf.hpp"
#include "dtpasp/ground.hpp"

namespace dtpasp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Inner tier: minmax-plus semiring over reward pairs.

struct InnerValue {
  double min_acc = 0.0;
  double max_acc = 0.0;
  bool operator==(const InnerValue&) const = default;
};

inline InnerValue inner_zero() { return {kInf, -kInf}; }
inline InnerValue inner_one() { return {0.0, 0.0}; }
inline InnerValue inner_plus(InnerValue a, InnerValue b) {
  return {a.min_acc < b.min_acc ? a.min_acc : b.min_acc,
          a.max_acc > b.max_acc ? a.max_acc : b.max_acc};
}
inline InnerValue inner_times(InnerValue a, InnerValue b) {
  return {a.min_acc + b.min_acc, a.max_acc + b.max_acc};
}

// ---------------------------------------------------------------------------
// Middle tier: two-gradient semiring (probability, lower, upper).

struct MiddleValue {
  double prob = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  bool operator==(const MiddleValue&) const = default;
};

inline MiddleValue middle_zero() { return {0.0, 0.0, 0.0}; }
inline MiddleValue middle_one() { return {1.0, 0.0, 0.0}; }
inline MiddleValue middle_plus(MiddleValue a, MiddleValue b) {
  return {a.prob + b.prob, a.lo + b.lo, a.hi + b.hi};
}
inline MiddleValue middle_times(MiddleValue a, MiddleValue b) {
  return {a.prob * b.prob, a.prob * b.lo + b.prob * a.lo, a.prob * b.hi + b.prob * a.hi};
}

// ---------------------------------------------------------------------------
// Outer tier: componentwise max of (lower, upper) values carrying the
// strategy sets (decision-atom bitmasks) attaining them.

using DecisionSet = std::uint64_t;

struct OuterValue {
  double lo_val = 0.0;
  double hi_val = 0.0;
  DecisionSet lo_set = 0;
  DecisionSet hi_set = 0;
  bool operator==(const OuterValue&) const = default;
};

// The additive neutral uses -inf in both slots so max keeps the operand;
// sets carry the full decision set D.
inline OuterValue outer_zero(DecisionSet all_decisions) {
  return {-kInf, -kInf, all_decisions, all_decisions};
}
inline OuterValue outer_one() { return {0.0, 0.0, 0, 0}; }
inline OuterValue outer_plus(const OuterValue& a, const OuterValue& b) {
  OuterValue out;
  // Ties keep the left operand's set.
  if (a.lo_val >= b.lo_val) {
    out.lo_val = a.lo_val;
    out.lo_set = a.lo_set;
  } else {
    out.lo_val = b.lo_val;
    out.lo_set = b.lo_set;
  }
  if (a.hi_val >= b.hi_val) {
    out.hi_val = a.hi_val;
    out.hi_set = a.hi_set;
  } else {
    out.hi_val = b.hi_val;
    out.hi_set = b.hi_set;
  }
  return out;
}
inline OuterValue outer_times(const OuterValue& a, const OuterValue& b) {
  return {a.lo_val + b.lo_val, a.hi_val + b.hi_val, a.lo_set | b.lo_set, a.hi_set | b.hi_set};
}

// ---------------------------------------------------------------------------
// Transformations between tiers.

// Inner zero (no answer set for this strategy+world) maps to the middle
// zero so inconsistent worlds contribute nothing.
inline MiddleValue transform_im(InnerValue v) {
  if (v == inner_zero()) return middle_zero();
  return {1.0, v.min_acc, v.max_acc};
}

inline OuterValue transform_mo(MiddleValue v) { return {v.lo, v.hi, 0, 0}; }

// ---------------------------------------------------------------------------
// Variable tiers and literal weights.

enum class VarTier { Inner, Middle, Outer };

struct TierWeights {
  // Indexed by [variable][polarity], polarity 1 = positive literal.
  std::vector<std::array<InnerValue, 2>> inner;
  std::vector<std::array<MiddleValue, 2>> middle;
  std::vector<std::array<OuterValue, 2>> outer;
};

// Weight functions w0/w1/w2 for a ground program whose CNF variables 0..n-1
// coincide with its atom ids (extra variables beyond the atom count get
// neutral inner weights). Rejects utilities on decision atoms and on
// probabilistic facts: neither tier's weight has a slot for the reward, so
// it would be silently dropped; use the rda-rule idiom instead.
TierWeights tier_weights(const GroundProgram& p, std::size_t num_vars);

std::vector<VarTier> tier_partition(const GroundProgram& p, std::size_t num_vars);

// A 3AMC instance over a CNF theory.
struct Amc3Instance {
  Cnf cnf;
  std::vector<VarTier> tiers;
  TierWeights weights;
  DecisionSet all_decisions = 0;  // mask over decision indices, for the outer zero
};

// Literal nested-loop implementation of the 3AMC sum; inner assignments
// are restricted to those consistent with the middle and outer ones. An
// outer assignment with no satisfying extension at all contributes the
// outer zero (the strategy is inadmissible), not f_mo(middle zero).
OuterValue eval_3amc_by_definition(const Amc3Instance& inst, std::size_t max_vars = 24);

// ---------------------------------------------------------------------------
// Generic 2AMC evaluation (used for the DTProbLog reduction).

template <typename RO>
struct Amc2Result {
  RO value;
};

// is_outer[v] selects the outer tier; wi/wo map (var, positive) to weights;
// f maps the completed inner value to the outer carrier; unsat_value is
// used for outer assignments with no satisfying extension.
template <typename RI, typename RO, typename WI, typename WO, typename F,
          typename PlusI, typename TimesI, typename PlusO, typename TimesO>
RO eval_2amc_by_definition(const Cnf& cnf, const std::vector<bool>& is_outer, WI wi, WO wo, F f,
                           RI inner_zero_v, RI inner_one_v, RO outer_zero_v, RO outer_one_v,
                           PlusI plus_i, TimesI times_i, PlusO plus_o, TimesO times_o,
                           RO unsat_value) {
  std::vector<int> outer_vars, inner_vars;
  for (int v = 0; v < cnf.num_vars; ++v) (is_outer[v] ? outer_vars : inner_vars).push_back(v);
  RO total = outer_zero_v;
  for (std::uint64_t om = 0; om < (std::uint64_t{1} << outer_vars.size()); ++om) {
    std::uint64_t outer_bits = 0;
    for (std::size_t i = 0; i < outer_vars.size(); ++i)
      if ((om >> i) & 1) outer_bits |= std::uint64_t{1} << outer_vars[i];
    RI inner_sum = inner_zero_v;
    bool any = false;
    for (std::uint64_t im = 0; im < (std::uint64_t{1} << inner_vars.size()); ++im) {
      std::uint64_t bits = outer_bits;
      for (std::size_t i = 0; i < inner_vars.size(); ++i)
        if ((im >> i) & 1) bits |= std::uint64_t{1} << inner_vars[i];
      if (!satisfies_cnf(cnf, bits)) continue;
      any = true;
      RI prod = inner_one_v;
      for (int v : inner_vars) prod = times_i(prod, wi(v, (bits >> v) & 1));
      inner_sum = plus_i(inner_sum, prod);
    }
    RO term = any ? f(inner_sum) : unsat_value;
    for (std::size_t i = 0; i < outer_vars.size(); ++i)
      term = times_o(term, wo(outer_vars[i], (om >> i) & 1));
    total = plus_o(total, term);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Semiring law harness: randomized associativity/commutativity/neutrality/
// annihilation checks used by the test suite.

template <typename T>
struct SemiringSpec {
  std::function<T(const T&, const T&)> plus;
  std::function<T(const T&, const T&)> times;
  T zero;
  T one;
  std::function<bool(const T&, const T&)> approx_eq;
};

template <typename T, typename Gen>
bool check_semiring_laws(const SemiringSpec<T>& s, Gen&& sample, int iterations,
                         std::string* failure = nullptr) {
  auto fail = [&](const char* law) {
    if (failure) *failure = law;
    return false;
  };
  for (int i = 0; i < iterations; ++i) {
    T a = sample(), b = sample(), c = sample();
    if (!s.approx_eq(s.plus(a, b), s.plus(b, a))) return fail("plus commutativity");
    if (!s.approx_eq(s.times(a, b), s.times(b, a))) return fail("times commutativity");
    if (!s.approx_eq(s.plus(s.plus(a, b), c), s.plus(a, s.plus(b, c))))
      return fail("plus associativity");
    if (!s.approx_eq(s.times(s.times(a, b), c), s.times(a, s.times(b, c))))
      return fail("times associativity");
    if (!s.approx_eq(s.plus(a, s.zero), a)) return fail("zero neutral for plus");
    if (!s.approx_eq(s.times(a, s.one), a)) return fail("one neutral for times");
    if (!s.approx_eq(s.times(a, s.zero), s.zero)) return fail("zero annihilates times");
  }
  return true;
}

}  // namespace dtpasp
