#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "dtpasp/enum_solver.hpp"
#include "dtpasp/parser.hpp"

using namespace dtpasp;

namespace {

constexpr double kTol = 1e-9;

// Two probabilistic facts, two decisions, rewards on qr/nqr.
const char* kRunning =
    "0.3::a. 0.4::b.\n"
    "decision da. decision db.\n"
    "utility(qr,2). utility(nqr,-12).\n"
    "qr :- da, a.\n"
    "qr ; nqr :- db, b.\n";

// Shop scenario: two decisions, disjunctive purchases, a crowding
// constraint, and per-person target costs routed through derived atoms.
const char* kShops =
    "0.8::shops(anna). 0.5::shops(bob).\n"
    "decision target(anna). decision target(bob).\n"
    "buy(spaghetti,anna) ; buy(steak,anna) :- shops(anna), target(anna).\n"
    "buy(spaghetti,bob) ; buy(beans,bob) :- shops(bob), target(bob).\n"
    "rt(anna) :- target(anna).\n"
    "rt(bob) :- target(bob).\n"
    "utility(rt(anna),-2). utility(rt(bob),-2).\n"
    "utility(buy(spaghetti,anna),6). utility(buy(steak,anna),1).\n"
    "utility(buy(spaghetti,bob),7). utility(buy(beans,bob),7).\n"
    ":- #count{X : buy(spaghetti,X)} > 1.\n";

// Each rule head has a single answer set per world: the DTProbLog-
// degenerate case. Decision costs go through derived atoms.
const char* kDegenerate =
    "0.1::a. 0.7::b.\n"
    "decision da. decision db.\n"
    "q :- da, a.\n"
    "q :- db, b.\n"
    "rda :- da. rdb :- db.\n"
    "utility(q,4). utility(rda,-3). utility(rdb,-2).\n";

void check_range(const StrategyOutcome& o, double lo, double hi) {
  CHECK(o.utility.lower == doctest::Approx(lo).epsilon(kTol));
  CHECK(o.utility.upper == doctest::Approx(hi).epsilon(kTol));
}

}  // namespace

TEST_CASE("per-strategy utilities and argmax of the running program") {
  UtilityReport r = solve(parse(kRunning));
  REQUIRE(r.per_strategy.size() == 4);
  check_range(r.per_strategy.at(0b00), 0.0, 0.0);
  check_range(r.per_strategy.at(0b01), 0.6, 0.6);     // {da}
  check_range(r.per_strategy.at(0b10), -4.8, 0.8);    // {db}
  check_range(r.per_strategy.at(0b11), -2.76, 1.16);  // {da, db}
  CHECK(r.best_lower_strategy == 0b01);
  CHECK(r.best_lower_value == doctest::Approx(0.6).epsilon(kTol));
  CHECK(r.best_upper_strategy == 0b11);
  CHECK(r.best_upper_value == doctest::Approx(1.16).epsilon(kTol));
  CHECK(r.has_admissible_strategy);
  // 4 strategies x 4 worlds, all evaluated.
  CHECK(r.evaluated_pairs == 16);
}

TEST_CASE("world-by-world rewards behind the running program's numbers") {
  GroundProgram p = ground(parse(kRunning));
  auto worlds = enumerate_worlds(p);

  // Strategy {da}: reward 2 exactly in the worlds containing a.
  auto da = strategy_atoms(p, 0b01);
  auto r1 = world_reward_range(world_program(p, 0b01, da), p.utilities);
  REQUIRE(r1.has_value());
  CHECK(r1->lower == doctest::Approx(2.0));
  CHECK(r1->upper == doctest::Approx(2.0));
  CHECK(worlds[1].prob * r1->lower == doctest::Approx(0.36));

  // Strategy {db}, world {b}: two answer sets with rewards -12 and 2,
  // contributing [-3.36, 0.56].
  auto db = strategy_atoms(p, 0b10);
  auto r2 = world_reward_range(world_program(p, 0b10, db), p.utilities);
  REQUIRE(r2.has_value());
  CHECK(r2->lower == doctest::Approx(-12.0));
  CHECK(r2->upper == doctest::Approx(2.0));
  CHECK(worlds[2].prob * r2->lower == doctest::Approx(-3.36));
  CHECK(worlds[2].prob * r2->upper == doctest::Approx(0.56));

  // Empty strategy: every world rewards [0,0].
  for (const auto& w : worlds) {
    auto r0 = world_reward_range(world_program(p, w.mask), p.utilities);
    REQUIRE(r0.has_value());
    CHECK(r0->lower == doctest::Approx(0.0));
    CHECK(r0->upper == doctest::Approx(0.0));
  }
}

TEST_CASE("shop scenario with a crowding constraint") {
  UtilityReport r = solve(parse(kShops));
  REQUIRE(r.per_strategy.size() == 4);
  check_range(r.per_strategy.at(0b00), 0.0, 0.0);
  check_range(r.per_strategy.at(0b01), -1.2, 2.8);  // anna only
  check_range(r.per_strategy.at(0b10), 1.5, 1.5);   // bob only
  check_range(r.per_strategy.at(0b11), 0.3, 4.3);   // both
  CHECK(r.best_lower_strategy == 0b10);
  CHECK(r.best_lower_value == doctest::Approx(1.5).epsilon(kTol));
  CHECK(r.best_upper_strategy == 0b11);
  CHECK(r.best_upper_value == doctest::Approx(4.3).epsilon(kTol));
}

TEST_CASE("single-answer-set programs reduce to a scalar utility") {
  GroundProgram p = ground(parse(kDegenerate));
  CHECK(dtproblog_utility(p, 0b00) == doctest::Approx(0.0).epsilon(kTol));
  CHECK(dtproblog_utility(p, 0b01) == doctest::Approx(-2.6).epsilon(kTol));
  CHECK(dtproblog_utility(p, 0b10) == doctest::Approx(0.8).epsilon(kTol));
  CHECK(dtproblog_utility(p, 0b11) == doctest::Approx(-2.08).epsilon(kTol));

  // Argmax over the scalar utilities is {db}.
  StrategyMask best = 0;
  double best_value = dtproblog_utility(p, 0);
  for (StrategyMask sigma = 1; sigma < 4; ++sigma) {
    double v = dtproblog_utility(p, sigma);
    if (v > best_value) {
      best_value = v;
      best = sigma;
    }
  }
  CHECK(best == 0b10);
  CHECK(best_value == doctest::Approx(0.8).epsilon(kTol));

  // The general solver agrees bound-for-bound with the scalar value.
  UtilityReport r = solve(p);
  for (StrategyMask sigma = 0; sigma < 4; ++sigma) {
    double scalar = dtproblog_utility(p, sigma);
    check_range(r.per_strategy.at(sigma), scalar, scalar);
  }
  CHECK(r.best_lower_strategy == 0b10);
  CHECK(r.best_upper_strategy == 0b10);
}

TEST_CASE("multiple answer sets make the scalar reduction fail") {
  GroundProgram p = ground(parse(kRunning));
  CHECK_THROWS_AS(dtproblog_utility(p, 0b10), ProgramError);
}

TEST_CASE("scaling all rewards scales the report but keeps the argmax") {
  for (double c : {2.0, 10.0}) {
    Program scaled = parse(kRunning);
    for (auto& u : scaled.utilities) u.reward *= c;
    UtilityReport base = solve(parse(kRunning));
    UtilityReport r = solve(scaled);
    CHECK(r.best_lower_strategy == base.best_lower_strategy);
    CHECK(r.best_upper_strategy == base.best_upper_strategy);
    CHECK(r.best_lower_value == doctest::Approx(c * base.best_lower_value).epsilon(kTol));
    CHECK(r.best_upper_value == doctest::Approx(c * base.best_upper_value).epsilon(kTol));
    for (const auto& [sigma, outcome] : base.per_strategy) {
      check_range(r.per_strategy.at(sigma), c * outcome.utility.lower,
                  c * outcome.utility.upper);
    }
  }
}

TEST_CASE("inconsistent worlds are skipped with their mass reported") {
  // Selecting d with f true is contradictory, so strategy {d} loses the
  // mass of the f-worlds.
  UtilityReport r = solve(parse(
      "0.4::f. decision d.\n"
      "q :- d.\n"
      "utility(q,10).\n"
      ":- d, f.\n"));
  const StrategyOutcome& with_d = r.per_strategy.at(0b1);
  CHECK(with_d.inconsistent_mass == doctest::Approx(0.4).epsilon(kTol));
  check_range(with_d, 6.0, 6.0);  // 0.6 * 10
  CHECK(r.per_strategy.at(0b0).inconsistent_mass == doctest::Approx(0.0));
  CHECK(r.best_lower_strategy == 0b1);
}

TEST_CASE("a strategy whose every world is inconsistent is inadmissible") {
  UtilityReport r = solve(parse(
      "decision d. q :- d. utility(q,5). :- d.\n"));
  CHECK(r.per_strategy.at(0b1).all_worlds_inconsistent);
  CHECK(r.has_admissible_strategy);
  CHECK(r.best_lower_strategy == 0b0);
  CHECK(r.best_upper_strategy == 0b0);

  // When no strategy is admissible the report says so and stays neutral.
  UtilityReport none = solve(parse("decision d. a. :- a. utility(a,5)."));
  CHECK_FALSE(none.has_admissible_strategy);
  CHECK(none.best_lower_value == 0.0);
  CHECK(none.best_upper_value == 0.0);
}

TEST_CASE("pair counter is exactly exhaustive") {
  // (facts, decisions) -> 2^(n+d) pairs on a fully consistent program.
  struct Case {
    int n, d;
  } cases[] = {{2, 2}, {2, 5}, {3, 3}};
  for (auto [n, d] : cases) {
    std::string src;
    for (int i = 0; i < n; ++i) src += "0.5::f" + std::to_string(i) + ".\n";
    for (int i = 0; i < d; ++i) src += "decision d" + std::to_string(i) + ".\n";
    src += "q :- f0, d0.\nutility(q,1).\n";
    UtilityReport r = solve(parse(src));
    CHECK(r.evaluated_pairs == (std::uint64_t{1} << (n + d)));
  }
}

TEST_CASE("decision cap raises a resource error") {
  std::string src;
  for (int i = 0; i < 30; ++i) src += "decision d" + std::to_string(i) + ".\n";
  src += "q :- d0. utility(q,1).\n";
  EnumLimits limits;
  limits.max_decisions = 5;
  CHECK_THROWS_AS(solve(ground(parse(src)), limits), ResourceLimitError);
}
