#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <string>
#include <vector>

#include "dtpasp/completion.hpp"
#include "dtpasp/credal.hpp"
#include "dtpasp/enum_solver.hpp"
#include "dtpasp/parser.hpp"
#include "dtpasp/sat.hpp"
#include "dtpasp/stable.hpp"

using namespace dtpasp;

namespace {

// All satisfying assignments of a small CNF, as bitmasks.
std::vector<std::uint64_t> all_models(const Cnf& cnf) {
  REQUIRE(cnf.num_vars <= 20);
  std::vector<std::uint64_t> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << cnf.num_vars); ++bits)
    if (satisfies_cnf(cnf, bits)) out.push_back(bits);
  return out;
}

// Models projected onto the first `n` variables (the program atoms),
// de-duplicated.
std::set<std::uint64_t> projected_models(const Cnf& cnf, int n) {
  std::set<std::uint64_t> out;
  std::uint64_t mask = (n >= 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  for (std::uint64_t m : all_models(cnf)) out.insert(m & mask);
  return out;
}

std::set<std::uint64_t> answer_set_masks(const GroundProgram& p) {
  std::set<std::uint64_t> out;
  for (const auto& s : answer_sets(p).sets) out.insert(s.low_word());
  return out;
}

// The clause translation must be answer-set faithful on every strategy and
// world: fixing the fact/decision bits of a model yields exactly the
// answer sets of the corresponding instantiated program.
void check_faithful(const GroundProgram& p) {
  CompletionResult c = to_cnf(p);
  REQUIRE(c.num_atoms == static_cast<int>(p.atom_count()));
  auto models = all_models(c.cnf);
  std::vector<AtomId> choice_atoms;
  for (const auto& [atom, prob] : p.prob_facts) choice_atoms.push_back(atom);
  for (AtomId d : p.decisions) choice_atoms.push_back(d);
  std::uint64_t atom_mask = (std::uint64_t{1} << p.atom_count()) - 1;

  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << choice_atoms.size()); ++pick) {
    std::uint64_t fact_bits = 0;
    std::vector<AtomId> extra;
    for (std::size_t i = 0; i < choice_atoms.size(); ++i) {
      if ((pick >> i) & 1) {
        fact_bits |= std::uint64_t{1} << choice_atoms[i];
        extra.push_back(choice_atoms[i]);
      }
    }
    std::set<std::uint64_t> from_cnf;
    std::uint64_t choice_mask = 0;
    for (AtomId a : choice_atoms) choice_mask |= std::uint64_t{1} << a;
    for (std::uint64_t m : models)
      if ((m & choice_mask) == fact_bits) from_cnf.insert(m & atom_mask);

    std::set<std::uint64_t> from_search = answer_set_masks(world_program(p, 0, extra));
    CHECK(from_cnf == from_search);
  }
}

// Nine variables of the structured formula used throughout the
// decomposition tests: v1..v4 feed x1, x1..x3 overlap, y1/y2 hang off.
const char* kStructuredDimacs =
    "p cnf 9 7\n"
    "1 5 0\n-1 -5 0\n2 -3 5 0\n4 -5 0\n5 6 7 0\n-6 8 0\n-7 9 0\n";

}  // namespace

TEST_CASE("models of the translation are exactly the answer sets") {
  check_faithful(ground(parse("a :- \\+ b. b :- \\+ a.")));
  check_faithful(ground(parse("{a}. {b}. qr :- a. qr ; nqr :- b.")));
  check_faithful(ground(parse(
      "0.3::a. 0.4::b. decision da. decision db.\n"
      "qr :- da, a.\n"
      "qr ; nqr :- db, b.\n")));
  check_faithful(ground(parse("a. b :- a, \\+ c. c :- \\+ b. :- c, a.")));
  check_faithful(ground(parse("0.5::f. q :- f. r :- q, \\+ s. s :- \\+ r.")));
}

TEST_CASE("negation cycle gives exactly two models") {
  CompletionResult c = to_cnf(ground(parse("a :- \\+ b. b :- \\+ a.")));
  CHECK(all_models(c.cnf).size() == 2);
}

TEST_CASE("disjunctive heads are shifted before completion") {
  GroundProgram p = ground(parse("{c}. a ; b :- c."));
  CompletionResult comp = to_cnf(p);
  CHECK(projected_models(comp.cnf, static_cast<int>(p.atom_count())).size() ==
        answer_set_masks(p).size());
  check_faithful(p);
}

TEST_CASE("constraints become clauses") {
  GroundProgram p = ground(parse("{a}. {b}. :- a, b."));
  check_faithful(p);
  GroundProgram unsat = ground(parse("a. :- a."));
  CompletionResult c = to_cnf(unsat);
  CHECK((c.cnf.contradiction || all_models(c.cnf).empty()));
}

TEST_CASE("programs outside the fragment are rejected") {
  // Positive recursion (the cycle is reachable, so it is not pruned away).
  CHECK_THROWS_AS(to_cnf(ground(parse("{c}. a :- b. b :- a. a :- c."))), CompileUnsupported);
  // Head cycle through a disjunction.
  CHECK_THROWS_AS(to_cnf(ground(parse("{c}. a ; b :- c. a :- b. b :- a."))),
                  CompileUnsupported);
  // An unreachable positive cycle is pruned, not rejected: the remaining
  // rules compile.
  CHECK_NOTHROW(to_cnf(ground(parse("c. a :- b, c. b :- a, c."))));
  // Aggregates.
  CHECK_THROWS_AS(to_cnf(ground(parse("{a(1)}. q :- #count{X : a(X)} >= 1."))),
                  CompileUnsupported);
}

TEST_CASE("definability from binary equivalences is found syntactically") {
  Cnf cnf = parse_dimacs(kStructuredDimacs);
  std::vector<bool> base(9, false);
  for (int v = 0; v < 4; ++v) base[v] = true;  // v1..v4
  auto defined = definable_from(cnf, base, DefinabilityMode::Syntactic);
  CHECK(defined[4]);  // x1 is fixed by v1 through the first two clauses
  CHECK(defined[0]);  // base variables count as defined
  CHECK_FALSE(defined[5]);
  CHECK_FALSE(defined[8]);
}

TEST_CASE("semantic definability agrees and finds everything") {
  Cnf cnf = parse_dimacs(kStructuredDimacs);
  std::vector<bool> base(9, false);
  for (int v = 0; v < 4; ++v) base[v] = true;
  auto semantic = definable_from(cnf, base, DefinabilityMode::Semantic);
  CHECK(semantic[4]);
  CHECK_FALSE(semantic[5]);  // x2 still free given v1..v4
  CHECK_FALSE(semantic[7]);  // y1 too

  // With every variable in the base, everything is defined.
  std::vector<bool> all(9, true);
  for (bool d : definable_from(cnf, all, DefinabilityMode::Semantic)) CHECK(d);

  // Syntactic mode is a sound under-approximation of semantic mode.
  auto syntactic = definable_from(cnf, base, DefinabilityMode::Syntactic);
  for (int v = 0; v < 9; ++v)
    if (syntactic[v]) CHECK(semantic[v]);
}

TEST_CASE("derived atoms are defined by the atoms they depend on") {
  // a :- b, not na / na :- b, not a / c :- a, b: c is fixed once a and b
  // are, and na is fixed by a and b as well.
  GroundProgram p = ground(parse(
      "0.5::b.\n"
      "a :- b, \\+ na.\n"
      "na :- b, \\+ a.\n"
      "c :- a, b.\n"));
  CompletionResult comp = to_cnf(p);
  std::vector<bool> base(comp.cnf.num_vars, false);
  base[p.find_atom("a")] = true;
  base[p.find_atom("b")] = true;
  auto semantic = definable_from(comp.cnf, base, DefinabilityMode::Semantic);
  CHECK(semantic[p.find_atom("c")]);
  CHECK(semantic[p.find_atom("na")]);

  auto syntactic =
      definable_from(comp.cnf, base, DefinabilityMode::Syntactic, comp.defs);
  CHECK(syntactic[p.find_atom("c")]);
}

TEST_CASE("semantic mode enforces its base-size cap") {
  Cnf cnf = parse_dimacs(kStructuredDimacs);
  std::vector<bool> base(9, true);
  CHECK_THROWS_AS(definable_from(cnf, base, DefinabilityMode::Semantic, {}, 4), ProgramError);
}

TEST_CASE("satisfiability backend") {
  Cnf cnf = parse_dimacs(kStructuredDimacs);
  CHECK(satisfiable(cnf));
  CHECK(satisfiable(cnf, {5}));          // x1 true is extendable
  CHECK_FALSE(satisfiable(cnf, {1, 5}));  // v1 and x1 conflict
  Cnf contradiction = parse_dimacs("p cnf 1 2\n1 0\n-1 0\n");
  CHECK_FALSE(satisfiable(contradiction));
}
