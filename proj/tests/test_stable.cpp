#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "dtpasp/parser.hpp"
#include "dtpasp/stable.hpp"

using namespace dtpasp;

namespace {

// Answer sets as sorted sets of visible (non-auxiliary) atom names.
std::set<std::set<std::string>> visible_sets(const GroundProgram& p) {
  std::set<std::set<std::string>> out;
  for (const auto& interp : answer_sets(p).sets) {
    std::set<std::string> names;
    for (std::size_t i = 0; i < p.atom_count(); ++i)
      if (interp.test(i) && !p.aux[i]) names.insert(p.atoms[i].to_string());
    out.insert(std::move(names));
  }
  return out;
}

// Brute-force stability sweep: every subset of atoms, checked directly
// against the definition via check_stable.
std::vector<Interpretation> stable_by_definition(const GroundProgram& p) {
  std::vector<Interpretation> out;
  REQUIRE(p.atom_count() <= 16);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << p.atom_count()); ++bits) {
    Interpretation i(p.atom_count());
    for (std::size_t a = 0; a < p.atom_count(); ++a)
      if ((bits >> a) & 1) i.set(a);
    if (check_stable(p, i)) out.push_back(i);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("choice, normal and disjunctive rules together") {
  GroundProgram p = ground(parse("{a}. {b}. qr :- a. qr ; nqr :- b."));
  std::set<std::set<std::string>> expected = {
      {}, {"a", "qr"}, {"b", "qr"}, {"a", "b", "qr"}, {"b", "nqr"}};
  CHECK(visible_sets(p) == expected);
  CHECK(answer_sets(p).sets.size() == 5);

  // Projection onto {qr, a} merges to three distinct sets.
  Bitset onto(p.atom_count());
  onto.set(p.find_atom("qr"));
  onto.set(p.find_atom("a"));
  auto projected = project(answer_sets(p), onto);
  CHECK(projected.size() == 3);
}

TEST_CASE("disjunctive minimality") {
  GroundProgram p = ground(parse("a ; b."));
  std::set<std::set<std::string>> expected = {{"a"}, {"b"}};
  CHECK(visible_sets(p) == expected);
  // {a, b} is a classical model but not minimal.
  Interpretation both(p.atom_count());
  both.set(p.find_atom("a"));
  both.set(p.find_atom("b"));
  CHECK(is_model(p, both));
  CHECK_FALSE(check_stable(p, both));
}

TEST_CASE("negation cycles give multiple answer sets") {
  GroundProgram p = ground(parse("a :- \\+ b. b :- \\+ a."));
  std::set<std::set<std::string>> expected = {{"a"}, {"b"}};
  CHECK(visible_sets(p) == expected);
}

TEST_CASE("positive loops are not self-supporting") {
  GroundProgram p = ground(parse("c. a :- b, c. b :- a, c."));
  std::set<std::set<std::string>> expected = {{"c"}};
  CHECK(visible_sets(p) == expected);
}

TEST_CASE("constraints filter candidates") {
  GroundProgram p = ground(parse("{a}. {b}. :- a, b."));
  CHECK(visible_sets(p).size() == 3);
  GroundProgram none = ground(parse("a. :- a."));
  CHECK(answer_sets(none).sets.empty());
}

TEST_CASE("reduct keeps exactly the rules with a true body") {
  GroundProgram p = ground(parse("a. b :- a, \\+ c. c :- \\+ b."));
  Interpretation i(p.atom_count());
  i.set(p.find_atom("a"));
  i.set(p.find_atom("b"));
  GroundProgram r = reduct(p, i);
  // The rule for c has body "not b", false in i, so it is dropped.
  CHECK(r.rules.size() == 2);
  CHECK(check_stable(p, i));
}

TEST_CASE("count aggregates in rule bodies") {
  GroundProgram p = ground(parse(
      "{a(1)}. {a(2)}. {a(3)}.\n"
      "many :- #count{X : a(X)} >= 2.\n"));
  for (const auto& s : visible_sets(p)) {
    std::size_t n = std::count_if(s.begin(), s.end(),
                                  [](const std::string& x) { return x[0] == 'a'; });
    CHECK(s.count("many") == (n >= 2 ? 1 : 0));
  }
  CHECK(visible_sets(p).size() == 8);
}

TEST_CASE("aggregate comparators against the search oracle") {
  for (const char* cmp : {"< 2", "<= 1", "> 1", ">= 2", "= 1", "!= 1"}) {
    std::string src = "{a(1)}. {a(2)}. q :- #count{X : a(X)} " + std::string(cmp) + ".";
    GroundProgram p = ground(parse(src));
    auto searched = answer_sets(p).sets;
    CHECK(searched == stable_by_definition(p));
  }
}

TEST_CASE("search agrees with the brute-force definition sweep") {
  const char* programs[] = {
      "{a}. {b}. qr :- a. qr ; nqr :- b.",
      "a :- \\+ b. b :- \\+ a. c :- a. c :- b.",
      "a ; b ; c. :- a, b.",
      "{a}. b :- a. :- \\+ b.",
      "p. q :- p, \\+ r. r :- p, \\+ q. s :- q. s :- r.",
  };
  for (const char* src : programs) {
    GroundProgram p = ground(parse(src));
    CHECK(answer_sets(p).sets == stable_by_definition(p));
  }
}

TEST_CASE("answer sets are distinct and ordered") {
  GroundProgram p = ground(parse("{a}. {b}. {c}."));
  auto sets = answer_sets(p).sets;
  CHECK(sets.size() == 8);
  CHECK(std::is_sorted(sets.begin(), sets.end()));
  CHECK(std::adjacent_find(sets.begin(), sets.end()) == sets.end());
}

TEST_CASE("branch limit raises a resource error") {
  std::string src;
  for (int i = 0; i < 30; ++i) src += "{a(" + std::to_string(i) + ")}.\n";
  GroundProgram p = ground(parse(src));
  SolveLimits limits;
  limits.max_branch_atoms = 8;
  CHECK_THROWS_AS(answer_sets(p, limits), ResourceLimitError);
}
