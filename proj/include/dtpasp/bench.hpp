#pragma once

#include <string>

#include "dtpasp/enum_solver.hpp"

namespace dtpasp {

// One synthetic instance: suites t1/t2 use both size parameters, t3-t6 use
// a single size (pass it as both).
struct BenchSpec {
  std::string suite;  // t1..t6
  int n_prob_facts = 0;
  int n_decisions = 0;
  unsigned seed = 0;
};

struct BenchResult {
  BenchSpec spec;
  std::string method;  // what actually ran: enum or amc3
  double wall_time_seconds = 0.0;
  UtilityReport report;
};

// Deterministic program text for a spec; same spec and seed give identical
// bytes.
std::string generate_text(const BenchSpec& spec);
Program generate(const BenchSpec& spec);

// method: "enum", "amc3" or "auto" (amc3 with fallback to enumeration when
// the program is outside the compilable fragment). Timing covers only the
// solve call.
BenchResult run(const BenchSpec& spec, const std::string& method);

// True when every (strategy, world) instantiation has an answer set; the
// suites t1-t5 promise this and the harness asserts it at small sizes.
bool every_world_consistent(const GroundProgram& p);

std::string csv_header();
std::string csv_row(const BenchResult& r);

}  // namespace dtpasp
