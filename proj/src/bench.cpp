#include "dtpasp/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <random>
#include <sstream>

#include "dtpasp/compile.hpp"
#include "dtpasp/completion.hpp"
#include "dtpasp/parser.hpp"

namespace dtpasp {

namespace {

// Draws routed through modulo so the byte-level output is identical on
// every platform, independent of the standard library's distributions.
class Draw {
 public:
  explicit Draw(unsigned seed) : rng_(seed) {}

  // Probability from the lattice {0.05, 0.10, ..., 0.95}.
  std::string probability() {
    int step = 1 + static_cast<int>(rng_() % 19);
    char buf[16];
    std::snprintf(buf, sizeof buf, "%.2f", step * 0.05);
    return buf;
  }

  int integer(int lo, int hi) { return lo + static_cast<int>(rng_() % (hi - lo + 1)); }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng_() % i]);
  }

 private:
  std::mt19937 rng_;
};

void qr_rules(std::ostream& out, int pair_count, bool index_by_fact, int n, int d) {
  // One index per (fact, decision) pairing; even indices give a plain
  // rule, odd ones the qr/nqr pair under negation.
  for (int k = 0; k < pair_count; ++k) {
    int j = index_by_fact ? k : k % n;        // fact index
    int i = index_by_fact ? k % d : k;        // decision index
    if (k % 2 == 0) {
      out << "qr :- a(" << j << "), da(" << i << ").\n";
    } else {
      out << "qr :- a(" << j << "), da(" << i << "), \\+ nqr.\n";
      out << "nqr :- a(" << j << "), da(" << i << "), \\+ qr.\n";
    }
  }
}

void facts_and_decisions(std::ostream& out, Draw& draw, int n, int d) {
  for (int j = 0; j < n; ++j) out << draw.probability() << "::a(" << j << ").\n";
  for (int i = 0; i < d; ++i) out << "decision da(" << i << ").\n";
  out << "utility(qr,2).\nutility(nqr,-12).\n";
}

}  // namespace

std::string generate_text(const BenchSpec& spec) {
  Draw draw(spec.seed);
  int n = spec.n_prob_facts, d = spec.n_decisions;
  if (n < 0 || d < 0) throw ProgramError("negative benchmark size");
  std::ostringstream out;

  if (spec.suite == "t1" || spec.suite == "t2") {
    facts_and_decisions(out, draw, n, d);
    if (spec.suite == "t1") {
      if (n == 0 && d > 0) throw ProgramError("t1 needs at least one probabilistic fact");
      qr_rules(out, d, false, n, d);
    } else {
      if (d == 0 && n > 0) throw ProgramError("t2 needs at least one decision atom");
      qr_rules(out, n, true, n, d);
    }
    return out.str();
  }

  if (spec.suite == "t3" || spec.suite == "t4" || spec.suite == "t5") {
    if (n != d) throw ProgramError(spec.suite + " uses a single size parameter");
    facts_and_decisions(out, draw, n, d);
    if (spec.suite != "t4")
      for (int i = 0; i < n; ++i)
        out << "utility(rda(" << i << ")," << draw.integer(-10, 10) << ").\n";
    for (int i = 0; i < n; ++i) out << "rda(" << i << ") :- da(" << i << ").\n";
    if (spec.suite == "t5") {
      if (n == 0) return out.str();
      std::ostringstream even, odd;
      for (int i = 0; i < n; i += 2) even << (i ? ", " : "") << "a(" << i << "), da(" << i << ")";
      for (int i = 1; i < n; i += 2)
        odd << (i > 1 ? ", " : "") << "a(" << i << "), da(" << i << ")";
      out << "qr :- " << even.str() << ".\n";
      std::string sep = odd.str().empty() ? "" : ", ";
      out << "qr :- " << odd.str() << sep << "\\+ nqr.\n";
      out << "nqr :- " << odd.str() << sep << "\\+ qr.\n";
    } else {
      qr_rules(out, n, false, n, d);
    }
    return out.str();
  }

  if (spec.suite == "t6") {
    if (n != d) throw ProgramError("t6 uses a single size parameter");
    if (2 * n > 100) throw ProgramError("t6 supports at most 50 people");
    std::vector<int> pool(100);
    std::iota(pool.begin(), pool.end(), 0);
    draw.shuffle(pool);  // two globally distinct products per person
    for (int i = 1; i <= n; ++i) out << draw.probability() << "::shops(" << i << ").\n";
    for (int i = 1; i <= n; ++i) out << "decision target(" << i << ").\n";
    // Per-person target cost through a derived atom, since utilities sit on
    // derived atoms rather than on decisions directly.
    for (int i = 1; i <= n; ++i)
      out << "utility(rt(" << i << ")," << draw.integer(-5, 5) << ").\n";
    for (int i = 1; i <= n; ++i) out << "rt(" << i << ") :- target(" << i << ").\n";
    std::vector<std::pair<int, int>> chosen;  // product, person
    for (int i = 1; i <= n; ++i) {
      int a = pool[2 * (i - 1)], b = pool[2 * (i - 1) + 1];
      out << "buy(item" << a << "," << i << ") ; buy(item" << b << "," << i << ") :- target("
          << i << "), shops(" << i << ").\n";
      chosen.push_back({a, i});
      chosen.push_back({b, i});
    }
    for (auto [j, i] : chosen)
      out << "rb(item" << j << ") :- buy(item" << j << "," << i << ").\n";
    for (auto [j, i] : chosen)
      out << "utility(rb(item" << j << ")," << draw.integer(-10, 10) << ").\n";
    // The crowding constraint of the two-person original, on the first
    // person's first product.
    if (n > 0)
      out << ":- #count{X : buy(item" << pool[0] << ",X)} > 1.\n";
    return out.str();
  }

  throw ProgramError("unknown benchmark suite " + spec.suite);
}

Program generate(const BenchSpec& spec) { return parse(generate_text(spec)); }

bool every_world_consistent(const GroundProgram& p) {
  EnumLimits limits;
  for (StrategyMask sigma = 0; sigma < (StrategyMask{1} << p.decisions.size()); ++sigma) {
    auto sigma_facts = strategy_atoms(p, sigma);
    for (const auto& w : enumerate_worlds(p, limits.credal))
      if (answer_sets(world_program(p, w.mask, sigma_facts)).sets.empty()) return false;
  }
  return true;
}

BenchResult run(const BenchSpec& spec, const std::string& method) {
  BenchResult result;
  result.spec = spec;
  GroundProgram gp = ground(generate(spec));
  auto start = std::chrono::steady_clock::now();
  if (method == "enum") {
    result.report = solve(gp);
    result.method = "enum";
  } else if (method == "amc3" || method == "auto") {
    try {
      result.report = solve_amc3(gp).report;
      result.method = "amc3";
    } catch (const CompileUnsupported&) {
      if (method == "amc3") throw;
      result.report = solve(gp);
      result.method = "enum";
    }
  } else {
    throw ProgramError("unknown method " + method + "; expected enum, amc3 or auto");
  }
  result.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

std::string strategy_names(const GroundProgram& gp, StrategyMask sigma) {
  std::string out = "{";
  bool first = true;
  for (AtomId a : strategy_atoms(gp, sigma)) {
    if (!first) out += ",";
    out += gp.atoms[a].to_string();
    first = false;
  }
  return out + "}";
}

}  // namespace

std::string csv_header() {
  return "suite,n,d,method,seed,wall_time_seconds,lower_value,upper_value,lower_strategy,"
         "upper_strategy\n";
}

std::string csv_row(const BenchResult& r) {
  GroundProgram gp = ground(generate(r.spec));
  std::ostringstream out;
  out << csv_field(r.spec.suite) << "," << r.spec.n_prob_facts << "," << r.spec.n_decisions
      << "," << csv_field(r.method) << "," << r.spec.seed << "," << format_real(r.wall_time_seconds)
      << "," << format_real(r.report.best_lower_value) << ","
      << format_real(r.report.best_upper_value) << ","
      << csv_field(strategy_names(gp, r.report.best_lower_strategy)) << ","
      << csv_field(strategy_names(gp, r.report.best_upper_strategy)) << "\n";
  return out.str();
}

}  // namespace dtpasp
