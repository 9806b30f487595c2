#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "dtpasp/bench.hpp"
#include "dtpasp/compile.hpp"
#include "dtpasp/completion.hpp"
#include "dtpasp/graph.hpp"
#include "dtpasp/parser.hpp"
#include "dtpasp/treedecomp.hpp"

namespace {

using json = nlohmann::json;
using namespace dtpasp;

constexpr int kExitParse = 1, kExitSemantic = 2, kExitResource = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path, 0, 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ProgramError("cannot write " + path);
  out << content;
}

std::string human(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

// Caps configurable through the environment.
EnumLimits limits_from_env() {
  EnumLimits limits;
  if (const char* v = std::getenv("DTPASP_MAX_DECISIONS")) limits.max_decisions = std::atoi(v);
  if (const char* v = std::getenv("DTPASP_MAX_PROB_FACTS"))
    limits.credal.max_prob_facts = std::atoi(v);
  if (const char* v = std::getenv("DTPASP_MAX_BRANCH_ATOMS"))
    limits.credal.solve.max_branch_atoms = std::atoi(v);
  return limits;
}

bool looks_like_dimacs(const std::string& text) {
  for (std::size_t i = 0; i < text.size();) {
    std::size_t end = text.find('\n', i);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(i, end - i);
    i = end + 1;
    if (line.empty() || line[0] == 'c') continue;
    return line[0] == 'p';
  }
  return false;
}

std::vector<GroundLiteral> parse_query(const GroundProgram& gp, const std::string& spec) {
  std::vector<GroundLiteral> query;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    GroundLiteral lit;
    std::size_t a = item.find_first_not_of(" \t");
    std::size_t b = item.find_last_not_of(" \t");
    if (a == std::string::npos) throw ProgramError("empty query literal");
    item = item.substr(a, b - a + 1);
    if (item.rfind("not ", 0) == 0) {
      lit.positive = false;
      item = item.substr(4);
    } else if (item.rfind("\\+", 0) == 0) {
      lit.positive = false;
      item = item.substr(2);
    }
    item.erase(0, item.find_first_not_of(" \t"));
    lit.atom = gp.find_atom(item);
    if (lit.atom < 0) throw ProgramError("query atom " + item + " does not occur in the program");
    query.push_back(lit);
  }
  if (query.empty()) throw ProgramError("empty query");
  return query;
}

json strategy_json(const GroundProgram& gp, StrategyMask sigma) {
  json arr = json::array();
  for (AtomId a : strategy_atoms(gp, sigma)) arr.push_back(gp.atoms[a].to_string());
  return arr;
}

std::string strategy_human(const GroundProgram& gp, StrategyMask sigma) {
  std::string out = "{";
  bool first = true;
  for (AtomId a : strategy_atoms(gp, sigma)) {
    if (!first) out += ",";
    out += gp.atoms[a].to_string();
    first = false;
  }
  return out + "}";
}

int cmd_query(const std::string& file, const std::string& query_spec, bool structured) {
  GroundProgram gp = ground(parse(read_file(file)));
  CredalResult res = query_probability(gp, parse_query(gp, query_spec), limits_from_env().credal);
  if (structured) {
    json j{{"lower", res.lower}, {"upper", res.upper}, {"inconsistent", res.inconsistent_mass}};
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "lower=" << human(res.lower) << " upper=" << human(res.upper)
              << " inc=" << human(res.inconsistent_mass) << "\n";
  }
  return 0;
}

// Runs the requested method; under "auto" the circuit pipeline falls back
// to enumeration for programs outside the compilable fragment.
UtilityReport solve_with(const GroundProgram& gp, const std::string& method,
                         std::string* used, bool* fell_back) {
  *fell_back = false;
  if (method == "enum") {
    *used = "enum";
    return solve(gp, limits_from_env());
  }
  if (method == "amc3") {
    *used = "amc3";
    return solve_amc3(gp).report;
  }
  try {
    *used = "amc3";
    return solve_amc3(gp).report;
  } catch (const CompileUnsupported& e) {
    *fell_back = true;
    *used = "enum";
    std::cerr << "note: " << e.what() << "; falling back to enumeration\n";
    return solve(gp, limits_from_env());
  }
}

void print_report(const GroundProgram& gp, const UtilityReport& rep, const std::string& used,
                  bool structured) {
  if (structured) {
    json j{{"method", used},
           {"has_admissible_strategy", rep.has_admissible_strategy},
           {"best_lower",
            {{"strategy", strategy_json(gp, rep.best_lower_strategy)},
             {"value", rep.best_lower_value}}},
           {"best_upper",
            {{"strategy", strategy_json(gp, rep.best_upper_strategy)},
             {"value", rep.best_upper_value}}}};
    if (!rep.per_strategy.empty()) {
      json per = json::array();
      for (const auto& [sigma, outcome] : rep.per_strategy)
        per.push_back({{"strategy", strategy_json(gp, sigma)},
                       {"lower", outcome.utility.lower},
                       {"upper", outcome.utility.upper},
                       {"inconsistent_mass", outcome.inconsistent_mass},
                       {"all_worlds_inconsistent", outcome.all_worlds_inconsistent}});
      j["per_strategy"] = per;
    }
    std::cout << j.dump() << "\n";
    return;
  }
  if (!rep.has_admissible_strategy) {
    std::cout << "no admissible strategy (every strategy leaves all worlds without answer sets)\n";
    return;
  }
  std::cout << "lower: " << strategy_human(gp, rep.best_lower_strategy) << " "
            << human(rep.best_lower_value) << "\n";
  std::cout << "upper: " << strategy_human(gp, rep.best_upper_strategy) << " "
            << human(rep.best_upper_value) << "\n";
}

int cmd_solve(const std::string& file, const std::string& method, bool structured) {
  GroundProgram gp = ground(parse(read_file(file)));
  std::string used;
  bool fell_back = false;
  UtilityReport rep = solve_with(gp, method, &used, &fell_back);
  print_report(gp, rep, used, structured);
  return 0;
}

std::vector<int> parse_range(const std::string& spec) {
  auto dots = spec.find("..");
  std::vector<int> out;
  if (dots == std::string::npos) {
    out.push_back(std::stoi(spec));
  } else {
    int lo = std::stoi(spec.substr(0, dots));
    int hi = std::stoi(spec.substr(dots + 2));
    for (int v = lo; v <= hi; ++v) out.push_back(v);
  }
  return out;
}

int cmd_bench(const std::string& suite, const std::string& n_spec, const std::string& d_spec,
              const std::string& size_spec, unsigned seed, const std::string& method,
              const std::string& out_path) {
  std::vector<BenchSpec> specs;
  if (!size_spec.empty()) {
    for (int s : parse_range(size_spec)) specs.push_back({suite, s, s, seed});
  } else {
    for (int n : parse_range(n_spec.empty() ? "0" : n_spec))
      for (int d : parse_range(d_spec.empty() ? "0" : d_spec))
        specs.push_back({suite, n, d, seed});
  }
  std::ostringstream csv;
  csv << csv_header();
  for (const auto& spec : specs) csv << csv_row(run(spec, method));
  if (out_path.empty())
    std::cout << csv.str();
  else
    write_file(out_path, csv.str());
  return 0;
}

// Tier spec "o:1,2;m:3,4" with 1-based DIMACS variables; unlisted
// variables are inner.
void parse_tiers(const std::string& spec, int num_vars, std::set<int>& xo, std::set<int>& xm) {
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ';')) {
    if (part.empty()) continue;
    if (part.size() < 2 || part[1] != ':' || (part[0] != 'o' && part[0] != 'm'))
      throw ProgramError("tier spec must look like o:1,2;m:3,4");
    std::set<int>& dst = part[0] == 'o' ? xo : xm;
    std::stringstream vars(part.substr(2));
    std::string v;
    while (std::getline(vars, v, ',')) {
      if (v.empty()) continue;
      int var = std::stoi(v) - 1;
      if (var < 0 || var >= num_vars)
        throw ProgramError("tier variable " + v + " out of range");
      dst.insert(var);
    }
  }
}

int cmd_td(const std::string& file, const std::string& tiers, const std::string& out_td,
           bool no_definability) {
  Cnf cnf = parse_dimacs(read_file(file));
  std::set<int> xo, xm;
  parse_tiers(tiers, cnf.num_vars, xo, xm);
  std::vector<bool> base_o(cnf.num_vars, false), base_om(cnf.num_vars, false);
  for (int v : xo) base_o[v] = base_om[v] = true;
  for (int v : xm) base_om[v] = true;
  std::set<int> def_o, def_om;
  if (!no_definability) {
    auto mode = cnf.num_vars <= 20 ? DefinabilityMode::Semantic : DefinabilityMode::Syntactic;
    std::vector<bool> closure_o = definable_from(cnf, base_o, mode);
    std::vector<bool> closure_om = definable_from(cnf, base_om, mode);
    for (int v = 0; v < cnf.num_vars; ++v) {
      if (closure_o[v] && !xo.count(v) && !xm.count(v)) def_o.insert(v);
      if (closure_om[v] && !xo.count(v) && !xm.count(v)) def_om.insert(v);
    }
  }
  Graph g = primal_graph(cnf);
  Amc3Decomposition dec = amc3_decomposition(g, xo, xm, def_o, def_om);
  std::string why;
  bool ok = validate_amc3(g, dec, xo, xm, def_o, def_om, &why);
  std::cout << "width=" << dec.td.width() << " bags=" << dec.td.bags.size()
            << " audit=" << (ok ? "pass" : ("fail (" + why + ")")) << "\n";
  if (!out_td.empty()) write_file(out_td, to_td_format(dec.td, cnf.num_vars));
  return ok ? 0 : kExitSemantic;
}

int cmd_compile(const std::string& file, const std::string& dump_nnf, const std::string& method,
                bool structured) {
  std::string text = read_file(file);
  if (looks_like_dimacs(text)) {
    Cnf cnf = parse_dimacs(text);
    CompileOptions opt;
    for (int v = 0; v < cnf.num_vars; ++v) opt.order.push_back(v);
    Circuit circuit = compile_cnf(cnf, opt);
    std::cout << "nodes=" << circuit.nodes.size() << " models=" << count_models(circuit) << "\n";
    if (!dump_nnf.empty()) write_file(dump_nnf, to_nnf_format(circuit));
    return 0;
  }
  GroundProgram gp = ground(parse(text));
  try {
    CompletionResult comp = to_cnf(gp);
    CompileOptions opt;
    for (int v = 0; v < comp.cnf.num_vars; ++v) opt.order.push_back(v);
    Amc3Solution sol = solve_amc3(gp);
    std::cout << "circuit_nodes=" << sol.circuit_nodes << " width=" << sol.decomposition_width
              << "\n";
    print_report(gp, sol.report, "amc3", structured);
    if (!dump_nnf.empty()) {
      Circuit circuit = compile_cnf(comp.cnf, opt);
      write_file(dump_nnf, to_nnf_format(circuit));
    }
    return 0;
  } catch (const CompileUnsupported& e) {
    if (method != "auto") throw;
    std::cerr << "note: " << e.what() << "; falling back to enumeration\n";
    UtilityReport rep = solve(gp, limits_from_env());
    print_report(gp, rep, "enum", structured);
    return 0;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decision-theory solver for probabilistic answer set programs"};
  app.require_subcommand(1);
  bool structured = false;
  int jobs = 1;
  app.add_flag("--structured", structured, "machine-readable JSON output");
  app.add_option("--jobs", jobs, "worker bound for parallel sections")->check(CLI::PositiveNumber);

  std::string file, query_spec, method = "auto", suite, n_spec, d_spec, size_spec, out_path;
  std::string dump_nnf, tiers, out_td;
  unsigned seed = 0;
  bool no_definability = false;

  auto* q = app.add_subcommand("query", "credal probability bounds of a query");
  q->add_option("file", file)->required();
  q->add_option("--query", query_spec, "literal list, e.g. qr or qr,not nqr")->required();

  auto* s = app.add_subcommand("solve", "optimal lower/upper expected-utility strategies");
  s->add_option("file", file)->required();
  s->add_option("--method", method)->check(CLI::IsMember({"enum", "amc3", "auto"}));

  auto* b = app.add_subcommand("bench", "generate and time synthetic suites");
  b->add_option("--suite", suite)->required()->check(CLI::IsMember({"t1", "t2", "t3", "t4", "t5", "t6"}));
  b->add_option("--n", n_spec, "probabilistic facts, value or range lo..hi");
  b->add_option("--d", d_spec, "decision atoms, value or range lo..hi");
  b->add_option("--size", size_spec, "single size for t3-t6, value or range");
  b->add_option("--seed", seed);
  b->add_option("--method", method)->check(CLI::IsMember({"enum", "amc3", "auto"}));
  b->add_option("--out", out_path, "CSV output path (default stdout)");

  auto* c = app.add_subcommand("compile", "compile to a decision circuit");
  c->add_option("file", file)->required();
  c->add_option("--dump-nnf", dump_nnf);
  c->add_option("--method", method)->check(CLI::IsMember({"enum", "amc3", "auto"}));

  auto* t = app.add_subcommand("td", "split tree decomposition of a DIMACS CNF");
  t->add_option("file", file)->required();
  t->add_option("--tiers", tiers, "o:v1,v2;m:v3 (1-based variables)")->required();
  t->add_option("--out-td", out_td);
  t->add_flag("--no-definability", no_definability);

  CLI11_PARSE(app, argc, argv);

  try {
    if (q->parsed()) return cmd_query(file, query_spec, structured);
    if (s->parsed()) return cmd_solve(file, method, structured);
    if (b->parsed()) return cmd_bench(suite, n_spec, d_spec, size_spec, seed, method, out_path);
    if (c->parsed()) return cmd_compile(file, dump_nnf, method, structured);
    if (t->parsed()) return cmd_td(file, tiers, out_td, no_definability);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ResourceLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const ProgramError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSemantic;
  }
  return 0;
}
