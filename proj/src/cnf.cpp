#include "dtpasp/cnf.hpp"

#include <cstdint>
#include <sstream>

namespace dtpasp {

bool satisfies_cnf(const Cnf& cnf, std::uint64_t assignment) {
  if (cnf.contradiction) return false;
  for (const auto& clause : cnf.clauses) {
    bool sat = false;
    for (Lit l : clause) {
      bool v = (assignment >> lit_var(l)) & 1;
      if (v == lit_sign(l)) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

std::string to_dimacs(const Cnf& cnf) {
  std::ostringstream out;
  out << "p cnf " << cnf.num_vars << " " << cnf.clauses.size() << "\n";
  for (const auto& clause : cnf.clauses) {
    for (Lit l : clause) out << l << " ";
    out << "0\n";
  }
  return out.str();
}

Cnf parse_dimacs(const std::string& text) {
  Cnf cnf;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c') continue;
    if (line[0] == 'p') {
      std::istringstream h(line);
      std::string p, fmt;
      int nc = 0;
      h >> p >> fmt >> cnf.num_vars >> nc;
      continue;
    }
    std::istringstream body(line);
    Clause clause;
    int l = 0;
    while (body >> l) {
      if (l == 0) break;
      clause.push_back(l);
      if (std::abs(l) > cnf.num_vars) cnf.num_vars = std::abs(l);
    }
    if (clause.empty())
      cnf.contradiction = true;
    else
      cnf.clauses.push_back(std::move(clause));
  }
  return cnf;
}

}  // namespace dtpasp
