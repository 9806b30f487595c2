#include "dtpasp/completion.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "dtpasp/sat.hpp"
#include "dtpasp/stable.hpp"

namespace dtpasp {

namespace {

// Strongly connected components of the positive dependency graph
// (edge head -> positive body atom), iterative Tarjan.
std::vector<int> positive_sccs(const GroundProgram& p, bool* has_self_loop) {
  int n = static_cast<int>(p.atom_count());
  std::vector<std::vector<int>> adj(n);
  *has_self_loop = false;
  for (const auto& r : p.rules)
    for (AtomId h : r.head)
      for (const auto& b : r.body)
        if (b.kind == GroundBodyElement::Kind::Literal && b.literal.positive) {
          adj[h].push_back(b.literal.atom);
          if (b.literal.atom == h) *has_self_loop = true;
        }

  std::vector<int> comp(n, -1), low(n), disc(n, -1), stk;
  std::vector<bool> on_stack(n, false);
  int timer = 0, comps = 0;
  for (int root = 0; root < n; ++root) {
    if (disc[root] != -1) continue;
    // (node, next child index) frames
    std::vector<std::pair<int, std::size_t>> frames{{root, 0}};
    while (!frames.empty()) {
      auto& [u, idx] = frames.back();
      if (idx == 0) {
        disc[u] = low[u] = timer++;
        stk.push_back(u);
        on_stack[u] = true;
      }
      if (idx < adj[u].size()) {
        int v = adj[u][idx++];
        if (disc[v] == -1) {
          frames.push_back({v, 0});
        } else if (on_stack[v]) {
          low[u] = std::min(low[u], disc[v]);
        }
      } else {
        if (low[u] == disc[u]) {
          while (true) {
            int w = stk.back();
            stk.pop_back();
            on_stack[w] = false;
            comp[w] = comps;
            if (w == u) break;
          }
          ++comps;
        }
        int finished = u;
        frames.pop_back();
        if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[finished]);
      }
    }
  }
  return comp;
}

Lit atom_lit(const GroundLiteral& l) { return l.positive ? (l.atom + 1) : -(l.atom + 1); }

}  // namespace

CompletionResult to_cnf(const GroundProgram& p) {
  for (const auto& r : p.rules)
    if (r.has_aggregate())
      throw CompileUnsupported("program uses aggregates; use the enumeration method");

  bool self_loop = false;
  std::vector<int> comp = positive_sccs(p, &self_loop);
  std::vector<int> comp_size(p.atom_count() == 0 ? 0 : *std::max_element(comp.begin(), comp.end()) + 1, 0);
  for (int c : comp) ++comp_size[c];
  for (const auto& r : p.rules)
    if (r.head.size() > 1)
      for (std::size_t i = 0; i < r.head.size(); ++i)
        for (std::size_t j = i + 1; j < r.head.size(); ++j)
          if (comp[r.head[i]] == comp[r.head[j]])
            throw CompileUnsupported("disjunctive rule with head atoms in a positive cycle; use the enumeration method");
  if (self_loop || std::any_of(comp_size.begin(), comp_size.end(), [](int s) { return s > 1; }))
    throw CompileUnsupported("program has positive recursion; use the enumeration method");

  // Shift disjunctive heads: a;b :- B becomes a :- B, not b and b :- B, not a.
  std::vector<std::pair<AtomId, std::vector<GroundLiteral>>> normal;  // head (-1 = constraint), body
  for (const auto& r : p.rules) {
    std::vector<GroundLiteral> body;
    for (const auto& b : r.body) body.push_back(b.literal);
    if (r.head.empty()) {
      normal.push_back({-1, body});
    } else if (r.head.size() == 1) {
      normal.push_back({r.head[0], body});
    } else {
      for (std::size_t i = 0; i < r.head.size(); ++i) {
        std::vector<GroundLiteral> shifted = body;
        for (std::size_t j = 0; j < r.head.size(); ++j)
          if (j != i) shifted.push_back({r.head[j], false});
        normal.push_back({r.head[i], shifted});
      }
    }
  }

  std::vector<bool> free_var(p.atom_count(), false);
  for (const auto& [a, prob] : p.prob_facts) free_var[a] = true;
  for (AtomId d : p.decisions) free_var[d] = true;

  CompletionResult out;
  out.num_atoms = static_cast<int>(p.atom_count());
  Cnf& cnf = out.cnf;
  cnf.num_vars = out.num_atoms;
  for (const auto& a : p.atoms) cnf.var_names.push_back(a.to_string());
  out.defs.assign(p.atom_count(), {});

  std::vector<std::vector<std::size_t>> rules_for(p.atom_count());
  for (std::size_t i = 0; i < normal.size(); ++i) {
    const auto& [h, body] = normal[i];
    if (h < 0) {
      // Constraint: at least one body literal must be false.
      Clause clause;
      for (const auto& l : body) clause.push_back(-atom_lit(l));
      if (clause.empty())
        cnf.contradiction = true;
      else
        cnf.clauses.push_back(std::move(clause));
    } else {
      rules_for[h].push_back(i);
    }
  }

  auto body_vars = [](const std::vector<GroundLiteral>& body) {
    std::vector<int> vars;
    for (const auto& l : body) vars.push_back(l.atom);
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return vars;
  };

  for (AtomId a = 0; a < out.num_atoms; ++a) {
    if (free_var[a]) continue;
    Lit la = a + 1;
    const auto& rs = rules_for[a];
    bool has_fact = std::any_of(rs.begin(), rs.end(),
                                [&](std::size_t i) { return normal[i].second.empty(); });
    if (has_fact) {
      cnf.clauses.push_back({la});
      out.defs[a].push_back({});
      continue;
    }
    if (rs.empty()) {
      cnf.clauses.push_back({-la});
      out.defs[a].push_back({});
      continue;
    }
    if (rs.size() == 1) {
      // a <-> l1 & ... & lm directly, no body auxiliary needed.
      const auto& body = normal[rs[0]].second;
      Clause back{la};
      for (const auto& l : body) {
        cnf.clauses.push_back({-la, atom_lit(l)});
        back.push_back(-atom_lit(l));
      }
      cnf.clauses.push_back(std::move(back));
      out.defs[a].push_back(body_vars(body));
      continue;
    }
    // a <-> b1 | ... | bk with one auxiliary per multi-literal body.
    Clause support{-la};
    std::vector<int> def_vars;
    for (std::size_t i : rs) {
      const auto& body = normal[i].second;
      Lit lb;
      if (body.size() == 1) {
        lb = atom_lit(body[0]);
      } else {
        int beta = cnf.num_vars++;
        cnf.var_names.push_back("_body" + std::to_string(beta + 1));
        out.defs.push_back({body_vars(body)});
        lb = beta + 1;
        Clause back{lb};
        for (const auto& l : body) {
          cnf.clauses.push_back({-lb, atom_lit(l)});
          back.push_back(-atom_lit(l));
        }
        cnf.clauses.push_back(std::move(back));
      }
      cnf.clauses.push_back({-lb, la});
      support.push_back(lb);
      def_vars.push_back(lit_var(lb));
    }
    cnf.clauses.push_back(std::move(support));
    std::sort(def_vars.begin(), def_vars.end());
    def_vars.erase(std::unique(def_vars.begin(), def_vars.end()), def_vars.end());
    out.defs[a].push_back(std::move(def_vars));
  }
  return out;
}

std::vector<bool> definable_from(const Cnf& cnf, const std::vector<bool>& base,
                                 DefinabilityMode mode, const Definitions& hints,
                                 std::size_t semantic_cap) {
  int n = cnf.num_vars;
  std::vector<bool> defined = base;
  defined.resize(n, false);

  if (mode == DefinabilityMode::Syntactic) {
    Definitions alts = hints;
    alts.resize(n);
    for (const auto& clause : cnf.clauses) {
      if (clause.size() == 1) alts[lit_var(clause[0])].push_back({});
    }
    // Two-clause equivalences: (x|y)&(-x|-y) gives x <-> -y, and
    // (-x|y)&(x|-y) gives x <-> y; either way each side defines the other.
    std::set<std::pair<Lit, Lit>> binary;
    for (const auto& clause : cnf.clauses) {
      if (clause.size() != 2) continue;
      Lit a = clause[0], b = clause[1];
      if (lit_var(a) > lit_var(b)) std::swap(a, b);
      binary.insert({a, b});
    }
    for (const auto& [a, b] : binary) {
      if (binary.count({-a, -b})) {
        alts[lit_var(a)].push_back({lit_var(b)});
        alts[lit_var(b)].push_back({lit_var(a)});
      }
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (int v = 0; v < n; ++v) {
        if (defined[v]) continue;
        for (const auto& deps : alts[v]) {
          if (std::all_of(deps.begin(), deps.end(), [&](int d) { return defined[d]; })) {
            defined[v] = true;
            changed = true;
            break;
          }
        }
      }
    }
    return defined;
  }

  std::vector<int> base_vars;
  for (int v = 0; v < n; ++v)
    if (defined[v]) base_vars.push_back(v);
  if (base_vars.size() > semantic_cap)
    throw ResourceLimitError("semantic definability over " + std::to_string(base_vars.size()) +
                             " base variables exceeds the cap of " + std::to_string(semantic_cap));
  std::vector<int> candidates;
  for (int v = 0; v < n; ++v)
    if (!defined[v]) candidates.push_back(v);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << base_vars.size()) && !candidates.empty(); ++m) {
    std::vector<Lit> assumptions;
    for (std::size_t i = 0; i < base_vars.size(); ++i)
      assumptions.push_back((m >> i) & 1 ? base_vars[i] + 1 : -(base_vars[i] + 1));
    std::vector<int> keep;
    for (int y : candidates) {
      assumptions.push_back(y + 1);
      bool pos = satisfiable(cnf, assumptions);
      assumptions.back() = -(y + 1);
      bool neg = satisfiable(cnf, assumptions);
      assumptions.pop_back();
      if (pos && neg)
        continue;  // value not determined under this base assignment
      keep.push_back(y);
    }
    candidates = std::move(keep);
  }
  for (int y : candidates) defined[y] = true;
  return defined;
}

}  // namespace dtpasp
