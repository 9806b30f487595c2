#pragma once

#include <map>
#include <set>
#include <vector>

#include "dtpasp/cnf.hpp"

namespace dtpasp {

// Simple undirected graph over integer vertex ids (not necessarily dense).
struct Graph {
  std::set<int> verts;
  std::map<int, std::set<int>> adj;

  void add_vertex(int v) {
    verts.insert(v);
    adj.try_emplace(v);
  }
  void add_edge(int u, int v) {
    add_vertex(u);
    add_vertex(v);
    if (u == v) return;
    adj[u].insert(v);
    adj[v].insert(u);
  }
  void add_clique(const std::set<int>& vs) {
    for (int u : vs) {
      add_vertex(u);
      for (int v : vs)
        if (u < v) add_edge(u, v);
    }
  }
  const std::set<int>& neighbors(int v) const {
    static const std::set<int> empty;
    auto it = adj.find(v);
    return it == adj.end() ? empty : it->second;
  }
  bool has_edge(int u, int v) const { return neighbors(u).count(v) > 0; }

  Graph without(const std::set<int>& removed) const;
  Graph induced(const std::set<int>& keep) const;
  std::vector<std::set<int>> components() const;
};

// Primal graph of a CNF: one vertex per variable, clique per clause.
Graph primal_graph(const Cnf& cnf);

// Smallest S with S a subset of candidates-union-targets whose removal
// disconnects every target outside S from every vertex outside
// targets-union-S. Computed by vertex-capacity max-flow: vertices in
// candidates or targets cost 1 to remove, all others are uncuttable.
std::set<int> minimum_separator(const Graph& g, const std::set<int>& candidates,
                                const std::set<int>& targets);

}  // namespace dtpasp
