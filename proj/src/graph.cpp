#include "dtpasp/graph.hpp"

#include <algorithm>
#include <queue>

namespace dtpasp {

Graph Graph::without(const std::set<int>& removed) const {
  Graph out;
  for (int v : verts)
    if (!removed.count(v)) out.add_vertex(v);
  for (const auto& [u, ns] : adj) {
    if (removed.count(u)) continue;
    for (int v : ns)
      if (u < v && !removed.count(v)) out.add_edge(u, v);
  }
  return out;
}

Graph Graph::induced(const std::set<int>& keep) const {
  Graph out;
  for (int v : verts)
    if (keep.count(v)) out.add_vertex(v);
  for (const auto& [u, ns] : adj) {
    if (!keep.count(u)) continue;
    for (int v : ns)
      if (u < v && keep.count(v)) out.add_edge(u, v);
  }
  return out;
}

std::vector<std::set<int>> Graph::components() const {
  std::vector<std::set<int>> out;
  std::set<int> seen;
  for (int start : verts) {
    if (seen.count(start)) continue;
    std::set<int> comp;
    std::queue<int> q;
    q.push(start);
    seen.insert(start);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      comp.insert(u);
      for (int v : neighbors(u))
        if (seen.insert(v).second) q.push(v);
    }
    out.push_back(std::move(comp));
  }
  return out;
}

Graph primal_graph(const Cnf& cnf) {
  Graph g;
  for (int v = 0; v < cnf.num_vars; ++v) g.add_vertex(v);
  for (const auto& clause : cnf.clauses) {
    std::set<int> vars;
    for (Lit l : clause) vars.insert(lit_var(l));
    g.add_clique(vars);
  }
  return g;
}

std::set<int> minimum_separator(const Graph& g, const std::set<int>& candidates,
                                const std::set<int>& targets) {
  std::vector<int> verts(g.verts.begin(), g.verts.end());
  int n = static_cast<int>(verts.size());
  std::map<int, int> index;
  for (int i = 0; i < n; ++i) index[verts[i]] = i;
  const int kInfCap = 1 << 29;
  int source = 2 * n, sink = 2 * n + 1, nodes = 2 * n + 2;
  auto in_node = [](int i) { return 2 * i; };
  auto out_node = [](int i) { return 2 * i + 1; };

  std::vector<std::vector<int>> cap(nodes, std::vector<int>(nodes, 0));
  for (int i = 0; i < n; ++i) {
    int v = verts[i];
    bool cuttable = candidates.count(v) || targets.count(v);
    cap[in_node(i)][out_node(i)] = cuttable ? 1 : kInfCap;
    for (int w : g.neighbors(v)) cap[out_node(i)][in_node(index[w])] = kInfCap;
    if (targets.count(v))
      cap[source][in_node(i)] = kInfCap;
    else
      cap[out_node(i)][sink] = kInfCap;
  }

  // Edmonds-Karp.
  while (true) {
    std::vector<int> parent(nodes, -1);
    parent[source] = source;
    std::queue<int> q;
    q.push(source);
    while (!q.empty() && parent[sink] == -1) {
      int u = q.front();
      q.pop();
      for (int v = 0; v < nodes; ++v)
        if (parent[v] == -1 && cap[u][v] > 0) {
          parent[v] = u;
          q.push(v);
        }
    }
    if (parent[sink] == -1) break;
    int aug = kInfCap;
    for (int v = sink; v != source; v = parent[v]) aug = std::min(aug, cap[parent[v]][v]);
    for (int v = sink; v != source; v = parent[v]) {
      cap[parent[v]][v] -= aug;
      cap[v][parent[v]] += aug;
    }
  }

  // Min cut: split edges from the reachable to the unreachable side.
  std::vector<bool> reach(nodes, false);
  std::queue<int> q;
  q.push(source);
  reach[source] = true;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v = 0; v < nodes; ++v)
      if (!reach[v] && cap[u][v] > 0) {
        reach[v] = true;
        q.push(v);
      }
  }
  std::set<int> sep;
  for (int i = 0; i < n; ++i)
    if (reach[in_node(i)] && !reach[out_node(i)]) sep.insert(verts[i]);
  return sep;
}

}  // namespace dtpasp
