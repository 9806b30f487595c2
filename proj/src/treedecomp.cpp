#include "dtpasp/treedecomp.hpp"

#include <algorithm>
#include <climits>
#include <queue>
#include <sstream>
#include <tuple>

namespace dtpasp {

namespace {

std::vector<std::vector<int>> tree_adjacency(const TreeDecomposition& td) {
  std::vector<std::vector<int>> adj(td.bags.size());
  for (auto [a, b] : td.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& ns : adj) std::sort(ns.begin(), ns.end());
  return adj;
}

// Restores the connected-occurrence property after gluing subtrees: each
// vertex is added to every bag on the tree paths linking its occurrences.
void repair_connectivity(TreeDecomposition& td) {
  if (td.bags.empty()) return;
  auto adj = tree_adjacency(td);
  std::set<int> all_vertices;
  for (const auto& b : td.bags) all_vertices.insert(b.begin(), b.end());
  for (int v : all_vertices) {
    std::vector<int> occ;
    for (std::size_t i = 0; i < td.bags.size(); ++i)
      if (td.bags[i].count(v)) occ.push_back(static_cast<int>(i));
    if (occ.size() <= 1) continue;
    int root = occ[0];
    std::vector<int> parent(td.bags.size(), -1);
    parent[root] = root;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int w : adj[u])
        if (parent[w] == -1) {
          parent[w] = u;
          q.push(w);
        }
    }
    for (int s : occ)
      for (int cur = s; cur != root; cur = parent[cur]) td.bags[cur].insert(v);
  }
}

int append(TreeDecomposition& out, const TreeDecomposition& part) {
  int offset = static_cast<int>(out.bags.size());
  for (const auto& b : part.bags) out.bags.push_back(b);
  for (auto [a, b] : part.edges) out.edges.push_back({a + offset, b + offset});
  return offset;
}

int bag_containing(const TreeDecomposition& td, int offset, int count, const std::set<int>& s) {
  for (int i = offset; i < offset + count; ++i)
    if (std::includes(td.bags[i].begin(), td.bags[i].end(), s.begin(), s.end())) return i;
  return offset;  // s is empty or not present; any bag of the part works then
}

}  // namespace

bool validate_decomposition(const Graph& g, const TreeDecomposition& td, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  std::size_t n = td.bags.size();
  if (n == 0) return fail("no bags");
  if (td.edges.size() + 1 != n) return fail("edge count does not match a tree");
  auto adj = tree_adjacency(td);
  // Connectedness (with the edge count above, this settles tree shape).
  {
    std::vector<bool> seen(n, false);
    std::queue<int> q;
    q.push(0);
    seen[0] = true;
    std::size_t cnt = 0;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      ++cnt;
      for (int w : adj[u])
        if (!seen[w]) {
          seen[w] = true;
          q.push(w);
        }
    }
    if (cnt != n) return fail("bag graph is not connected");
  }
  for (int v : g.verts) {
    std::vector<int> occ;
    for (std::size_t i = 0; i < n; ++i)
      if (td.bags[i].count(v)) occ.push_back(static_cast<int>(i));
    if (occ.empty()) return fail("vertex " + std::to_string(v) + " not covered");
    std::set<int> occ_set(occ.begin(), occ.end());
    std::set<int> seen{occ[0]};
    std::queue<int> q;
    q.push(occ[0]);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int w : adj[u])
        if (occ_set.count(w) && seen.insert(w).second) q.push(w);
    }
    if (seen.size() != occ_set.size())
      return fail("occurrences of vertex " + std::to_string(v) + " are disconnected");
  }
  for (const auto& [u, ns] : g.adj)
    for (int v : ns) {
      if (u > v) continue;
      bool covered = false;
      for (const auto& b : td.bags)
        if (b.count(u) && b.count(v)) {
          covered = true;
          break;
        }
      if (!covered)
        return fail("edge (" + std::to_string(u) + "," + std::to_string(v) + ") not covered");
    }
  return true;
}

TreeDecomposition tree_decomposition(const Graph& g) {
  TreeDecomposition td;
  if (g.verts.empty()) {
    td.bags.push_back({});
    return td;
  }
  std::map<int, std::set<int>> adj = g.adj;
  std::vector<std::pair<int, std::set<int>>> elim;  // vertex, neighborhood at elimination
  while (!adj.empty()) {
    int best = -1;
    long best_fill = -1;
    for (const auto& [v, ns] : adj) {
      long fill = 0;
      for (auto it = ns.begin(); it != ns.end(); ++it)
        for (auto jt = std::next(it); jt != ns.end(); ++jt)
          if (!adj[*it].count(*jt)) ++fill;
      if (best == -1 || fill < best_fill) {
        best = v;
        best_fill = fill;
      }
    }
    std::set<int> ns = adj[best];
    elim.push_back({best, ns});
    for (int a : ns)
      for (int b : ns)
        if (a < b) {
          adj[a].insert(b);
          adj[b].insert(a);
        }
    for (int a : ns) adj[a].erase(best);
    adj.erase(best);
  }
  std::map<int, int> position;
  for (std::size_t i = 0; i < elim.size(); ++i) position[elim[i].first] = static_cast<int>(i);
  for (std::size_t i = 0; i < elim.size(); ++i) {
    std::set<int> bag = elim[i].second;
    bag.insert(elim[i].first);
    td.bags.push_back(std::move(bag));
  }
  for (std::size_t i = 0; i < elim.size(); ++i) {
    int parent = -1;
    for (int u : elim[i].second) {
      int p = position[u];
      if (parent == -1 || p < parent) parent = p;
    }
    if (parent == -1 && i + 1 < elim.size()) parent = static_cast<int>(i) + 1;
    if (parent != -1) td.edges.push_back({static_cast<int>(i), parent});
  }
  // A graph whose last elimination step had no neighbors leaves isolated
  // bags chained above; if several chains remain (multiple components whose
  // final bags had no parent), the loop above already chained them via the
  // i+1 fallback, except possibly the very last bag, which needs no edge.
  return td;
}

Amc3Decomposition amc3_decomposition(const Graph& g, const std::set<int>& xo,
                                     const std::set<int>& xm, const std::set<int>& def_o,
                                     const std::set<int>& def_om) {
  Amc3Decomposition d;
  d.sep_outer = minimum_separator(g, def_o, xo);

  Graph g_rest = g.without(d.sep_outer);
  std::set<int> v_outer;
  for (const auto& comp : g_rest.components()) {
    bool touches = std::any_of(comp.begin(), comp.end(), [&](int v) { return xo.count(v) > 0; });
    if (touches) v_outer.insert(comp.begin(), comp.end());
  }
  std::set<int> outer_part = v_outer;
  outer_part.insert(d.sep_outer.begin(), d.sep_outer.end());
  Graph g_outer = g.induced(outer_part);
  g_outer.add_clique(d.sep_outer);
  TreeDecomposition td_outer = tree_decomposition(g_outer);

  Graph g_w = g_rest.without(v_outer);
  d.sep_middle = minimum_separator(g_w, def_om, xm);
  std::set<int> v_middle;
  for (const auto& comp : g_w.without(d.sep_middle).components()) {
    bool touches = std::any_of(comp.begin(), comp.end(), [&](int v) { return xm.count(v) > 0; });
    if (touches) v_middle.insert(comp.begin(), comp.end());
  }
  std::set<int> middle_part = v_middle;
  middle_part.insert(d.sep_middle.begin(), d.sep_middle.end());
  middle_part.insert(d.sep_outer.begin(), d.sep_outer.end());
  Graph g_middle = g.induced(middle_part);
  g_middle.add_clique(d.sep_outer);
  g_middle.add_clique(d.sep_middle);
  TreeDecomposition td_middle = tree_decomposition(g_middle);

  std::set<int> removed = v_outer;
  removed.insert(v_middle.begin(), v_middle.end());
  Graph g_inner = g.without(removed);
  g_inner.add_clique(d.sep_outer);
  g_inner.add_clique(d.sep_middle);
  TreeDecomposition td_inner = tree_decomposition(g_inner);

  // Combine: [outer part] - [outer witness] - [middle part] - [middle
  // witness] - [inner part]. The middle witness carries both separators so
  // it also cuts paths that skirt around the middle part.
  std::set<int> middle_witness_bag = d.sep_middle;
  middle_witness_bag.insert(d.sep_outer.begin(), d.sep_outer.end());

  TreeDecomposition& td = d.td;
  int off_o = append(td, td_outer);
  int attach_o = bag_containing(td, off_o, static_cast<int>(td_outer.bags.size()), d.sep_outer);
  d.outer_witness = static_cast<int>(td.bags.size());
  td.bags.push_back(d.sep_outer);
  td.edges.push_back({attach_o, d.outer_witness});

  int off_m = append(td, td_middle);
  td.edges.push_back(
      {d.outer_witness,
       bag_containing(td, off_m, static_cast<int>(td_middle.bags.size()), d.sep_outer)});
  d.middle_witness = static_cast<int>(td.bags.size());
  td.bags.push_back(middle_witness_bag);
  td.edges.push_back(
      {bag_containing(td, off_m, static_cast<int>(td_middle.bags.size()), d.sep_middle),
       d.middle_witness});

  int off_i = append(td, td_inner);
  td.edges.push_back(
      {d.middle_witness,
       bag_containing(td, off_i, static_cast<int>(td_inner.bags.size()), d.sep_middle)});

  repair_connectivity(td);

  for (int v : g.verts) d.region[v] = 2;
  for (int v : v_middle) d.region[v] = 1;
  for (int v : d.sep_middle) d.region[v] = 1;
  for (int v : v_outer) d.region[v] = 0;
  for (int v : d.sep_outer) d.region[v] = 0;

  // Variable order: tree preorder position of the first bag containing the
  // vertex, stably sorted so the outer part comes first, then the middle.
  std::map<int, int> first_pos;
  {
    auto adj = tree_adjacency(td);
    std::vector<bool> seen_bag(td.bags.size(), false);
    std::vector<int> stack{0};
    int step = 0;
    while (!stack.empty()) {
      int b = stack.back();
      stack.pop_back();
      if (seen_bag[b]) continue;
      seen_bag[b] = true;
      for (int v : td.bags[b]) first_pos.try_emplace(v, step++);
      for (auto it = adj[b].rbegin(); it != adj[b].rend(); ++it)
        if (!seen_bag[*it]) stack.push_back(*it);
    }
  }
  d.order.assign(g.verts.begin(), g.verts.end());
  std::stable_sort(d.order.begin(), d.order.end(), [&](int a, int b) {
    auto key = [&](int v) {
      auto it = first_pos.find(v);
      return std::tuple(d.region.at(v), it == first_pos.end() ? INT_MAX : it->second, v);
    };
    return key(a) < key(b);
  });
  return d;
}

bool validate_amc3(const Graph& g, const Amc3Decomposition& d, const std::set<int>& xo,
                   const std::set<int>& xm, const std::set<int>& def_o,
                   const std::set<int>& def_om, std::string* why) {
  if (!validate_decomposition(g, d.td, why)) return false;
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (d.outer_witness < 0 || d.outer_witness >= static_cast<int>(d.td.bags.size()))
    return fail("missing outer witness bag");
  if (d.middle_witness < 0 || d.middle_witness >= static_cast<int>(d.td.bags.size()))
    return fail("missing middle witness bag");
  const auto& chi_o = d.td.bags[d.outer_witness];
  const auto& chi_m = d.td.bags[d.middle_witness];
  for (int v : chi_o)
    if (!xo.count(v) && !def_o.count(v))
      return fail("outer witness bag contains vertex " + std::to_string(v) +
                  " outside the outer variables and their definable closure");
  // Outer-phase vertices (xo and its closure) are decided before the middle
  // phase starts, so they may appear in the middle witness bag as well.
  for (int v : chi_m)
    if (!xm.count(v) && !def_om.count(v) && !xo.count(v) && !def_o.count(v))
      return fail("middle witness bag contains vertex " + std::to_string(v) +
                  " outside the middle variables and the outer+middle definable closure");

  // Every path from `sources` must hit `blocked` before reaching a vertex
  // for which `is_target` holds.
  auto separated = [&](const std::set<int>& sources, const std::set<int>& blocked,
                       auto is_target) {
    std::set<int> seen;
    std::queue<int> q;
    for (int s : sources)
      if (g.verts.count(s) && !blocked.count(s) && seen.insert(s).second) q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      if (is_target(u)) return false;
      for (int w : g.neighbors(u))
        if (!blocked.count(w) && seen.insert(w).second) q.push(w);
    }
    return true;
  };
  if (!separated(xo, chi_o, [&](int v) { return !xo.count(v) && !def_o.count(v); }))
    return fail("outer witness bag does not cut all paths leaving the outer variables");
  if (!separated(xm, chi_m,
                 [&](int v) { return !xo.count(v) && !xm.count(v) && !def_om.count(v); }))
    return fail("middle witness bag does not cut all paths leaving the middle variables");
  return true;
}

std::string to_td_format(const TreeDecomposition& td, int num_vertices) {
  std::ostringstream out;
  std::size_t mx = 0;
  for (const auto& b : td.bags) mx = std::max(mx, b.size());
  out << "s td " << td.bags.size() << " " << mx << " " << num_vertices << "\n";
  for (std::size_t i = 0; i < td.bags.size(); ++i) {
    out << "b " << (i + 1);
    for (int v : td.bags[i]) out << " " << (v + 1);
    out << "\n";
  }
  for (auto [a, b] : td.edges) out << (a + 1) << " " << (b + 1) << "\n";
  return out.str();
}

}  // namespace dtpasp
