#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "dtpasp/graph.hpp"

namespace dtpasp {

struct TreeDecomposition {
  std::vector<std::set<int>> bags;
  std::vector<std::pair<int, int>> edges;  // between bag indices, forms a tree

  int width() const {
    std::size_t mx = 0;
    for (const auto& b : bags) mx = b.size() > mx ? b.size() : mx;
    return static_cast<int>(mx) - 1;
  }
};

// Vertex coverage, edge coverage, connected occurrence subtrees, and tree
// shape. On failure returns false and fills `why` when given.
bool validate_decomposition(const Graph& g, const TreeDecomposition& td,
                            std::string* why = nullptr);

// Heuristic decomposition via min-fill elimination (smallest-id tie break).
TreeDecomposition tree_decomposition(const Graph& g);

// A decomposition split into an outer, a middle and an inner part, with
// separator bags witnessing that outer variables can be decided first,
// then middle, then the rest.
struct Amc3Decomposition {
  TreeDecomposition td;
  std::set<int> sep_outer;   // subset of xo plus vars definable from xo
  std::set<int> sep_middle;  // subset of xm plus vars definable from xo+xm
  int outer_witness = -1;    // bag index whose removal separates the outer part
  int middle_witness = -1;   // likewise for the middle part
  std::map<int, int> region;  // vertex -> 0 outer part, 1 middle, 2 inner
  std::vector<int> order;     // all vertices, outer part first, then middle, then inner
};

// def_o: vertices whose value is fixed by xo (including xo itself);
// def_om: fixed by xo+xm. Both come from definability analysis; pass
// def_o = xo and def_om = xo+xm to disable it.
Amc3Decomposition amc3_decomposition(const Graph& g, const std::set<int>& xo,
                                     const std::set<int>& xm, const std::set<int>& def_o,
                                     const std::set<int>& def_om);

// Validity audit of the combined decomposition plus the witness-bag
// conditions: the outer witness is inside xo+def_o and cuts every path from
// xo to the vertices outside xo+def_o; the middle witness is inside
// xo+def_o+xm+def_om (outer-phase vertices are decided before the middle
// phase, so they may ride along) and cuts every path from xm to the
// vertices outside xo+xm+def_om.
bool validate_amc3(const Graph& g, const Amc3Decomposition& d, const std::set<int>& xo,
                   const std::set<int>& xm, const std::set<int>& def_o,
                   const std::set<int>& def_om, std::string* why = nullptr);

// ".td" line format: solution line, one bag line per bag, then tree edges
// (both 1-based).
std::string to_td_format(const TreeDecomposition& td, int num_vertices);

}  // namespace dtpasp
