#include "dtpasp/compile.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_map>

#include "dtpasp/completion.hpp"
#include "dtpasp/graph.hpp"
#include "dtpasp/stable.hpp"
#include "dtpasp/treedecomp.hpp"

namespace dtpasp {

namespace {

// Residual CNFs are stored flat: the literals of every clause back to
// back, each clause terminated by a 0 (never a valid literal). The single
// buffer keeps per-node work allocation-free and doubles as the cache-key
// image.
struct Flat {
  std::vector<Lit> data;
  bool empty() const { return data.empty(); }
};

// Total order on literals grouping the two polarities of a variable.
inline bool lit_less(Lit a, Lit b) {
  return std::pair(lit_var(a), a) < std::pair(lit_var(b), b);
}

// Sorts literals within clauses, drops duplicate literals and tautological
// clauses, then sorts the clause list and drops duplicate clauses.
void canonicalize(Flat& f) {
  std::vector<Lit>& d = f.data;
  // Pass 1: per-clause sort plus in-place compaction (separators kept).
  // Scratch buffers are reused across calls; no use spans a recursive call.
  static thread_local std::vector<std::pair<std::uint32_t, std::uint32_t>> ranges;
  ranges.clear();
  std::size_t w = 0, begin = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] != 0) continue;
    std::sort(d.begin() + begin, d.begin() + i, lit_less);
    std::size_t clause_start = w;
    bool tautology = false;
    for (std::size_t j = begin; j < i; ++j) {
      if (j > begin && d[j] == d[j - 1]) continue;
      if (j > begin && d[j] == -d[j - 1]) tautology = true;
      d[w++] = d[j];
    }
    if (tautology) {
      w = clause_start;
    } else {
      ranges.push_back({static_cast<std::uint32_t>(clause_start), static_cast<std::uint32_t>(w)});
      d[w++] = 0;
    }
    begin = i + 1;
  }
  d.resize(w);

  auto range_less = [&](std::pair<std::uint32_t, std::uint32_t> a,
                        std::pair<std::uint32_t, std::uint32_t> b) {
    const Lit* pa = d.data() + a.first;
    const Lit* ea = d.data() + a.second;
    const Lit* pb = d.data() + b.first;
    const Lit* eb = d.data() + b.second;
    for (; pa != ea && pb != eb; ++pa, ++pb)
      if (*pa != *pb) return lit_less(*pa, *pb);
    return pa == ea && pb != eb;
  };
  // Fast path: the clause list is usually already strictly sorted (children
  // inherit most of the parent's canonical order), so only reorder when a
  // neighbouring pair is out of order or duplicated.
  bool sorted = true;
  for (std::size_t k = 1; k < ranges.size() && sorted; ++k)
    sorted = range_less(ranges[k - 1], ranges[k]);
  if (sorted) return;

  // Pass 2: order the clause list and drop duplicates.
  static thread_local std::vector<std::uint32_t> index;
  index.assign(ranges.size(), 0);
  for (std::uint32_t i = 0; i < index.size(); ++i) index[i] = i;
  auto clause_less = [&](std::uint32_t a, std::uint32_t b) {
    return range_less(ranges[a], ranges[b]);
  };
  std::sort(index.begin(), index.end(), clause_less);
  static thread_local std::vector<Lit> out;
  out.clear();
  out.reserve(w);
  for (std::size_t k = 0; k < index.size(); ++k) {
    if (k > 0 && !clause_less(index[k - 1], index[k])) continue;  // duplicate clause
    auto [b, e] = ranges[index[k]];
    out.insert(out.end(), d.begin() + b, d.begin() + e);
    out.push_back(0);
  }
  d.swap(out);
}

// Applies every pending unit clause in one in-place rebuild per round;
// returns false on a conflict. Forced literals are appended to `forced`.
bool propagate_units(Flat& f, std::vector<Lit>& forced) {
  std::vector<Lit>& d = f.data;
  static thread_local std::vector<Lit> units;
  for (;;) {
    units.clear();
    std::size_t begin = 0;
    for (std::size_t i = 0; i < d.size(); ++i)
      if (d[i] == 0) {
        if (i == begin + 1) units.push_back(d[begin]);
        begin = i + 1;
      }
    if (units.empty()) return true;
    std::sort(units.begin(), units.end());
    units.erase(std::unique(units.begin(), units.end()), units.end());
    for (Lit l : units)
      if (std::binary_search(units.begin(), units.end(), -l)) return false;
    forced.insert(forced.end(), units.begin(), units.end());

    std::size_t w = 0;
    begin = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (d[i] != 0) continue;
      bool satisfied = false;
      for (std::size_t j = begin; j < i && !satisfied; ++j)
        satisfied = std::binary_search(units.begin(), units.end(), d[j]);
      if (!satisfied) {
        std::size_t clause_start = w;
        for (std::size_t j = begin; j < i; ++j)
          if (!std::binary_search(units.begin(), units.end(), -d[j])) d[w++] = d[j];
        if (w == clause_start) return false;  // empty clause
        d[w++] = 0;
      }
      begin = i + 1;
    }
    d.resize(w);
  }
}

class Builder {
 public:
  Builder(const Cnf& cnf, const CompileOptions& opt) : opt_(opt) {
    c_.num_vars = cnf.num_vars;
    c_.nodes.push_back({CircuitNode::Kind::False});
    c_.nodes.push_back({CircuitNode::Kind::True});
    position_.assign(cnf.num_vars, INT_MAX);
    for (std::size_t i = 0; i < opt.order.size(); ++i)
      if (opt.order[i] >= 0 && opt.order[i] < cnf.num_vars)
        position_[opt.order[i]] = static_cast<int>(i);
    full_mask_ = cnf.num_vars >= 64 ? ~std::uint64_t{0}
                                    : (std::uint64_t{1} << cnf.num_vars) - 1;
  }

  Circuit run(const Cnf& cnf) {
    if (cnf.contradiction) {
      c_.root = 0;
      return std::move(c_);
    }
    Flat f;
    for (const auto& clause : cnf.clauses) {
      f.data.insert(f.data.end(), clause.begin(), clause.end());
      f.data.push_back(0);
    }
    c_.root = build(std::move(f), {});
    return std::move(c_);
  }

 private:
  int add_node(CircuitNode n) {
    if (c_.nodes.size() >= opt_.max_nodes)
      throw ResourceLimitError("compiled circuit exceeds " + std::to_string(opt_.max_nodes) +
                               " nodes");
    c_.nodes.push_back(std::move(n));
    return static_cast<int>(c_.nodes.size()) - 1;
  }

  int literal_node(Lit l) {
    auto it = literal_cache_.find(l);
    if (it != literal_cache_.end()) return it->second;
    CircuitNode n;
    n.kind = CircuitNode::Kind::Literal;
    n.lit = l;
    n.vars = std::uint64_t{1} << lit_var(l);
    int id = add_node(std::move(n));
    literal_cache_[l] = id;
    return id;
  }

  int make_and(std::vector<int> children) {
    std::vector<int> kept;
    for (int ch : children) {
      if (ch == 0) return 0;
      if (ch == 1) continue;
      if (c_.nodes[ch].kind == CircuitNode::Kind::And) {
        for (int g : c_.nodes[ch].children) kept.push_back(g);
      } else {
        kept.push_back(ch);
      }
    }
    if (kept.empty()) return 1;
    if (kept.size() == 1) return kept[0];
    CircuitNode n;
    n.kind = CircuitNode::Kind::And;
    n.children = std::move(kept);
    for (int ch : n.children) n.vars |= c_.nodes[ch].vars;
    return add_node(std::move(n));
  }

  int var_tier(int v) const {
    std::uint64_t bit = std::uint64_t{1} << v;
    if (opt_.outer_set & bit) return 0;
    if (opt_.outer_middle_set & bit) return 1;
    return 2;
  }

  // `pending` holds forced literals from later phases whose emission is
  // deferred: a literal placed beside a subtree that still branches on
  // earlier-phase variables would apply its weight once globally instead
  // of inside each branch, so such literals ride down the recursion and
  // surface only where no earlier-phase variable remains unresolved.
  int build(Flat f, std::vector<Lit> pending) {
    canonicalize(f);
    std::sort(pending.begin(), pending.end());
    // Cache key: the canonical byte image plus the pending section behind a
    // second separator (0 never occurs as a literal).
    std::string key;
    key.reserve((f.data.size() + 1 + pending.size()) * sizeof(Lit));
    key.append(reinterpret_cast<const char*>(f.data.data()), f.data.size() * sizeof(Lit));
    Lit sep = 0;
    key.append(reinterpret_cast<const char*>(&sep), sizeof(Lit));
    key.append(reinterpret_cast<const char*>(pending.data()), pending.size() * sizeof(Lit));
    if (auto it = cache_.find(key); it != cache_.end()) {
      release_buf(std::move(f.data));
      return it->second;
    }

    std::vector<Lit> forced;
    bool conflict = !propagate_units(f, forced);

    int result;
    if (conflict) {
      result = 0;
    } else {
      forced.insert(forced.end(), pending.begin(), pending.end());
      std::uint64_t present = 0;
      for (Lit l : f.data)
        if (l != 0) present |= std::uint64_t{1} << lit_var(l);
      int phase = (present & opt_.outer_set)          ? 0
                  : (present & opt_.outer_middle_set) ? 1
                                                      : 2;
      std::vector<Lit> emit, defer;
      for (Lit l : forced)
        (var_tier(lit_var(l)) <= phase ? emit : defer).push_back(l);

      std::vector<int> children;
      for (Lit l : emit) children.push_back(literal_node(l));
      if (!f.empty()) {
        auto parts = split_components(f);
        if (parts.size() >= 2) {
          // Deferred literals attach to the part that still carries
          // later-phase variables (at most one by the splitting rule); if
          // every part is pure current-phase, nothing below branches on an
          // earlier phase relative to the deferred literals, so they may
          // surface here.
          std::uint64_t phase_set = phase == 0   ? opt_.outer_set
                                    : phase == 1 ? opt_.outer_middle_set
                                                 : ~std::uint64_t{0};
          for (auto& part : parts) {
            if (!defer.empty() && (part.vars & ~phase_set) != 0) {
              children.push_back(build(std::move(part.f), std::move(defer)));
              defer.clear();
            } else {
              children.push_back(build(std::move(part.f), {}));
            }
          }
        } else {
          children.push_back(branch(std::move(f), std::move(defer)));
          defer.clear();
        }
      }
      for (Lit l : defer) children.push_back(literal_node(l));
      result = make_and(std::move(children));
    }
    cache_.emplace(std::move(key), result);
    release_buf(std::move(f.data));
    return result;
  }

  int branch(Flat f, std::vector<Lit> pending) {
    std::uint64_t present = 0;
    for (Lit l : f.data)
      if (l != 0) present |= std::uint64_t{1} << lit_var(l);
    int var = -1;
    for (std::uint64_t m = present; m; m &= m - 1) {
      int v = std::countr_zero(m);
      if (var == -1 || position_[v] < position_[var]) var = v;
    }
    // Build each cofactor directly from the shared residual (one pass, no
    // intermediate copy). Returns false in `ok` on an empty clause.
    auto cofactor = [&](Lit l, bool& ok) {
      Flat out;
      out.data = acquire_buf();
      out.data.reserve(f.data.size());
      ok = true;
      std::size_t begin = 0, clause_start = 0;
      bool satisfied = false;
      for (std::size_t i = 0; i < f.data.size(); ++i) {
        Lit x = f.data[i];
        if (x == 0) {
          if (satisfied) {
            out.data.resize(clause_start);
          } else if (out.data.size() == clause_start) {
            ok = false;
            return out;
          } else {
            out.data.push_back(0);
          }
          clause_start = out.data.size();
          satisfied = false;
          begin = i + 1;
          continue;
        }
        if (x == l)
          satisfied = true;
        else if (x != -l)
          out.data.push_back(x);
      }
      (void)begin;
      return out;
    };
    bool hi_ok = false, lo_ok = false;
    Flat hi = cofactor(var + 1, hi_ok);
    Flat lo = cofactor(-(var + 1), lo_ok);
    release_buf(std::move(f.data));
    if (!hi_ok) release_buf(std::move(hi.data));
    if (!lo_ok) release_buf(std::move(lo.data));
    int hi_node = hi_ok ? build(std::move(hi), pending) : 0;
    int lo_node = lo_ok ? build(std::move(lo), std::move(pending)) : 0;
    if (hi_node == lo_node) return hi_node;
    CircuitNode n;
    n.kind = CircuitNode::Kind::Decision;
    n.var = var;
    n.children = {hi_node, lo_node};
    n.vars = (std::uint64_t{1} << var) | c_.nodes[hi_node].vars | c_.nodes[lo_node].vars;
    return add_node(std::move(n));
  }

  struct Part {
    Flat f;
    std::uint64_t vars = 0;
  };

  // Connected components of the residual; while outer-phase variables
  // remain only pure outer components may separate, and analogously for
  // the middle phase, so and-children never mix the phases.
  std::vector<Part> split_components(const Flat& f) {
    const std::vector<Lit>& d = f.data;
    // Clause ranges.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> ranges;
    std::size_t begin = 0;
    for (std::size_t i = 0; i < d.size(); ++i)
      if (d[i] == 0) {
        ranges.push_back({static_cast<std::uint32_t>(begin), static_cast<std::uint32_t>(i)});
        begin = i + 1;
      }
    int m = static_cast<int>(ranges.size());
    std::vector<int> parent(m);
    for (int i = 0; i < m; ++i) parent[i] = i;
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    int var_owner[64];
    std::fill(std::begin(var_owner), std::end(var_owner), -1);
    std::uint64_t present = 0;
    for (int i = 0; i < m; ++i)
      for (std::uint32_t j = ranges[i].first; j < ranges[i].second; ++j) {
        int v = lit_var(d[j]);
        present |= std::uint64_t{1} << v;
        if (var_owner[v] < 0)
          var_owner[v] = i;
        else
          parent[find(i)] = find(var_owner[v]);
      }

    std::vector<int> part_of(m, -1);
    std::vector<Part> groups;
    for (int i = 0; i < m; ++i) {
      int r = find(i);
      if (part_of[r] < 0) {
        part_of[r] = static_cast<int>(groups.size());
        groups.emplace_back();
        groups.back().f.data = acquire_buf();
      }
      Part& g = groups[part_of[r]];
      for (std::uint32_t j = ranges[i].first; j < ranges[i].second; ++j) {
        g.f.data.push_back(d[j]);
        g.vars |= std::uint64_t{1} << lit_var(d[j]);
      }
      g.f.data.push_back(0);
    }
    // An empty result tells the caller to keep working on `f` whole.
    if (groups.size() <= 1) {
      for (auto& g : groups) release_buf(std::move(g.f.data));
      groups.clear();
      return groups;
    }

    bool outer_phase = (present & opt_.outer_set) != 0;
    bool middle_phase = !outer_phase && (present & opt_.outer_middle_set) != 0;
    auto splittable = [&](std::uint64_t vars) {
      if (outer_phase) return (vars & ~opt_.outer_set) == 0;
      if (middle_phase) return (vars & ~opt_.outer_middle_set) == 0;
      return true;
    };

    std::vector<Part> parts;
    Part rest;
    for (auto& g : groups) {
      if (splittable(g.vars)) {
        parts.push_back(std::move(g));
      } else {
        if (rest.f.empty()) rest.f.data = acquire_buf();
        rest.f.data.insert(rest.f.data.end(), g.f.data.begin(), g.f.data.end());
        rest.vars |= g.vars;
        release_buf(std::move(g.f.data));
      }
    }
    if (!rest.f.empty()) parts.push_back(std::move(rest));
    if (parts.size() <= 1) {
      for (auto& p : parts) release_buf(std::move(p.f.data));
      parts.clear();
    }
    return parts;
  }

  // Retired literal buffers, reused to keep the hot path off the allocator.
  std::vector<Lit> acquire_buf() {
    if (buf_pool_.empty()) return {};
    std::vector<Lit> v = std::move(buf_pool_.back());
    buf_pool_.pop_back();
    v.clear();
    return v;
  }
  void release_buf(std::vector<Lit>&& v) {
    if (v.capacity() > 0) buf_pool_.push_back(std::move(v));
  }

  const CompileOptions& opt_;
  Circuit c_;
  std::uint64_t full_mask_ = 0;
  std::vector<int> position_;
  std::unordered_map<std::string, int> cache_;
  std::map<Lit, int> literal_cache_;
  std::vector<std::vector<Lit>> buf_pool_;
};

}  // namespace

Circuit compile_cnf(const Cnf& cnf, const CompileOptions& opt) {
  if (cnf.num_vars > 64)
    throw ResourceLimitError("circuit compilation supports at most 64 variables, got " +
                             std::to_string(cnf.num_vars));
  return Builder(cnf, opt).run(cnf);
}

unsigned long long count_models(const Circuit& c) {
  std::vector<unsigned long long> count(c.nodes.size(), 0);
  for (std::size_t i = 0; i < c.nodes.size(); ++i) {
    const CircuitNode& n = c.nodes[i];
    switch (n.kind) {
      case CircuitNode::Kind::False: count[i] = 0; break;
      case CircuitNode::Kind::True:
      case CircuitNode::Kind::Literal: count[i] = 1; break;
      case CircuitNode::Kind::And: {
        unsigned long long prod = 1;
        for (int ch : n.children) prod *= count[ch];
        count[i] = prod;
        break;
      }
      case CircuitNode::Kind::Decision: {
        std::uint64_t rest = n.vars & ~(std::uint64_t{1} << n.var);
        auto side = [&](int ch) {
          int missing = std::popcount(rest & ~c.nodes[ch].vars);
          return count[ch] << missing;
        };
        count[i] = side(n.children[0]) + side(n.children[1]);
        break;
      }
    }
  }
  int missing = c.num_vars - std::popcount(c.nodes[c.root].vars);
  return count[c.root] << missing;
}

bool audit_phase_purity(const Circuit& c, std::uint64_t outer_set,
                        std::uint64_t outer_middle_set, std::string* why) {
  auto fail = [&](std::size_t node, const char* what) {
    if (why) *why = std::string(what) + " at node " + std::to_string(node);
    return false;
  };
  for (std::uint64_t set : {outer_set, outer_middle_set}) {
    auto mixed = [&](std::uint64_t vars) { return (vars & set) != 0 && (vars & ~set) != 0; };
    for (std::size_t i = 0; i < c.nodes.size(); ++i) {
      const CircuitNode& n = c.nodes[i];
      if (n.kind == CircuitNode::Kind::And) {
        int mixed_children = 0;
        for (int ch : n.children)
          if (mixed(c.nodes[ch].vars)) ++mixed_children;
        if (mixed_children > 1) return fail(i, "and-node with two phase-mixing children");
        if (mixed_children == 1)
          for (int ch : n.children)
            if (!mixed(c.nodes[ch].vars) && (c.nodes[ch].vars & ~set) != 0)
              return fail(i, "late-phase sibling next to a phase-mixing child");
      } else if (n.kind == CircuitNode::Kind::Decision) {
        // Each branch acts as and(literal, child).
        for (int ch : n.children)
          if (mixed(c.nodes[ch].vars) && ((std::uint64_t{1} << n.var) & set) == 0)
            return fail(i, "late-phase decision variable above a phase-mixing branch");
      }
    }
  }
  return true;
}

std::string to_nnf_format(const Circuit& c) {
  std::vector<std::string> lines;
  std::size_t edges = 0;
  std::map<Lit, int> lit_lines;
  auto lit_line = [&](Lit l) {
    auto it = lit_lines.find(l);
    if (it != lit_lines.end()) return it->second;
    lines.push_back("L " + std::to_string(l));
    lit_lines[l] = static_cast<int>(lines.size()) - 1;
    return lit_lines[l];
  };
  std::vector<int> line_of(c.nodes.size(), -1);
  for (std::size_t i = 0; i < c.nodes.size(); ++i) {
    const CircuitNode& n = c.nodes[i];
    switch (n.kind) {
      case CircuitNode::Kind::False:
        lines.push_back("O 0 0");
        break;
      case CircuitNode::Kind::True:
        lines.push_back("A 0");
        break;
      case CircuitNode::Kind::Literal:
        line_of[i] = lit_line(n.lit);
        continue;
      case CircuitNode::Kind::And: {
        std::string s = "A " + std::to_string(n.children.size());
        for (int ch : n.children) {
          s += " " + std::to_string(line_of[ch]);
          ++edges;
        }
        lines.push_back(std::move(s));
        break;
      }
      case CircuitNode::Kind::Decision: {
        int hi = static_cast<int>(lines.size());
        lines.push_back("A 2 " + std::to_string(lit_line(n.var + 1)) + " " +
                        std::to_string(line_of[n.children[0]]));
        int lo = static_cast<int>(lines.size());
        lines.push_back("A 2 " + std::to_string(lit_line(-(n.var + 1))) + " " +
                        std::to_string(line_of[n.children[1]]));
        lines.push_back("O " + std::to_string(n.var + 1) + " 2 " + std::to_string(hi) + " " +
                        std::to_string(lo));
        edges += 6;
        break;
      }
    }
    line_of[i] = static_cast<int>(lines.size()) - 1;
  }
  std::ostringstream out;
  out << "nnf " << lines.size() << " " << edges << " " << c.num_vars << "\n";
  for (const auto& l : lines) out << l << "\n";
  return out.str();
}

namespace {

// Lazily tiered value: known tiers are inner (0), middle (1), outer (2);
// kTrue/kFalse stand for the multiplicative/additive neutrals of whichever
// tier they eventually meet.
struct Tagged {
  static constexpr int kTrue = 3, kFalse = 4;
  int tier = kTrue;
  InnerValue iv;
  MiddleValue mv;
  OuterValue ov;
};

class Evaluator {
 public:
  explicit Evaluator(const Amc3Instance& inst) : inst_(inst) {}

  OuterValue run(const Circuit& c) {
    std::vector<Tagged> value(c.nodes.size());
    for (std::size_t i = 0; i < c.nodes.size(); ++i) {
      const CircuitNode& n = c.nodes[i];
      switch (n.kind) {
        case CircuitNode::Kind::False: value[i] = Tagged{Tagged::kFalse, {}, {}, {}}; break;
        case CircuitNode::Kind::True: value[i] = Tagged{Tagged::kTrue, {}, {}, {}}; break;
        case CircuitNode::Kind::Literal:
          value[i] = weight(lit_var(n.lit), lit_sign(n.lit));
          break;
        case CircuitNode::Kind::And: {
          std::vector<Tagged> factors;
          for (int ch : n.children) factors.push_back(value[ch]);
          value[i] = product(std::move(factors));
          break;
        }
        case CircuitNode::Kind::Decision: {
          std::uint64_t rest = n.vars & ~(std::uint64_t{1} << n.var);
          auto side = [&](bool sign, int ch) {
            std::vector<Tagged> factors{weight(n.var, sign), value[ch]};
            for (std::uint64_t m = rest & ~c.nodes[ch].vars; m; m &= m - 1)
              factors.push_back(weight_sum(std::countr_zero(m)));
            return product(std::move(factors));
          };
          // The deselected branch goes first so value ties prefer the
          // strategy without the decision, matching enumeration.
          value[i] = plus(side(false, n.children[1]), side(true, n.children[0]));
          break;
        }
      }
    }
    std::vector<Tagged> factors{value[c.root]};
    for (int v = 0; v < c.num_vars; ++v)
      if (!(c.nodes[c.root].vars >> v & 1)) factors.push_back(weight_sum(v));
    return promote(product(std::move(factors)), 2).ov;
  }

 private:
  Tagged weight(int var, bool positive) const {
    Tagged t;
    switch (inst_.tiers[var]) {
      case VarTier::Inner:
        t.tier = 0;
        t.iv = inst_.weights.inner[var][positive];
        break;
      case VarTier::Middle:
        t.tier = 1;
        t.mv = inst_.weights.middle[var][positive];
        break;
      case VarTier::Outer:
        t.tier = 2;
        t.ov = inst_.weights.outer[var][positive];
        break;
    }
    return t;
  }

  // Both polarities summed: the value of a variable left free by a branch.
  Tagged weight_sum(int var) const {
    Tagged a = weight(var, false), b = weight(var, true);
    Tagged t;
    t.tier = a.tier;
    switch (a.tier) {
      case 0: t.iv = inner_plus(a.iv, b.iv); break;
      case 1: t.mv = middle_plus(a.mv, b.mv); break;
      case 2: t.ov = outer_plus(a.ov, b.ov); break;
    }
    return t;
  }

  Tagged promote(Tagged t, int tier) const {
    if (t.tier == Tagged::kTrue) {
      t.tier = tier;
      switch (tier) {
        case 0: t.iv = inner_one(); break;
        case 1: t.mv = middle_one(); break;
        case 2: t.ov = outer_one(); break;
      }
      return t;
    }
    if (t.tier == Tagged::kFalse) {
      t.tier = tier;
      switch (tier) {
        case 0: t.iv = inner_zero(); break;
        case 1: t.mv = middle_zero(); break;
        case 2: t.ov = outer_zero(inst_.all_decisions); break;
      }
      return t;
    }
    while (t.tier < tier) {
      if (t.tier == 0) {
        t.mv = transform_im(t.iv);
        t.tier = 1;
      } else {
        t.ov = transform_mo(t.mv);
        t.tier = 2;
      }
    }
    return t;
  }

  // Multiplies in ascending tier order: the middle-to-outer transformation
  // forgets the probability component, so all middle-tier mass along a
  // branch has to be combined before a single promotion to the outer tier
  // (and likewise inner before middle).
  Tagged product(std::vector<Tagged> factors) const {
    for (const Tagged& t : factors)
      if (t.tier == Tagged::kFalse) return Tagged{Tagged::kFalse, {}, {}, {}};
    std::stable_sort(factors.begin(), factors.end(),
                     [](const Tagged& a, const Tagged& b) { return a.tier < b.tier; });
    Tagged acc{Tagged::kTrue, {}, {}, {}};
    for (const Tagged& t : factors) acc = times(acc, t);
    return acc;
  }

  Tagged times(Tagged a, Tagged b) const {
    if (a.tier == Tagged::kFalse || b.tier == Tagged::kFalse)
      return Tagged{Tagged::kFalse, {}, {}, {}};
    if (a.tier == Tagged::kTrue) return b;
    if (b.tier == Tagged::kTrue) return a;
    int tier = std::max(a.tier, b.tier);
    a = promote(a, tier);
    b = promote(b, tier);
    switch (tier) {
      case 0: a.iv = inner_times(a.iv, b.iv); break;
      case 1: a.mv = middle_times(a.mv, b.mv); break;
      default: a.ov = outer_times(a.ov, b.ov); break;
    }
    return a;
  }

  Tagged plus(Tagged a, Tagged b) const {
    if (a.tier == Tagged::kFalse) return b;
    if (b.tier == Tagged::kFalse) return a;
    // Both operands carry a literal weight factor, so a bare neutral can
    // only appear on one side; default it to the other side's tier.
    if (a.tier == Tagged::kTrue) a = promote(a, b.tier == Tagged::kTrue ? 0 : b.tier);
    if (b.tier == Tagged::kTrue) b = promote(b, a.tier);
    int tier = std::max(a.tier, b.tier);
    a = promote(a, tier);
    b = promote(b, tier);
    switch (tier) {
      case 0: a.iv = inner_plus(a.iv, b.iv); break;
      case 1: a.mv = middle_plus(a.mv, b.mv); break;
      default: a.ov = outer_plus(a.ov, b.ov); break;
    }
    return a;
  }

  const Amc3Instance& inst_;
};

}  // namespace

OuterValue eval_circuit_3amc(const Circuit& c, const Amc3Instance& inst) {
  return Evaluator(inst).run(c);
}

Amc3Solution solve_amc3(const GroundProgram& p) {
  CompletionResult comp = to_cnf(p);
  const Cnf& cnf = comp.cnf;
  if (cnf.num_vars > 64)
    throw ResourceLimitError("circuit pipeline supports at most 64 completion variables, got " +
                             std::to_string(cnf.num_vars));
  if (p.decisions.size() > 60)
    throw ResourceLimitError("circuit pipeline supports at most 60 decision atoms");

  Amc3Instance inst;
  inst.cnf = cnf;
  inst.tiers = tier_partition(p, cnf.num_vars);
  inst.weights = tier_weights(p, cnf.num_vars);
  inst.all_decisions = p.decisions.empty()
                           ? 0
                           : (std::uint64_t{1} << p.decisions.size()) - 1;

  std::set<int> xo(p.decisions.begin(), p.decisions.end());
  std::set<int> xm;
  for (const auto& [a, prob] : p.prob_facts) xm.insert(a);
  std::set<int> utility_vars;
  for (const auto& [a, r] : p.utilities) utility_vars.insert(a);

  std::vector<bool> base_o(cnf.num_vars, false);
  for (int v : xo) base_o[v] = true;
  std::vector<bool> base_om = base_o;
  for (int v : xm) base_om[v] = true;
  std::vector<bool> closure_o =
      definable_from(cnf, base_o, DefinabilityMode::Syntactic, comp.defs);
  std::vector<bool> closure_om =
      definable_from(cnf, base_om, DefinabilityMode::Syntactic, comp.defs);

  // Outer-definable utility carriers stay out of the outer phase: deciding
  // them there would push their reward through the middle-to-outer
  // transformation, which forgets the consistent probability mass.
  std::set<int> def_o, def_om;
  for (int v = 0; v < cnf.num_vars; ++v) {
    if (inst.tiers[v] != VarTier::Inner) continue;
    if (closure_o[v] && !utility_vars.count(v)) def_o.insert(v);
    if (closure_om[v]) def_om.insert(v);
  }

  Graph graph = primal_graph(cnf);
  Amc3Decomposition dec = amc3_decomposition(graph, xo, xm, def_o, def_om);
  std::string why;
  if (!validate_amc3(graph, dec, xo, xm, def_o, def_om, &why))
    throw ProgramError("internal error: split decomposition audit failed: " + why);

  CompileOptions copt;
  copt.order = dec.order;
  for (int v : xo) copt.outer_set |= std::uint64_t{1} << v;
  for (int v : def_o) copt.outer_set |= std::uint64_t{1} << v;
  copt.outer_middle_set = copt.outer_set;
  for (int v : xm) copt.outer_middle_set |= std::uint64_t{1} << v;
  for (int v : def_om) copt.outer_middle_set |= std::uint64_t{1} << v;

  Circuit circuit = compile_cnf(cnf, copt);
  if (!audit_phase_purity(circuit, copt.outer_set, copt.outer_middle_set, &why))
    throw ProgramError("internal error: circuit phase audit failed: " + why);

  OuterValue value = eval_circuit_3amc(circuit, inst);

  Amc3Solution sol;
  sol.circuit_nodes = static_cast<int>(circuit.nodes.size());
  sol.decomposition_width = dec.td.width();
  UtilityReport& rep = sol.report;
  if (value.lo_val > -kInf) {
    rep.has_admissible_strategy = true;
    rep.best_lower_value = value.lo_val;
    rep.best_lower_strategy = value.lo_set;
    rep.best_upper_value = value.hi_val;
    rep.best_upper_strategy = value.hi_set;
  }
  return sol;
}

Amc3Solution solve_amc3(const Program& p) { return solve_amc3(ground(p)); }

}  // namespace dtpasp
