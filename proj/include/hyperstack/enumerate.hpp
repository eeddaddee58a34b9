#pragma once

// Exhaustive enumeration of hyperelliptic strata for small genus: stable
// graphs carrying a hyperelliptic involution on one side, stable cover data
// on the other, and the bijection between them.

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hyperstack/canonical.hpp"
#include "hyperstack/cover.hpp"
#include "hyperstack/curve_graph.hpp"
#include "hyperstack/involution.hpp"

namespace hyperstack {

enum class Side { graph, cover, both };

struct EnumerationQuery {
  int genus = 2;
  int r_max = 1;
  Side side = Side::both;
};

inline constexpr int kMaxEnumerationGenus = 4;
inline constexpr int kMaxEnumerationR = 9;

// Types above A_{2g+1} cannot occur in genus g, so larger r_max change nothing.
inline int effective_r(int genus, int r_max) { return std::min(r_max, 2 * genus + 1); }

inline void require_enumerable(const EnumerationQuery& q) {
  if (q.genus < 2) throw Error("invalid-query", "enumeration needs genus >= 2");
  if (q.r_max < 0) throw Error("invalid-query", "r_max must be nonnegative");
  if (q.genus > kMaxEnumerationGenus || q.r_max > kMaxEnumerationR)
    throw Error("scale-limit", "enumeration is limited to genus <= 4 and r_max <= 9");
}

// ---------------------------------------------------------------------------
// Graph side

namespace detail {

struct PointSlot {
  int r;
  int a, b;  // b = -1 for unibranch
};

inline void for_each_genus_vector(int length, int budget, int cap,
                                  const std::function<void(const std::vector<int>&)>& emit) {
  std::vector<int> gs;
  std::function<void(int, int)> rec = [&](int left, int top) {
    if (static_cast<int>(gs.size()) == length) {
      emit(gs);
      return;
    }
    for (int x = std::min(top, left); x >= 0; --x) {
      gs.push_back(x);
      rec(left - x, x);
      gs.pop_back();
    }
  };
  rec(budget, cap);
}

}  // namespace detail

// All A_r-stable graphs of genus g with points of type <= r_max, up to
// isomorphism, sorted by canonical key. No hyperelliptic filter.
inline std::vector<CanonicalGraph> enumerate_stable_graphs(int genus, int r_max) {
  r_max = effective_r(genus, r_max);
  std::map<CanonicalKey, CanonicalGraph> seen;
  for (int nv = 1; nv <= std::max(1, 2 * genus - 2); ++nv) {
    detail::for_each_genus_vector(nv, genus, genus, [&](const std::vector<int>& gv) {
      int sum = 0;
      for (int x : gv) sum += x;
      const int delta_total = genus - sum + nv - 1;
      if (delta_total < 0) return;
      std::vector<detail::PointSlot> slots;
      for (int r = 1; r <= r_max; ++r) {
        if (r % 2 == 1) {
          for (int a = 0; a < nv; ++a)
            for (int b = a; b < nv; ++b) slots.push_back({r, a, b});
        } else {
          for (int a = 0; a < nv; ++a) slots.push_back({r, a, -1});
        }
      }
      std::vector<int> cond(static_cast<std::size_t>(nv), 0);
      std::vector<int> chosen;
      auto deficit = [&]() {
        int d = 0;
        for (int v = 0; v < nv; ++v) d += std::max(0, 3 - 2 * gv[v] - cond[v]);
        return d;
      };
      std::function<void(std::size_t, int)> rec = [&](std::size_t from, int left) {
        if (deficit() > 2 * left) return;
        if (left == 0) {
          CurveGraph g;
          for (int x : gv) g.vertices.push_back({x});
          for (int s : chosen) {
            const auto& sl = slots[s];
            Point p{sl.r, {sl.a}};
            if (sl.b >= 0) p.branches.push_back(sl.b);
            g.points.push_back(p);
          }
          if (!is_connected(g) || !is_stable(g, r_max).ok) return;
          CanonicalGraph c = canonicalize(g);
          seen.emplace(c.key, std::move(c));
          return;
        }
        for (std::size_t s = from; s < slots.size(); ++s) {
          const auto& sl = slots[s];
          const int d = SingularityType{sl.r}.delta();
          if (d > left) continue;
          const int c = SingularityType{sl.r}.conductor_degree();
          cond[sl.a] += c;
          if (sl.b >= 0) cond[sl.b] += c;
          chosen.push_back(static_cast<int>(s));
          rec(s, left - d);
          chosen.pop_back();
          cond[sl.a] -= c;
          if (sl.b >= 0) cond[sl.b] -= c;
        }
      };
      rec(0, delta_total);
    });
  }
  std::vector<CanonicalGraph> out;
  for (auto& [k, c] : seen) out.push_back(std::move(c));
  return out;
}

struct GraphStratum {
  CanonicalGraph graph;
  std::vector<DecoratedInvolution> involutions;
};

inline std::vector<GraphStratum> enumerate_hyperelliptic_graphs(int genus, int r_max) {
  std::vector<GraphStratum> out;
  for (CanonicalGraph& c : enumerate_stable_graphs(genus, r_max)) {
    auto invs = find_hyperelliptic_involutions(c.graph);
    if (!invs.empty()) out.push_back({std::move(c), std::move(invs)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cover side

namespace detail {

// Labelled trees on k vertices from Pruefer sequences.
inline std::vector<std::vector<std::pair<int, int>>> labelled_trees(int k) {
  std::vector<std::vector<std::pair<int, int>>> out;
  if (k == 1) return {{}};
  if (k == 2) return {{{0, 1}}};
  std::vector<int> seq(static_cast<std::size_t>(k - 2), 0);
  while (true) {
    std::vector<int> degree(static_cast<std::size_t>(k), 1);
    for (int x : seq) ++degree[x];
    std::vector<std::pair<int, int>> edges;
    for (int x : seq) {
      for (int leaf = 0; leaf < k; ++leaf)
        if (degree[leaf] == 1) {
          edges.emplace_back(std::min(leaf, x), std::max(leaf, x));
          --degree[leaf];
          --degree[x];
          break;
        }
    }
    int u = -1;
    for (int v = 0; v < k; ++v)
      if (degree[v] == 1) {
        if (u < 0) u = v;
        else edges.emplace_back(u, v);
      }
    out.push_back(std::move(edges));
    std::size_t i = 0;
    while (i < seq.size() && ++seq[i] == k) seq[i++] = 0;
    if (i == seq.size()) break;
  }
  return out;
}

// Partitions of n into parts in [1, cap], parts nondecreasing.
inline void for_each_partition(int n, int cap, const std::function<void(const std::vector<int>&)>& emit) {
  std::vector<int> parts;
  std::function<void(int, int)> rec = [&](int left, int low) {
    if (left == 0) {
      emit(parts);
      return;
    }
    for (int x = low; x <= std::min(cap, left); ++x) {
      parts.push_back(x);
      rec(left - x, x);
      parts.pop_back();
    }
  };
  rec(n, 1);
}

}  // namespace detail

// All valid A_r-stable cover data with -chi(L) = g, up to isomorphism,
// sorted by canonical key.
inline std::vector<CanonicalCover> enumerate_cover_data(int genus, int r_max) {
  r_max = effective_r(genus, r_max);
  std::map<CanonicalKey, CanonicalCover> seen;
  const int edge_kinds = r_max >= 3 ? 3 : 2;  // stacky, (0,0), (1,1)
  for (int k = 1; k <= std::max(1, 2 * genus - 2); ++k) {
    for (const auto& edges : detail::labelled_trees(k)) {
      std::vector<int> kinds(edges.size(), 0);
      while (true) {
        CoverData base;
        base.components = k;
        int nonstacky = 0;
        for (std::size_t i = 0; i < edges.size(); ++i) {
          base.nodes.push_back({{edges[i].first, edges[i].second}, kinds[i] == 0});
          base.node_orders.push_back(kinds[i] == 2 ? std::array<int, 2>{1, 1} : std::array<int, 2>{0, 0});
          nonstacky += kinds[i] != 0;
        }
        base.deg2L.assign(static_cast<std::size_t>(k), 0);
        base.smooth_orders.assign(static_cast<std::size_t>(k), {});
        const int target = genus - nonstacky;  // sum of g_Gamma
        std::vector<int> gc(static_cast<std::size_t>(k), -1);
        std::function<void(int, int)> assign = [&](int c, int left) {
          if (c == k) {
            if (left != 0) return;
            std::vector<int> sums(static_cast<std::size_t>(k));
            for (int i = 0; i < k; ++i) {
              const int n = stacky_count(base, i);
              base.deg2L[i] = n - 2 - 2 * gc[i];
              sums[i] = -base.deg2L[i] - plain_node_count(base, i, 1);
              if (sums[i] < 0) return;
            }
            std::function<void(int)> fill = [&](int i) {
              if (i == k) {
                if (validate_cover_data(base, genus, r_max).ok()) {
                  CanonicalCover cc = canonicalize(base);
                  seen.emplace(cc.key, std::move(cc));
                }
                return;
              }
              detail::for_each_partition(sums[i], r_max + 1, [&](const std::vector<int>& parts) {
                base.smooth_orders[i] = parts;
                fill(i + 1);
              });
              base.smooth_orders[i].clear();
            };
            fill(0);
            return;
          }
          const int remaining = k - c - 1;
          for (int x = -1; x <= genus; ++x) {
            if (left - x < -remaining) break;
            gc[c] = x;
            assign(c + 1, left - x);
          }
        };
        assign(0, target);
        std::size_t i = 0;
        while (i < kinds.size() && ++kinds[i] == edge_kinds) kinds[i++] = 0;
        if (i == kinds.size()) break;
      }
    }
  }
  std::vector<CanonicalCover> out;
  for (auto& [key, c] : seen) out.push_back(std::move(c));
  return out;
}

// ---------------------------------------------------------------------------
// Both sides

struct BijectionReport {
  std::vector<GraphStratum> graphs;
  std::vector<CanonicalCover> covers;
  // cover index -> graph index under build_cover
  std::vector<int> cover_to_graph;
  bool bijective = true;
  bool round_trips = true;
  std::vector<std::string> problems;
};

inline BijectionReport cross_check(int genus, int r_max) {
  r_max = effective_r(genus, r_max);
  BijectionReport rep;
  rep.graphs = enumerate_hyperelliptic_graphs(genus, r_max);
  rep.covers = enumerate_cover_data(genus, r_max);
  std::map<CanonicalKey, int> graph_index, cover_index;
  for (std::size_t i = 0; i < rep.graphs.size(); ++i) graph_index[rep.graphs[i].graph.key] = static_cast<int>(i);
  for (std::size_t i = 0; i < rep.covers.size(); ++i) cover_index[rep.covers[i].key] = static_cast<int>(i);
  auto problem = [&](std::string s) {
    rep.problems.push_back(std::move(s));
  };

  std::vector<int> hits(rep.graphs.size(), 0);
  for (std::size_t i = 0; i < rep.covers.size(); ++i) {
    const CoverResult built = build_cover(rep.covers[i].data, r_max);
    const CanonicalKey gk = canonical_key(built.curve);
    auto it = graph_index.find(gk);
    if (it == graph_index.end()) {
      rep.bijective = false;
      problem("cover " + std::to_string(i) + " builds a graph missing from the graph side");
      rep.cover_to_graph.push_back(-1);
    } else {
      rep.cover_to_graph.push_back(it->second);
      ++hits[it->second];
    }
    if (canonical_key(extract_cover_data(built.curve, built.involution)) != rep.covers[i].key) {
      rep.round_trips = false;
      problem("cover " + std::to_string(i) + " does not survive build then extract");
    }
  }
  for (std::size_t j = 0; j < rep.graphs.size(); ++j) {
    if (hits[j] != 1) {
      rep.bijective = false;
      problem("graph " + std::to_string(j) + " is hit " + std::to_string(hits[j]) + " times");
    }
    for (const DecoratedInvolution& inv : rep.graphs[j].involutions) {
      const CoverData d = extract_cover_data(rep.graphs[j].graph.graph, inv);
      auto it = cover_index.find(canonical_key(d));
      if (it == cover_index.end()) {
        rep.round_trips = false;
        problem("graph " + std::to_string(j) + " extracts to cover data missing from the cover side");
        continue;
      }
      const CoverResult back = build_cover(d, r_max);
      if (canonicalize(back.curve, back.involution).key != canonicalize(rep.graphs[j].graph.graph, inv).key) {
        rep.round_trips = false;
        problem("graph " + std::to_string(j) + " does not survive extract then build");
      }
    }
  }
  return rep;
}

}  // namespace hyperstack
