#pragma once

// Canonical relabelling of graphs, graphs with involutions and cover data:
// the minimum integer key over all relabellings that respect a colour
// refinement of the vertices. Two inputs are isomorphic iff their keys
// agree.

#include <algorithm>
#include <functional>
#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "hyperstack/cover.hpp"
#include "hyperstack/curve_graph.hpp"
#include "hyperstack/involution.hpp"

namespace hyperstack {

using CanonicalKey = std::vector<int>;

namespace detail {

// Iterated colour refinement: start from `colour` and repeatedly append the
// sorted multiset of neighbour colours until the partition is stable.
inline std::vector<int> refine(std::vector<int> colour,
                               const std::vector<std::vector<std::pair<int, int>>>& adj) {
  const std::size_t n = colour.size();
  std::size_t classes = 0;
  while (true) {
    std::vector<std::vector<int>> sig(n);
    for (std::size_t v = 0; v < n; ++v) {
      std::vector<int> nb;
      for (auto [w, label] : adj[v]) {
        nb.push_back(label);
        nb.push_back(colour[w]);
      }
      // Pairs (label, colour) sorted as pairs.
      std::vector<std::pair<int, int>> pairs;
      for (std::size_t i = 0; i < nb.size(); i += 2) pairs.emplace_back(nb[i], nb[i + 1]);
      std::sort(pairs.begin(), pairs.end());
      sig[v].push_back(colour[v]);
      for (auto [a, b] : pairs) {
        sig[v].push_back(a);
        sig[v].push_back(b);
      }
    }
    std::vector<std::vector<int>> distinct = sig;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (std::size_t v = 0; v < n; ++v)
      colour[v] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), sig[v]) - distinct.begin());
    if (distinct.size() == classes) return colour;
    classes = distinct.size();
  }
}

// Enumerates every map old -> new that sends colour class k onto the k-th
// block of labels, and keeps the one with the smallest key.
template <class KeyFn>
std::pair<CanonicalKey, std::vector<int>> minimise(const std::vector<int>& colour, KeyFn key_of) {
  const int n = static_cast<int>(colour.size());
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::tie(colour[a], a) < std::tie(colour[b], b);
  });
  std::vector<std::pair<int, int>> blocks;
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && colour[order[j]] == colour[order[i]]) ++j;
    blocks.emplace_back(i, j);
    i = j;
  }
  CanonicalKey best;
  std::vector<int> best_map;
  bool have = false;
  std::vector<int> to_new(static_cast<std::size_t>(n));
  std::function<void(std::size_t)> rec = [&](std::size_t b) {
    if (b == blocks.size()) {
      for (int i = 0; i < n; ++i) to_new[order[i]] = i;
      CanonicalKey k = key_of(to_new);
      if (!have || k < best) {
        best = std::move(k);
        best_map = to_new;
        have = true;
      }
      return;
    }
    auto [lo, hi] = blocks[b];
    std::sort(order.begin() + lo, order.begin() + hi);
    do {
      rec(b + 1);
    } while (std::next_permutation(order.begin() + lo, order.begin() + hi));
  };
  rec(0);
  return {best, best_map};
}

inline std::vector<std::vector<std::pair<int, int>>> point_adjacency(const CurveGraph& g) {
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(g.vertex_count()));
  for (const Point& p : g.points) {
    if (p.branches.size() == 2) {
      adj[p.branches[0]].emplace_back(p.branches[1], p.r);
      adj[p.branches[1]].emplace_back(p.branches[0], p.r);
    } else {
      adj[p.branches[0]].emplace_back(p.branches[0], -p.r);
    }
  }
  return adj;
}

inline std::vector<int> point_descriptor(const Point& p, const std::vector<int>& to_new) {
  int a = to_new[p.branches[0]];
  int b = p.branches.size() == 2 ? to_new[p.branches[1]] : -1;
  if (b >= 0 && b < a) std::swap(a, b);
  return {p.r, a, b};
}

inline Point point_from_descriptor(const std::vector<int>& d) {
  Point p;
  p.r = d[0];
  p.branches = {d[1]};
  if (d[2] >= 0) p.branches.push_back(d[2]);
  return p;
}

inline std::vector<int> initial_colours(const CurveGraph& g) {
  std::vector<std::tuple<int, int>> raw;
  for (int v = 0; v < g.vertex_count(); ++v)
    raw.emplace_back(g.vertices[v].geom_genus,
                     static_cast<int>(std::count(g.markings.begin(), g.markings.end(), v)));
  auto distinct = raw;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<int> colour;
  for (const auto& t : raw)
    colour.push_back(static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), t) - distinct.begin()));
  return colour;
}

inline CanonicalKey graph_key(const CurveGraph& g, const std::vector<int>& to_new) {
  const int n = g.vertex_count();
  CanonicalKey key{n, g.point_count(), static_cast<int>(g.markings.size())};
  std::vector<int> genus(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) genus[to_new[v]] = g.vertices[v].geom_genus;
  key.insert(key.end(), genus.begin(), genus.end());
  std::vector<std::vector<int>> pts;
  for (const Point& p : g.points) pts.push_back(point_descriptor(p, to_new));
  std::sort(pts.begin(), pts.end());
  for (const auto& d : pts) key.insert(key.end(), d.begin(), d.end());
  std::vector<int> marks;
  for (int m : g.markings) marks.push_back(to_new[m]);
  std::sort(marks.begin(), marks.end());
  key.insert(key.end(), marks.begin(), marks.end());
  return key;
}

}  // namespace detail

struct CanonicalGraph {
  CurveGraph graph;
  CanonicalKey key;
};

inline CanonicalGraph canonicalize(const CurveGraph& g) {
  require_valid(g);
  const auto colour = detail::refine(detail::initial_colours(g), detail::point_adjacency(g));
  auto [key, to_new] = detail::minimise(colour, [&](const std::vector<int>& m) { return detail::graph_key(g, m); });
  CanonicalGraph out;
  out.key = key;
  out.graph.vertices.resize(g.vertices.size());
  for (int v = 0; v < g.vertex_count(); ++v) out.graph.vertices[to_new[v]] = g.vertices[v];
  std::vector<std::vector<int>> pts;
  for (const Point& p : g.points) pts.push_back(detail::point_descriptor(p, to_new));
  std::sort(pts.begin(), pts.end());
  for (const auto& d : pts) out.graph.points.push_back(detail::point_from_descriptor(d));
  for (int m : g.markings) out.graph.markings.push_back(to_new[m]);
  std::sort(out.graph.markings.begin(), out.graph.markings.end());
  return out;
}

inline CanonicalKey canonical_key(const CurveGraph& g) { return canonicalize(g).key; }

// ---------------------------------------------------------------------------
// Graph with involution

struct CanonicalPair {
  CurveGraph graph;
  DecoratedInvolution involution;
  CanonicalKey key;
};

namespace detail {

// Orbit descriptors of eight entries: a fixed point is (0, point, padding,
// class) and an exchanged pair is (1, first point, second point, -1) with the
// two points sorted.
inline std::vector<std::vector<int>> orbit_descriptors(const CurveGraph& g, const DecoratedInvolution& inv,
                                                       const std::vector<int>& to_new) {
  std::vector<std::vector<int>> out;
  for (int p = 0; p < g.point_count(); ++p) {
    const int q = inv.point_map[p];
    if (q < p) continue;
    auto dp = point_descriptor(g.points[p], to_new);
    std::vector<int> d;
    if (q == p) {
      auto it = inv.fixed_points.find(p);
      d = {0};
      d.insert(d.end(), dp.begin(), dp.end());
      d.insert(d.end(), {-1, -1, -1});
      d.push_back(it == inv.fixed_points.end() ? -1 : static_cast<int>(it->second));
    } else {
      auto dq = point_descriptor(g.points[q], to_new);
      if (dq < dp) std::swap(dp, dq);
      d = {1};
      d.insert(d.end(), dp.begin(), dp.end());
      d.insert(d.end(), dq.begin(), dq.end());
      d.push_back(-1);
    }
    out.push_back(std::move(d));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline CanonicalKey pair_key(const CurveGraph& g, const DecoratedInvolution& inv, const std::vector<int>& to_new) {
  const int n = g.vertex_count();
  CanonicalKey key{n, g.point_count(), static_cast<int>(g.markings.size())};
  std::vector<std::vector<int>> vdata(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    auto& row = vdata[to_new[v]];
    row = {g.vertices[v].geom_genus, to_new[inv.vertex_map[v]], -1, 0, 0};
    if (auto it = inv.fixed_vertices.find(v); it != inv.fixed_vertices.end())
      row = {g.vertices[v].geom_genus, to_new[v], static_cast<int>(it->second.kind),
             it->second.quotient_genus, it->second.smooth_fixed};
  }
  for (const auto& row : vdata) key.insert(key.end(), row.begin(), row.end());
  for (const auto& d : orbit_descriptors(g, inv, to_new)) key.insert(key.end(), d.begin(), d.end());
  std::vector<int> marks;
  for (int m : g.markings) marks.push_back(to_new[m]);
  std::sort(marks.begin(), marks.end());
  key.insert(key.end(), marks.begin(), marks.end());
  return key;
}

}  // namespace detail

inline CanonicalPair canonicalize(const CurveGraph& g, const DecoratedInvolution& inv) {
  Verdict v = validate_involution(g, inv);
  if (!v.ok) throw Error("invalid-involution", v.reasons.front());
  auto adj = detail::point_adjacency(g);
  std::vector<int> colour = detail::initial_colours(g);
  // Fold the orbit structure into the starting colours.
  for (int i = 0; i < g.vertex_count(); ++i) {
    int tag = inv.vertex_map[i] == i ? 0 : 1;
    if (auto it = inv.fixed_vertices.find(i); it != inv.fixed_vertices.end())
      tag = 2 + static_cast<int>(it->second.kind) + 2 * it->second.smooth_fixed + 1000 * it->second.quotient_genus;
    colour[i] = colour[i] * 1000003 + tag;
  }
  for (int i = 0; i < g.vertex_count(); ++i)
    if (inv.vertex_map[i] != i) adj[i].emplace_back(inv.vertex_map[i], 1 << 20);
  colour = detail::refine(colour, adj);
  auto [key, to_new] =
      detail::minimise(colour, [&](const std::vector<int>& m) { return detail::pair_key(g, inv, m); });

  CanonicalPair out;
  out.key = key;
  const int n = g.vertex_count();
  out.graph.vertices.resize(static_cast<std::size_t>(n));
  out.involution.vertex_map.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    out.graph.vertices[to_new[v]] = g.vertices[v];
    out.involution.vertex_map[to_new[v]] = to_new[inv.vertex_map[v]];
    if (auto it = inv.fixed_vertices.find(v); it != inv.fixed_vertices.end())
      out.involution.fixed_vertices[to_new[v]] = it->second;
  }
  for (const auto& d : detail::orbit_descriptors(g, inv, to_new)) {
    const int p = out.graph.point_count();
    if (d[0] == 0) {
      out.graph.points.push_back(detail::point_from_descriptor({d[1], d[2], d[3]}));
      out.involution.point_map.push_back(p);
      if (d[7] >= 0) out.involution.fixed_points[p] = static_cast<InvolutionClass>(d[7]);
    } else {
      out.graph.points.push_back(detail::point_from_descriptor({d[1], d[2], d[3]}));
      out.graph.points.push_back(detail::point_from_descriptor({d[4], d[5], d[6]}));
      out.involution.point_map.push_back(p + 1);
      out.involution.point_map.push_back(p);
    }
  }
  for (int m : g.markings) out.graph.markings.push_back(to_new[m]);
  std::sort(out.graph.markings.begin(), out.graph.markings.end());
  return out;
}

// ---------------------------------------------------------------------------
// Cover data

struct CanonicalCover {
  CoverData data;
  CanonicalKey key;
};

namespace detail {

inline std::vector<int> cover_node_descriptor(const CoverData& d, std::size_t i, const std::vector<int>& to_new) {
  int a = to_new[d.nodes[i].ends[0]], b = to_new[d.nodes[i].ends[1]];
  int oa = d.node_orders[i][0], ob = d.node_orders[i][1];
  if (b < a) {
    std::swap(a, b);
    std::swap(oa, ob);
  }
  return {a, b, d.nodes[i].stacky ? 1 : 0, oa, ob};
}

inline CanonicalKey cover_key(const CoverData& d, const std::vector<int>& to_new) {
  CanonicalKey key{d.components};
  std::vector<std::vector<int>> comp(static_cast<std::size_t>(d.components));
  for (int c = 0; c < d.components; ++c) {
    auto orders = d.smooth_orders[c];
    std::sort(orders.begin(), orders.end());
    auto& row = comp[to_new[c]];
    row = {d.deg2L[c], static_cast<int>(orders.size())};
    row.insert(row.end(), orders.begin(), orders.end());
  }
  for (const auto& row : comp) key.insert(key.end(), row.begin(), row.end());
  std::vector<std::vector<int>> nodes;
  for (std::size_t i = 0; i < d.nodes.size(); ++i) nodes.push_back(cover_node_descriptor(d, i, to_new));
  std::sort(nodes.begin(), nodes.end());
  for (const auto& nd : nodes) key.insert(key.end(), nd.begin(), nd.end());
  return key;
}

}  // namespace detail

inline CanonicalCover canonicalize(const CoverData& d) {
  require_cover_structure(d);
  std::vector<std::vector<int>> raw;
  for (int c = 0; c < d.components; ++c) {
    auto orders = d.smooth_orders[c];
    std::sort(orders.begin(), orders.end());
    std::vector<int> row{d.deg2L[c]};
    row.insert(row.end(), orders.begin(), orders.end());
    raw.push_back(std::move(row));
  }
  auto distinct = raw;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<int> colour;
  for (const auto& row : raw)
    colour.push_back(static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), row) - distinct.begin()));
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(d.components));
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    const int label = d.nodes[i].stacky ? 2 : d.node_orders[i][0];
    adj[d.nodes[i].ends[0]].emplace_back(d.nodes[i].ends[1], label);
    adj[d.nodes[i].ends[1]].emplace_back(d.nodes[i].ends[0], label);
  }
  colour = detail::refine(colour, adj);
  auto [key, to_new] = detail::minimise(colour, [&](const std::vector<int>& m) { return detail::cover_key(d, m); });

  CanonicalCover out;
  out.key = key;
  CoverData& c = out.data;
  c.components = d.components;
  c.deg2L.resize(static_cast<std::size_t>(d.components));
  c.smooth_orders.resize(static_cast<std::size_t>(d.components));
  for (int k = 0; k < d.components; ++k) {
    c.deg2L[to_new[k]] = d.deg2L[k];
    c.smooth_orders[to_new[k]] = d.smooth_orders[k];
    std::sort(c.smooth_orders[to_new[k]].begin(), c.smooth_orders[to_new[k]].end());
  }
  std::vector<std::vector<int>> nodes;
  for (std::size_t i = 0; i < d.nodes.size(); ++i) nodes.push_back(detail::cover_node_descriptor(d, i, to_new));
  std::sort(nodes.begin(), nodes.end());
  for (const auto& nd : nodes) {
    c.nodes.push_back({{nd[0], nd[1]}, nd[2] == 1});
    c.node_orders.push_back({nd[3], nd[4]});
  }
  return out;
}

inline CanonicalKey canonical_key(const CoverData& d) { return canonicalize(d).key; }

}  // namespace hyperstack
