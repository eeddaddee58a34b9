#pragma once

// Builders, independent oracles and random generators shared by the unit
// tests and the acceptance run.

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "hyperstack/hyperstack.hpp"

namespace hstest {

using namespace hyperstack;

struct P {
  int r;
  std::vector<int> branches;
};

inline CurveGraph make_graph(std::vector<int> genera, std::vector<P> points, std::vector<int> markings = {}) {
  CurveGraph g;
  for (int x : genera) g.vertices.push_back({x});
  for (auto& p : points) g.points.push_back({p.r, p.branches});
  g.markings = std::move(markings);
  return g;
}

// Two elliptic components through one separating node.
inline CurveGraph elliptic_pair() { return make_graph({1, 1}, {{1, {0, 1}}}); }

// Its involution: elliptic involution on both sides, node of class c2.
inline DecoratedInvolution elliptic_pair_involution() {
  DecoratedInvolution inv;
  inv.vertex_map = {0, 1};
  inv.point_map = {0};
  inv.fixed_vertices[0] = {FixedKind::nontrivial, 0, 3};
  inv.fixed_vertices[1] = {FixedKind::nontrivial, 0, 3};
  inv.fixed_points[0] = InvolutionClass::c2;
  return inv;
}

inline CoverData single_component(int deg2L, std::vector<int> orders) {
  CoverData d;
  d.components = 1;
  d.deg2L = {deg2L};
  d.smooth_orders = {std::move(orders)};
  return d;
}

// ---------------------------------------------------------------------------
// Genus by iterated partial normalization. Points are normalized one at a
// time in `order`; each step adds h for A_{2h}, h + 1 for A_{2h+1} whose
// partial normalization stays connected locally, and h when it separates.
// The fully normalized curve contributes the sum of geometric genera.
inline int genus_by_normalization(const CurveGraph& g, const std::vector<int>& order) {
  std::vector<bool> alive(g.points.size(), true);
  auto reach = [&](int from) {
    std::vector<int> seen(g.vertices.size(), 0);
    std::vector<int> stack{from};
    seen[from] = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (std::size_t p = 0; p < g.points.size(); ++p) {
        if (!alive[p] || g.points[p].branches.size() != 2) continue;
        const int a = g.points[p].branches[0], b = g.points[p].branches[1];
        const int other = a == v ? b : (b == v ? a : -1);
        if (other >= 0 && !seen[other]) {
          seen[other] = 1;
          stack.push_back(other);
        }
      }
    }
    return seen;
  };
  int genus = 0;
  for (int p : order) {
    const Point& pt = g.points[p];
    const int h = pt.r / 2;
    alive[p] = false;
    if (pt.r % 2 == 0) {
      genus += h;
      continue;
    }
    const bool stays_connected = reach(pt.branches[0])[pt.branches[1]] != 0;
    genus += stays_connected ? h + 1 : h;
  }
  for (const Vertex& v : g.vertices) genus += v.geom_genus;
  return genus;
}

// ---------------------------------------------------------------------------
// Random connected graphs: a random spanning tree of two-branch points plus
// extra points of any type, self-incident or not.
inline CurveGraph random_connected_graph(std::mt19937_64& rng, int max_vertices, int max_r, int max_genus = 3,
                                         int max_extra = 4) {
  std::uniform_int_distribution<int> nv(1, max_vertices);
  const int n = nv(rng);
  std::uniform_int_distribution<int> genus(0, max_genus);
  std::uniform_int_distribution<int> odd_r(0, (max_r - 1) / 2);
  std::uniform_int_distribution<int> any_r(1, max_r);
  std::uniform_int_distribution<int> vertex(0, n - 1);
  std::uniform_int_distribution<int> extra(0, max_extra);
  CurveGraph g;
  for (int v = 0; v < n; ++v) g.vertices.push_back({genus(rng)});
  for (int v = 1; v < n; ++v) {
    std::uniform_int_distribution<int> parent(0, v - 1);
    g.points.push_back({2 * odd_r(rng) + 1, {parent(rng), v}});
  }
  for (int e = extra(rng); e > 0; --e) {
    const int r = any_r(rng);
    if (r % 2 == 0) g.points.push_back({r, {vertex(rng)}});
    else g.points.push_back({r, {vertex(rng), vertex(rng)}});
  }
  std::shuffle(g.points.begin(), g.points.end(), rng);
  return g;
}

// Random relabelling of vertices and points.
struct Relabelling {
  std::vector<int> vertex;  // old -> new
  std::vector<int> point;
};

inline Relabelling random_relabelling(std::mt19937_64& rng, int vertices, int points) {
  Relabelling r;
  r.vertex.resize(vertices);
  r.point.resize(points);
  std::iota(r.vertex.begin(), r.vertex.end(), 0);
  std::iota(r.point.begin(), r.point.end(), 0);
  std::shuffle(r.vertex.begin(), r.vertex.end(), rng);
  std::shuffle(r.point.begin(), r.point.end(), rng);
  return r;
}

inline CurveGraph relabel(const CurveGraph& g, const Relabelling& r, std::mt19937_64& rng) {
  CurveGraph out;
  out.vertices.resize(g.vertices.size());
  out.points.resize(g.points.size());
  for (std::size_t v = 0; v < g.vertices.size(); ++v) out.vertices[r.vertex[v]] = g.vertices[v];
  for (std::size_t p = 0; p < g.points.size(); ++p) {
    Point q = g.points[p];
    for (int& b : q.branches) b = r.vertex[b];
    if (rng() & 1) std::reverse(q.branches.begin(), q.branches.end());
    out.points[r.point[p]] = q;
  }
  for (int m : g.markings) out.markings.push_back(r.vertex[m]);
  return out;
}

inline DecoratedInvolution relabel(const DecoratedInvolution& inv, const Relabelling& r) {
  DecoratedInvolution out;
  out.vertex_map.resize(inv.vertex_map.size());
  out.point_map.resize(inv.point_map.size());
  for (std::size_t v = 0; v < inv.vertex_map.size(); ++v) out.vertex_map[r.vertex[v]] = r.vertex[inv.vertex_map[v]];
  for (std::size_t p = 0; p < inv.point_map.size(); ++p) out.point_map[r.point[p]] = r.point[inv.point_map[p]];
  for (const auto& [v, f] : inv.fixed_vertices) out.fixed_vertices[r.vertex[v]] = f;
  for (const auto& [p, c] : inv.fixed_points) out.fixed_points[r.point[p]] = c;
  return out;
}

// Random tree of rational components with a line bundle of the given degrees.
inline TreeBundle random_tree_bundle(std::mt19937_64& rng, int max_components, int min_degree, int max_degree) {
  std::uniform_int_distribution<int> nc(1, max_components);
  std::uniform_int_distribution<int> deg(min_degree, max_degree);
  TreeBundle b;
  b.components = nc(rng);
  for (int c = 0; c < b.components; ++c) b.degree.push_back(deg(rng));
  for (int c = 1; c < b.components; ++c) {
    std::uniform_int_distribution<int> parent(0, c - 1);
    b.edges.emplace_back(parent(rng), c);
  }
  return b;
}

// Distinct random rational coordinates for every node end, per component.
inline NodePlacement random_placement(std::mt19937_64& rng, const TreeBundle& b) {
  std::uniform_int_distribution<int> num(-60, 60), den(1, 9);
  NodePlacement at(b.edges.size());
  std::vector<std::set<Rational>> used(static_cast<std::size_t>(b.components));
  for (std::size_t e = 0; e < b.edges.size(); ++e) {
    const int ends[2] = {b.edges[e].first, b.edges[e].second};
    for (int s = 0; s < 2; ++s) {
      Rational x;
      do x = Rational(num(rng)) / Rational(den(rng));
      while (used[ends[s]].count(x));
      used[ends[s]].insert(x);
      at[e][s] = x;
    }
  }
  return at;
}

}  // namespace hstest
