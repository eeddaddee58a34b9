#pragma once

// Decorated dual graphs of A_r-prestable curves. Vertices are irreducible
// components with the geometric genus of their normalization, points are the
// singular points with their A_r type and branch incidences, markings are
// smooth marked points.

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "hyperstack/error.hpp"
#include "hyperstack/local_sing.hpp"

namespace hyperstack {

struct Vertex {
  int geom_genus = 0;
};

struct Point {
  int r = 1;
  // Vertex index of each branch: one entry for even r, two for odd r. Both
  // entries may coincide (a self-incident node, tacnode, ...).
  std::vector<int> branches;

  SingularityType type() const noexcept { return {r}; }
  bool joins_distinct() const noexcept {
    return branches.size() == 2 && branches[0] != branches[1];
  }
};

struct CurveGraph {
  std::vector<Vertex> vertices;
  std::vector<Point> points;
  std::vector<int> markings;  // vertex of each marking

  int vertex_count() const noexcept { return static_cast<int>(vertices.size()); }
  int point_count() const noexcept { return static_cast<int>(points.size()); }
};

// A nonempty set of vertices, kept sorted.
struct Subcurve {
  std::vector<int> vertices;

  Subcurve() = default;
  explicit Subcurve(std::vector<int> vs) : vertices(std::move(vs)) {
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  }
  bool contains(int v) const {
    return std::binary_search(vertices.begin(), vertices.end(), v);
  }
  friend bool operator==(const Subcurve&, const Subcurve&) = default;
};

namespace detail {

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

}  // namespace detail

// Structural validity: branch counts match parity, indices resolve, genera
// are nonnegative. Connectivity is reported separately.
inline Verdict validate_structure(const CurveGraph& g) {
  Verdict v;
  if (g.vertices.empty()) v.fail("graph has no vertices");
  for (int i = 0; i < g.vertex_count(); ++i)
    if (g.vertices[i].geom_genus < 0)
      v.fail("vertex " + std::to_string(i) + ": negative geometric genus");
  for (int i = 0; i < g.point_count(); ++i) {
    const Point& p = g.points[i];
    const std::string tag = "point " + std::to_string(i);
    if (p.r < 1) {
      v.fail(tag + ": singular points need r >= 1");
      continue;
    }
    if (static_cast<int>(p.branches.size()) != p.type().branch_count())
      v.fail(tag + ": A_" + std::to_string(p.r) + " needs " +
             std::to_string(p.type().branch_count()) + " branch(es)");
    for (int b : p.branches)
      if (b < 0 || b >= g.vertex_count()) v.fail(tag + ": unknown vertex " + std::to_string(b));
  }
  for (int i = 0; i < static_cast<int>(g.markings.size()); ++i)
    if (g.markings[i] < 0 || g.markings[i] >= g.vertex_count())
      v.fail("marking " + std::to_string(i) + ": unknown vertex");
  return v;
}

// Connected components of the vertex set, ignoring the points in `cut`.
inline std::vector<int> component_labels(const CurveGraph& g, const std::set<int>& cut = {}) {
  detail::DisjointSets ds(g.vertex_count());
  for (int i = 0; i < g.point_count(); ++i) {
    if (cut.count(i)) continue;
    const Point& p = g.points[i];
    if (p.branches.size() == 2) ds.unite(p.branches[0], p.branches[1]);
  }
  std::vector<int> label(static_cast<std::size_t>(g.vertex_count()), -1);
  int next = 0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    int root = ds.find(v);
    if (label[root] < 0) label[root] = next++;
    label[v] = label[root];
  }
  return label;
}

inline int component_count(const CurveGraph& g, const std::set<int>& cut = {}) {
  auto labels = component_labels(g, cut);
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

inline bool is_connected(const CurveGraph& g) { return component_count(g) == 1; }

inline Verdict validate_graph(const CurveGraph& g) {
  Verdict v = validate_structure(g);
  if (v.ok && !is_connected(g)) v.fail("graph is disconnected");
  return v;
}

inline void require_valid(const CurveGraph& g) {
  Verdict v = validate_structure(g);
  if (!v.ok) throw Error("invalid-graph", v.reasons.front());
}

inline void require_connected(const CurveGraph& g) {
  require_valid(g);
  if (!is_connected(g)) throw Error("disconnected-graph", "graph is disconnected");
}

// 1 - chi(O) of the curve: sum of geometric genera plus delta invariants
// minus (#vertices - 1). Connected input only.
inline int arithmetic_genus(const CurveGraph& g) {
  require_connected(g);
  int total = 1 - g.vertex_count();
  for (const Vertex& v : g.vertices) total += v.geom_genus;
  for (const Point& p : g.points) total += p.type().delta();
  return total;
}

inline void require_vertex(const CurveGraph& g, int v) {
  if (v < 0 || v >= g.vertex_count())
    throw Error("unknown-vertex", "no vertex " + std::to_string(v));
}

// Degree of the dualizing sheaf on the component: 2g~ - 2 plus the conductor
// degree of every branch through it, plus markings when `marked`.
inline int omega_degree(const CurveGraph& g, int v, bool marked = false) {
  require_vertex(g, v);
  int deg = 2 * g.vertices[v].geom_genus - 2;
  for (const Point& p : g.points)
    for (int b : p.branches)
      if (b == v) deg += p.type().conductor_degree();
  if (marked) deg += static_cast<int>(std::count(g.markings.begin(), g.markings.end(), v));
  return deg;
}

// A_{r_max}-stability of the pointed curve: every point of type <= r_max and
// omega(markings) of positive degree on every component.
inline Verdict is_stable(const CurveGraph& g, int r_max) {
  Verdict v = validate_graph(g);
  if (!v.ok) return v;
  for (int i = 0; i < g.point_count(); ++i)
    if (g.points[i].r > r_max)
      v.fail("point " + std::to_string(i) + ": A_" + std::to_string(g.points[i].r) +
             " exceeds r_max " + std::to_string(r_max));
  for (int i = 0; i < g.vertex_count(); ++i) {
    int d = omega_degree(g, i, true);
    if (d <= 0)
      v.fail("vertex " + std::to_string(i) + ": omega degree " + std::to_string(d) + " is not positive");
  }
  return v;
}

inline bool is_separating_point(const CurveGraph& g, int point) {
  const Point& p = g.points.at(static_cast<std::size_t>(point));
  if (!p.joins_distinct()) return false;
  return component_count(g, {point}) > component_count(g);
}

inline std::vector<int> separating_points(const CurveGraph& g) {
  require_connected(g);
  std::vector<int> out;
  for (int i = 0; i < g.point_count(); ++i)
    if (is_separating_point(g, i)) out.push_back(i);
  return out;
}

inline void require_subcurve(const CurveGraph& g, const Subcurve& s) {
  if (s.vertices.empty()) throw Error("improper-subcurve", "subcurve is empty");
  for (int v : s.vertices)
    if (v < 0 || v >= g.vertex_count())
      throw Error("improper-subcurve", "subcurve names unknown vertex " + std::to_string(v));
}

inline Subcurve complement(const CurveGraph& g, const Subcurve& s) {
  require_subcurve(g, s);
  std::vector<int> rest;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (!s.contains(v)) rest.push_back(v);
  if (rest.empty()) throw Error("improper-subcurve", "subcurve is the whole curve");
  return Subcurve(std::move(rest));
}

// Length of the scheme-theoretic intersection of two disjoint subcurves: an
// A_{2h-1} point with one branch on each side contributes h.
inline int intersection_length(const CurveGraph& g, const Subcurve& a, const Subcurve& b) {
  require_subcurve(g, a);
  require_subcurve(g, b);
  for (int v : a.vertices)
    if (b.contains(v)) throw Error("improper-subcurve", "subcurves share vertex " + std::to_string(v));
  int len = 0;
  for (const Point& p : g.points) {
    if (p.branches.size() != 2) continue;
    int u = p.branches[0], w = p.branches[1];
    if ((a.contains(u) && b.contains(w)) || (a.contains(w) && b.contains(u)))
      len += p.type().intersection_length();
  }
  return len;
}

// Points with every branch inside the subcurve.
inline std::vector<int> internal_points(const CurveGraph& g, const Subcurve& s) {
  std::vector<int> out;
  for (int i = 0; i < g.point_count(); ++i) {
    const auto& br = g.points[i].branches;
    if (std::all_of(br.begin(), br.end(), [&](int b) { return s.contains(b); })) out.push_back(i);
  }
  return out;
}

// Arithmetic genus 1 - chi(O) of the subcurve with its reduced structure.
// Disconnected subcurves are allowed: two disjoint lines have genus -1.
inline int subcurve_genus(const CurveGraph& g, const Subcurve& s) {
  require_subcurve(g, s);
  int total = 1 - static_cast<int>(s.vertices.size());
  for (int v : s.vertices) total += g.vertices[v].geom_genus;
  for (int i : internal_points(g, s)) total += g.points[i].type().delta();
  return total;
}

// The subcurve as a graph of its own, vertices renumbered in sorted order.
// Points meeting the complement become smooth and are dropped.
inline CurveGraph induced_graph(const CurveGraph& g, const Subcurve& s) {
  require_subcurve(g, s);
  std::vector<int> index(static_cast<std::size_t>(g.vertex_count()), -1);
  CurveGraph out;
  for (int v : s.vertices) {
    index[v] = out.vertex_count();
    out.vertices.push_back(g.vertices[v]);
  }
  for (int i : internal_points(g, s)) {
    Point p = g.points[i];
    for (int& b : p.branches) b = index[b];
    out.points.push_back(std::move(p));
  }
  for (int m : g.markings)
    if (index[m] >= 0) out.markings.push_back(index[m]);
  return out;
}

inline bool subcurve_connected(const CurveGraph& g, const Subcurve& s) {
  return is_connected(induced_graph(g, s));
}

}  // namespace hyperstack
