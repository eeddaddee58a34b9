#pragma once

// Cohomology and decomposition computations on curve graphs and on trees of
// rational curves: exact h^0/h^1 of multidegree line bundles, the
// A_1-separating decomposition, the decomposition around an exchanged pair
// of rational components, the canonical base locus, 2-pointed genus-1
// shapes and the Hom(Omega, L) dimensions on the quotient.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hyperstack/curve_graph.hpp"
#include "hyperstack/error.hpp"
#include "hyperstack/involution.hpp"

namespace hyperstack {

using Rational = boost::multiprecision::cpp_rational;

// Rank of a dense rational matrix by fraction-exact Gaussian elimination.
inline int matrix_rank(std::vector<std::vector<Rational>> m) {
  int rank = 0;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && static_cast<std::size_t>(rank) < rows; ++c) {
    std::size_t piv = static_cast<std::size_t>(rank);
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[static_cast<std::size_t>(rank)]);
    const auto& top = m[static_cast<std::size_t>(rank)];
    for (std::size_t i = static_cast<std::size_t>(rank) + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      const Rational f = m[i][c] / top[c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * top[j];
    }
    ++rank;
  }
  return rank;
}

// A line bundle on a tree of rational curves.
struct TreeBundle {
  int components = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> degree;
};

inline Verdict validate_tree_bundle(const TreeBundle& b) {
  Verdict v;
  if (b.components < 1) v.fail("tree has no components");
  if (static_cast<int>(b.degree.size()) != b.components) v.fail("one degree per component");
  if (static_cast<int>(b.edges.size()) != b.components - 1) v.fail("a tree on k components has k-1 nodes");
  if (!v.ok) return v;
  detail::DisjointSets ds(b.components);
  for (auto [x, y] : b.edges) {
    if (x < 0 || y < 0 || x >= b.components || y >= b.components || x == y) v.fail("bad node ends");
    else if (!ds.unite(x, y)) v.fail("nodes close a cycle");
  }
  return v;
}

// Affine coordinate of each node on each of its two components, indexed
// like `edges`.
using NodePlacement = std::vector<std::array<Rational, 2>>;

// Nodes on a component sit at 0, 1, 2, ... in order of appearance.
inline NodePlacement default_placement(const TreeBundle& b) {
  NodePlacement out(b.edges.size());
  std::vector<int> next(static_cast<std::size_t>(b.components), 0);
  for (std::size_t i = 0; i < b.edges.size(); ++i) {
    out[i][0] = next[b.edges[i].first]++;
    out[i][1] = next[b.edges[i].second]++;
  }
  return out;
}

struct Cohomology {
  int h0 = 0;
  int h1 = 0;
  friend bool operator==(const Cohomology&, const Cohomology&) = default;
};

namespace detail {

inline Rational power(const Rational& x, int e) {
  Rational out = 1;
  for (int i = 0; i < e; ++i) out *= x;
  return out;
}

// Matrix of the gluing conditions s_a(n) = s_b(n) on the direct sum of
// polynomial spaces of degree <= d on each component.
inline std::vector<std::vector<Rational>> gluing_matrix(const TreeBundle& b, const NodePlacement& at,
                                                        std::vector<int>& offset) {
  offset.assign(static_cast<std::size_t>(b.components) + 1, 0);
  for (int c = 0; c < b.components; ++c) offset[c + 1] = offset[c] + std::max(0, b.degree[c] + 1);
  const int cols = offset.back();
  std::vector<std::vector<Rational>> m;
  for (std::size_t i = 0; i < b.edges.size(); ++i) {
    std::vector<Rational> row(static_cast<std::size_t>(cols));
    const int ends[2] = {b.edges[i].first, b.edges[i].second};
    for (int s = 0; s < 2; ++s) {
      const int c = ends[s];
      for (int e = 0; e <= b.degree[c]; ++e) row[offset[c] + e] += (s == 0 ? 1 : -1) * power(at[i][s], e);
    }
    m.push_back(std::move(row));
  }
  return m;
}

inline void require_tree_bundle(const TreeBundle& b, const NodePlacement& at) {
  Verdict v = validate_tree_bundle(b);
  if (!v.ok) throw Error("invalid-tree", v.reasons.front());
  if (at.size() != b.edges.size()) throw Error("invalid-tree", "placement does not match the nodes");
  for (int c = 0; c < b.components; ++c) {
    std::set<Rational> seen;
    for (std::size_t i = 0; i < b.edges.size(); ++i) {
      if (b.edges[i].first == c && !seen.insert(at[i][0]).second)
        throw Error("invalid-tree", "two nodes share a coordinate on one component");
      if (b.edges[i].second == c && !seen.insert(at[i][1]).second)
        throw Error("invalid-tree", "two nodes share a coordinate on one component");
    }
  }
}

}  // namespace detail

inline int euler_characteristic(const TreeBundle& b) {
  int chi = -static_cast<int>(b.edges.size());
  for (int d : b.degree) chi += d + 1;
  return chi;
}

inline Cohomology h0_h1(const TreeBundle& b, const NodePlacement& at) {
  detail::require_tree_bundle(b, at);
  std::vector<int> offset;
  auto m = detail::gluing_matrix(b, at, offset);
  const int h0 = offset.back() - matrix_rank(std::move(m));
  return {h0, h0 - euler_characteristic(b)};
}

inline Cohomology h0_h1(const TreeBundle& b) { return h0_h1(b, default_placement(b)); }

// Whether some global section is nonzero at the smooth point with affine
// coordinate x on the component.
inline bool evaluation_surjective(const TreeBundle& b, const NodePlacement& at, int component,
                                  const Rational& x) {
  detail::require_tree_bundle(b, at);
  if (component < 0 || component >= b.components) throw Error("invalid-tree", "unknown component");
  for (std::size_t i = 0; i < b.edges.size(); ++i)
    if ((b.edges[i].first == component && at[i][0] == x) ||
        (b.edges[i].second == component && at[i][1] == x))
      throw Error("invalid-tree", "evaluation point is a node");
  std::vector<int> offset;
  auto m = detail::gluing_matrix(b, at, offset);
  const int before = matrix_rank(m);
  std::vector<Rational> row(static_cast<std::size_t>(offset.back()));
  for (int e = 0; e <= b.degree[component]; ++e) row[offset[component] + e] = detail::power(x, e);
  m.push_back(std::move(row));
  return matrix_rank(std::move(m)) == before + 1;
}

// ---------------------------------------------------------------------------
// Decompositions

enum class DecompositionKind { a1_separating, exist_decomp };

struct DecompositionReport {
  DecompositionKind kind = DecompositionKind::a1_separating;
  std::vector<Subcurve> pieces;
  std::vector<int> genera;
  std::vector<int> joints;  // separating nodes between pieces (A_1 kind)
  int n = 0;                // exist kind: length of the intersection of the pair
  int m = 0;                // exist kind: number of invariant tails
};

inline bool is_separating_node(const CurveGraph& g, int p) {
  return g.points[p].r == 1 && is_separating_point(g, p);
}

inline DecompositionReport a1_separating_decomposition(const CurveGraph& g) {
  require_connected(g);
  DecompositionReport rep;
  std::set<int> cut;
  for (int p = 0; p < g.point_count(); ++p)
    if (is_separating_node(g, p)) cut.insert(p);
  rep.joints.assign(cut.begin(), cut.end());
  const auto labels = component_labels(g, cut);
  const int count = *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<std::vector<int>> members(static_cast<std::size_t>(count));
  for (int v = 0; v < g.vertex_count(); ++v) members[labels[v]].push_back(v);
  for (auto& vs : members) {
    rep.pieces.emplace_back(std::move(vs));
    rep.genera.push_back(subcurve_genus(g, rep.pieces.back()));
  }
  return rep;
}

struct HodgePiece {
  Subcurve piece;
  int genus = 0;
};

// H^0(omega) splits over the A_1-separating pieces, so the genera add up.
inline std::vector<HodgePiece> hodge_pieces(const CurveGraph& g) {
  const DecompositionReport rep = a1_separating_decomposition(g);
  std::vector<HodgePiece> out;
  int total = 0;
  for (std::size_t i = 0; i < rep.pieces.size(); ++i) {
    out.push_back({rep.pieces[i], rep.genera[i]});
    total += rep.genera[i];
  }
  if (total != arithmetic_genus(g))
    throw Error("internal", "piece genera do not add up to the genus");
  return out;
}

namespace detail {

inline int max_point_type(const CurveGraph& g) {
  int r = 0;
  for (const Point& p : g.points) r = std::max(r, p.r);
  return r;
}

// The involution restricted to an invariant subcurve, renumbered like
// induced_graph.
inline DecoratedInvolution restrict_involution(const CurveGraph& g, const DecoratedInvolution& inv,
                                               const Subcurve& s) {
  std::vector<int> vindex(static_cast<std::size_t>(g.vertex_count()), -1);
  int next = 0;
  for (int v : s.vertices) vindex[v] = next++;
  const std::vector<int> internal = internal_points(g, s);
  std::vector<int> pindex(static_cast<std::size_t>(g.point_count()), -1);
  for (std::size_t i = 0; i < internal.size(); ++i) pindex[internal[i]] = static_cast<int>(i);
  DecoratedInvolution out;
  for (int v : s.vertices) {
    out.vertex_map.push_back(vindex[inv.vertex_map[v]]);
    if (auto it = inv.fixed_vertices.find(v); it != inv.fixed_vertices.end())
      out.fixed_vertices[vindex[v]] = it->second;
  }
  for (int p : internal) {
    out.point_map.push_back(pindex[inv.point_map[p]]);
    if (auto it = inv.fixed_points.find(p); it != inv.fixed_points.end())
      out.fixed_points[pindex[p]] = it->second;
  }
  return out;
}

}  // namespace detail

// Decomposition of a hyperelliptic curve around two rational components
// exchanged by the involution: C = G1 u G2 u D_1 u ... u D_m where the D_i
// are the preimages of the connected pieces of the quotient away from the
// image of G1 u G2. Each defining property is checked and a failure raises
// with the clause that broke.
inline DecompositionReport exist_decomposition(const CurveGraph& g, const DecoratedInvolution& inv,
                                               int gamma1, int gamma2) {
  require_vertex(g, gamma1);
  require_vertex(g, gamma2);
  Verdict vi = validate_involution(g, inv);
  if (!vi.ok) throw Error("invalid-involution", vi.reasons.front());
  if (gamma1 == gamma2 || inv.vertex_map[gamma1] != gamma2)
    throw Error("decomposition-precondition", "the two components are not exchanged");
  if (subcurve_genus(g, Subcurve({gamma1})) != 0)
    throw Error("decomposition-precondition", "the exchanged components are not rational");
  const QuotientReport q = quotient(g, inv);
  if (!q.is_hyperelliptic) throw Error("not-hyperelliptic", "the involution is not hyperelliptic");

  auto violation = [](const std::string& clause, const std::string& what) {
    return Error("decomposition-violation", "clause " + clause + ": " + what);
  };

  DecompositionReport rep;
  rep.kind = DecompositionKind::exist_decomp;
  const Subcurve g1({gamma1}), g2({gamma2});
  rep.n = intersection_length(g, g1, g2);

  const int hub = q.vertex_images[gamma1];
  std::set<int> hub_points;
  for (int p = 0; p < q.quotient_graph.point_count(); ++p) {
    const auto& br = q.quotient_graph.points[p].branches;
    if (std::find(br.begin(), br.end(), hub) != br.end()) hub_points.insert(p);
  }
  const auto labels = component_labels(q.quotient_graph, hub_points);
  std::map<int, std::vector<int>> tails;
  for (int v = 0; v < g.vertex_count(); ++v) {
    const int z = q.vertex_images[v];
    if (z != hub) tails[labels[z]].push_back(v);
  }
  rep.m = static_cast<int>(tails.size());

  if (rep.m + rep.n < 3) throw violation("(a)", "m + n = " + std::to_string(rep.m + rep.n) + " < 3");
  const int r_max = std::max(1, detail::max_point_type(g));
  int covered = 2;
  int tail_genus = 0;
  for (auto& [label, vs] : tails) {
    Subcurve d(vs);
    covered += static_cast<int>(d.vertices.size());
    if (!(image(inv, d) == d)) throw violation("(b)", "a tail is not invariant");
    if (intersection_length(g, d, g1) != 1 || intersection_length(g, d, g2) != 1)
      throw violation("(c)", "a tail does not meet each component in length 1");
    CurveGraph tail = induced_graph(g, d);
    if (!is_connected(tail)) throw violation("(d)", "a tail is disconnected");
    for (const Point& p : g.points) {
      if (!p.joins_distinct()) continue;
      for (int s = 0; s < 2; ++s)
        if (d.contains(p.branches[s]) && (p.branches[1 - s] == gamma1 || p.branches[1 - s] == gamma2))
          tail.markings.push_back(static_cast<int>(
              std::lower_bound(d.vertices.begin(), d.vertices.end(), p.branches[s]) - d.vertices.begin()));
    }
    const int gi = arithmetic_genus(tail);
    if (gi <= 0) throw violation("(d)", "a tail has genus " + std::to_string(gi));
    if (!is_stable(tail, r_max).ok) throw violation("(d)", "a 2-pointed tail is not stable");
    const DecoratedInvolution sub = detail::restrict_involution(g, inv, d);
    if (!is_hyperelliptic(tail, sub)) throw violation("(d)", "the involution is not hyperelliptic on a tail");
    rep.pieces.push_back(d);
    rep.genera.push_back(gi);
    tail_genus += gi;
  }
  if (covered != g.vertex_count()) throw violation("(e)", "the pieces do not cover the curve");
  const int genus = arithmetic_genus(g);
  if (genus != rep.m + rep.n - 1 + tail_genus)
    throw violation("genus", "g = " + std::to_string(genus) + " but m + n - 1 + sum g_i = " +
                                 std::to_string(rep.m + rep.n - 1 + tail_genus));
  return rep;
}

// ---------------------------------------------------------------------------
// Canonical base locus

struct BaseLocus {
  std::vector<int> points;    // separating nodes
  std::vector<int> vertices;  // rational components attached only through them
};

// Rational component meeting the rest only in separating nodes.
inline bool is_type2_component(const CurveGraph& g, int v) {
  if (subcurve_genus(g, Subcurve({v})) != 0) return false;
  for (int p = 0; p < g.point_count(); ++p) {
    const Point& pt = g.points[p];
    const bool touches = std::find(pt.branches.begin(), pt.branches.end(), v) != pt.branches.end();
    if (touches && pt.joins_distinct() && !is_separating_node(g, p)) return false;
  }
  return true;
}

// Same predicate through h^0(O(p)) = 2: the component is rational and every
// connected subcurve avoiding it meets it in length at most 1.
inline bool is_type2_by_subcurves(const CurveGraph& g, int v) {
  if (subcurve_genus(g, Subcurve({v})) != 0) return false;
  const int n = g.vertex_count();
  std::vector<int> others;
  for (int w = 0; w < n; ++w)
    if (w != v) others.push_back(w);
  const std::size_t k = others.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
    std::vector<int> vs;
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1) vs.push_back(others[i]);
    Subcurve s(vs);
    if (!subcurve_connected(g, s)) continue;
    if (intersection_length(g, s, Subcurve({v})) > 1) return false;
  }
  return true;
}

inline BaseLocus canonical_base_locus(const CurveGraph& g) {
  require_connected(g);
  BaseLocus out;
  for (int p = 0; p < g.point_count(); ++p)
    if (is_separating_node(g, p)) out.points.push_back(p);
  for (int v = 0; v < g.vertex_count(); ++v) {
    const bool type2 = is_type2_component(g, v);
    if (type2 != is_type2_by_subcurves(g, v))
      throw Error("internal", "base locus criteria disagree on vertex " + std::to_string(v));
    if (type2 && g.vertex_count() > 1) out.vertices.push_back(v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// 2-pointed genus 1

enum class Genus1Shape { a, b, c, d, invalid };

inline std::string_view to_string(Genus1Shape s) {
  switch (s) {
    case Genus1Shape::a: return "a";
    case Genus1Shape::b: return "b";
    case Genus1Shape::c: return "c";
    case Genus1Shape::d: return "d";
    case Genus1Shape::invalid: return "INVALID";
  }
  return "?";
}

// Shape of a genus-1 curve with markings p1, p2 (indices into
// graph.markings). p1 == p2 stands for a single fixed smooth point, which
// only the integral shape admits.
inline Genus1Shape classify_genus1(const CurveGraph& g, int p1, int p2) {
  require_connected(g);
  const int nm = static_cast<int>(g.markings.size());
  if (p1 < 0 || p2 < 0 || p1 >= nm || p2 >= nm) throw Error("unknown-marking", "no such marking");
  if (arithmetic_genus(g) != 1) throw Error("not-genus-1", "the curve does not have genus 1");
  const int v1 = g.markings[p1], v2 = g.markings[p2];
  if (g.vertex_count() == 1) return Genus1Shape::a;
  if (p1 == p2 || g.vertex_count() != 2) return Genus1Shape::invalid;

  std::vector<int> joining;
  for (int p = 0; p < g.point_count(); ++p)
    if (g.points[p].joins_distinct()) joining.push_back(p);
  const int genus0 = subcurve_genus(g, Subcurve({0}));
  const int genus1 = subcurve_genus(g, Subcurve({1}));
  if (joining.size() == 1 && g.points[joining[0]].r == 1) {
    const int rational = genus0 == 0 ? 0 : 1;
    const int other = 1 - rational;
    if (subcurve_genus(g, Subcurve({other})) == 1 && subcurve_genus(g, Subcurve({rational})) == 0 &&
        v1 == rational && v2 == rational)
      return Genus1Shape::b;
    return Genus1Shape::invalid;
  }
  if (genus0 != 0 || genus1 != 0 || v1 == v2) return Genus1Shape::invalid;
  if (joining.size() == 2 && g.points[joining[0]].r == 1 && g.points[joining[1]].r == 1)
    return Genus1Shape::c;
  if (joining.size() == 1 && g.points[joining[0]].r == 3) return Genus1Shape::d;
  return Genus1Shape::invalid;
}

// ---------------------------------------------------------------------------
// Hom(Omega, L) on the quotient

struct HomComponent {
  int component = 0;   // quotient vertex
  int h = 0;           // arithmetic genus of the preimage
  int n = 0;           // quotient nodes on the component
  int n_internal = 0;  // those not under a separating node
  int untwisted = 0;   // dim Hom(Omega_G, L_G)
  int piece = 0;       // dim Hom(Omega_G, L_G(-D)) with D the internal nodes
  int twisted = 0;     // dim Hom(Omega_G, L_G(-D)) with D all nodes
};

struct HomReport {
  std::vector<HomComponent> components;
  int untwisted_total = 0;  // sum over A_1-separating pieces of Hom(Omega_Zi, L_i)
  int twisted_total = 0;
};

namespace detail {

// dim of polynomials of degree <= d vanishing at k distinct points, as a
// kernel rank over the rationals.
inline int vanishing_sections(int d, int k) {
  if (d < 0) return 0;
  std::vector<std::vector<Rational>> m;
  for (int i = 0; i < k; ++i) {
    std::vector<Rational> row;
    for (int e = 0; e <= d; ++e) row.push_back(power(Rational(i), e));
    m.push_back(std::move(row));
  }
  return d + 1 - matrix_rank(std::move(m));
}

}  // namespace detail

inline HomReport hom_omega_dimensions(const CurveGraph& g, const DecoratedInvolution& inv) {
  const QuotientReport q = quotient(g, inv);
  if (!q.is_hyperelliptic) throw Error("not-hyperelliptic", "the involution is not hyperelliptic");
  const CurveGraph& z = q.quotient_graph;

  std::set<int> separating_images;
  for (int p : a1_separating_decomposition(g).joints)
    if (q.point_images[p].quotient_point >= 0) separating_images.insert(q.point_images[p].quotient_point);

  HomReport rep;
  for (int c = 0; c < z.vertex_count(); ++c) {
    HomComponent hc;
    hc.component = c;
    std::vector<int> pre;
    for (int v = 0; v < g.vertex_count(); ++v)
      if (q.vertex_images[v] == c) pre.push_back(v);
    hc.h = subcurve_genus(g, Subcurve(pre));
    for (int p = 0; p < z.point_count(); ++p) {
      const auto& br = z.points[p].branches;
      const int hits = static_cast<int>(std::count(br.begin(), br.end(), c));
      hc.n += hits;
      if (!separating_images.count(p)) hc.n_internal += hits;
    }
    const int d = 1 - hc.h;  // deg of Omega^dual (x) L_G
    hc.untwisted = std::max(0, d + 1);
    hc.piece = std::max(0, d + 1 - hc.n_internal);
    hc.twisted = std::max(0, d + 1 - hc.n);
    if (hc.piece != detail::vanishing_sections(d, hc.n_internal) ||
        hc.twisted != detail::vanishing_sections(d, hc.n))
      throw Error("internal", "degree count and evaluation rank disagree");
    rep.untwisted_total += hc.piece;
    rep.twisted_total += hc.twisted;
    rep.components.push_back(hc);
  }
  return rep;
}

struct UnramifiedAudit {
  int component = 0;
  int h = 0;
  int n = 0;
  int degree = 0;  // 1 - h - n
};

struct UnramifiedCertificate {
  bool ok = true;
  std::vector<UnramifiedAudit> audit;
};

inline UnramifiedCertificate unramifiedness_certificate(const CurveGraph& g, const DecoratedInvolution& inv) {
  UnramifiedCertificate cert;
  for (const HomComponent& hc : hom_omega_dimensions(g, inv).components) {
    const int degree = 1 - hc.h - hc.n;
    cert.audit.push_back({hc.component, hc.h, hc.n, degree});
    cert.ok = cert.ok && 2 * hc.h - 2 + 2 * hc.n > 0;
  }
  return cert;
}

}  // namespace hyperstack
