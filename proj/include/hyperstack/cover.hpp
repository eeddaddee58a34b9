#pragma once

// Cyclic double covers of twisted genus-0 trees. A datum is the tree, twice
// the degree of L on each component, the vanishing orders of the branch
// section at smooth points, and its orders along the two sides of each node.

#include <algorithm>
#include <array>
#include <numeric>
#include <string>
#include <vector>

#include "hyperstack/curve_graph.hpp"
#include "hyperstack/error.hpp"
#include "hyperstack/involution.hpp"

namespace hyperstack {

struct CoverNode {
  std::array<int, 2> ends{0, 0};
  bool stacky = false;
  friend bool operator==(const CoverNode&, const CoverNode&) = default;
};

struct CoverData {
  int components = 0;
  std::vector<CoverNode> nodes;
  std::vector<int> deg2L;                       // per component
  std::vector<std::vector<int>> smooth_orders;  // per component
  std::vector<std::array<int, 2>> node_orders;  // per node, aligned with ends

  friend bool operator==(const CoverData&, const CoverData&) = default;
};

inline int stacky_count(const CoverData& d, int c) {
  int n = 0;
  for (const CoverNode& nd : d.nodes)
    if (nd.stacky) n += (nd.ends[0] == c) + (nd.ends[1] == c);
  return n;
}

inline int node_count(const CoverData& d, int c) {
  int m = 0;
  for (const CoverNode& nd : d.nodes) m += (nd.ends[0] == c) + (nd.ends[1] == c);
  return m;
}

// Number of (0,0) or (1,1) non-stacky nodes on the component.
inline int plain_node_count(const CoverData& d, int c, int order) {
  int k = 0;
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    const CoverNode& nd = d.nodes[i];
    if (nd.stacky) continue;
    for (int s = 0; s < 2; ++s)
      if (nd.ends[s] == c && d.node_orders[i][0] == order && d.node_orders[i][1] == order) ++k;
  }
  return k;
}

// Total vanishing order of the branch section on the component.
inline int branch_degree(const CoverData& d, int c) {
  int total = std::accumulate(d.smooth_orders[c].begin(), d.smooth_orders[c].end(), 0);
  for (std::size_t i = 0; i < d.nodes.size(); ++i)
    for (int s = 0; s < 2; ++s)
      if (d.nodes[i].ends[s] == c) total += d.node_orders[i][s];
  return total;
}

// g_Gamma = n/2 - 1 - deg L, the genus of the preimage of the component.
inline int component_genus(const CoverData& d, int c) {
  return (stacky_count(d, c) - 2 - d.deg2L[c]) / 2;
}

// Branch points on the normalization of the preimage: odd smooth orders,
// (1,1) nodes and stacky nodes. Zero means the preimage is two sheets.
inline int ramification_count(const CoverData& d, int c) {
  int b = stacky_count(d, c) + plain_node_count(d, c, 1);
  for (int m : d.smooth_orders[c]) b += m % 2;
  return b;
}

inline int nonstacky_count(const CoverData& d) {
  return static_cast<int>(std::count_if(d.nodes.begin(), d.nodes.end(),
                                        [](const CoverNode& n) { return !n.stacky; }));
}

inline Verdict validate_cover_structure(const CoverData& d) {
  Verdict v;
  const int k = d.components;
  if (k < 1) v.fail("tree: no components");
  if (static_cast<int>(d.deg2L.size()) != k || static_cast<int>(d.smooth_orders.size()) != k)
    v.fail("tree: per-component data does not match the component count");
  if (d.node_orders.size() != d.nodes.size()) v.fail("tree: node orders do not match the nodes");
  if (!v.ok) return v;
  if (static_cast<int>(d.nodes.size()) != k - 1) v.fail("tree: a tree on k components has k-1 nodes");
  detail::DisjointSets ds(k);
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    const auto& e = d.nodes[i].ends;
    const std::string tag = "node " + std::to_string(i);
    if (e[0] < 0 || e[0] >= k || e[1] < 0 || e[1] >= k) {
      v.fail(tag + ": unknown component");
      continue;
    }
    if (e[0] == e[1]) v.fail(tag + ": self-node on a genus-0 tree");
    else if (!ds.unite(e[0], e[1])) v.fail(tag + ": closes a cycle");
    if (d.node_orders[i][0] < 0 || d.node_orders[i][1] < 0) v.fail(tag + ": negative order");
    if (d.nodes[i].stacky && (d.node_orders[i][0] != 0 || d.node_orders[i][1] != 0))
      v.fail(tag + " (a2): the branch section vanishes at a stacky node");
  }
  if (!v.ok) return v;
  for (int c = 0; c < k; ++c) {
    const std::string tag = "component " + std::to_string(c);
    for (int m : d.smooth_orders[c])
      if (m < 1) v.fail(tag + ": smooth orders must be positive");
    const int n = stacky_count(d, c);
    if ((d.deg2L[c] - n) % 2 != 0) {
      v.fail(tag + " (a1): 2 deg L must have the parity of the stacky node count");
      continue;
    }
    if (branch_degree(d, c) != -d.deg2L[c])
      v.fail(tag + ": branch orders sum to " + std::to_string(branch_degree(d, c)) +
             ", degree of L^-2 is " + std::to_string(-d.deg2L[c]));
    if (component_genus(d, c) < -1) v.fail(tag + ": preimage genus below -1");
    if (ramification_count(d, c) % 2 != 0)
      v.fail(tag + ": odd number of branch points");
  }
  return v;
}

inline void require_cover_structure(const CoverData& d) {
  Verdict v = validate_cover_structure(d);
  if (!v.ok) throw Error("invalid-data", v.reasons.front());
}

// chi(L) on the twisted tree: sum over components of deg L - n/2 + 1 (the
// coarse degree drops by 1/2 at each stacky point) minus one per
// non-stacky node. Equals -(sum of g_Gamma) - #non-stacky nodes.
inline int euler_characteristic(const CoverData& d) {
  require_cover_structure(d);
  int chi = -nonstacky_count(d);
  for (int c = 0; c < d.components; ++c) chi += (d.deg2L[c] - stacky_count(d, c)) / 2 + 1;
  return chi;
}

struct CoverVerdict {
  Verdict structure;
  Verdict prestable;  // (b2), (b3), chi
  Verdict stable;     // (c1), (c2)

  bool ok() const noexcept { return structure.ok && prestable.ok && stable.ok; }
  std::vector<std::string> reasons() const {
    std::vector<std::string> out = structure.reasons;
    out.insert(out.end(), prestable.reasons.begin(), prestable.reasons.end());
    out.insert(out.end(), stable.reasons.begin(), stable.reasons.end());
    return out;
  }
};

inline Verdict validate_cover_prestable(const CoverData& d, int r) {
  Verdict v;
  for (int c = 0; c < d.components; ++c)
    for (int m : d.smooth_orders[c])
      if (m > r + 1)
        v.fail("(b3) component " + std::to_string(c) + ": order " + std::to_string(m) +
               " exceeds r+1 = " + std::to_string(r + 1));
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    const std::string tag = "(b2) node " + std::to_string(i);
    if (r < 1) v.fail(tag + ": nodes need r >= 1");
    if (d.nodes[i].stacky) continue;
    const auto o = d.node_orders[i];
    const bool empty = o[0] == 0 && o[1] == 0;
    const bool tacnode = o[0] == 1 && o[1] == 1;
    if (!empty && !tacnode) v.fail(tag + ": orders must be (0,0) or (1,1)");
    if (tacnode && r < 3) v.fail(tag + ": a tacnode over the node needs r >= 3");
  }
  return v;
}

inline Verdict validate_cover_stable(const CoverData& d) {
  Verdict v;
  for (int c = 0; c < d.components; ++c) {
    const int gc = component_genus(d, c), m = node_count(d, c), n = stacky_count(d, c);
    const std::string tag = " component " + std::to_string(c);
    if (gc == 0 && 2 * m - n < 3)
      v.fail("(c1)" + tag + ": 2m - n = " + std::to_string(2 * m - n) + " < 3");
    if (gc == -1 && (n != 0 || m < 3))
      v.fail("(c2)" + tag + ": a split component needs m >= 3 and no stacky nodes");
  }
  return v;
}

inline CoverVerdict validate_cover_data(const CoverData& d, int g, int r) {
  CoverVerdict out;
  out.structure = validate_cover_structure(d);
  if (!out.structure.ok) return out;
  out.prestable = validate_cover_prestable(d, r);
  const int chi = euler_characteristic(d);
  if (chi != -g)
    out.prestable.fail("chi: chi(L) = " + std::to_string(chi) + " but genus " + std::to_string(g) +
                       " needs " + std::to_string(-g));
  out.stable = validate_cover_stable(d);
  return out;
}

struct CoverResult {
  CurveGraph curve;
  DecoratedInvolution involution;
  int genus = 0;
};

// The double cover Spec(O + L) as a decorated graph with its deck
// involution. Requires prestable data; stability is not needed, so unstable
// data can be compared with the graph-side stability test.
inline CoverResult build_cover(const CoverData& d, int r) {
  require_cover_structure(d);
  Verdict pre = validate_cover_prestable(d, r);
  if (!pre.ok) throw Error("invalid-data", pre.reasons.front());

  CoverResult res;
  CurveGraph& g = res.curve;
  DecoratedInvolution& inv = res.involution;
  std::vector<std::array<int, 2>> sheets(static_cast<std::size_t>(d.components));
  auto add_vertex = [&](int genus) {
    g.vertices.push_back({genus});
    return g.vertex_count() - 1;
  };
  auto add_point = [&](int rr, std::vector<int> branches) {
    g.points.push_back({rr, std::move(branches)});
    return g.point_count() - 1;
  };

  for (int c = 0; c < d.components; ++c) {
    const int b = ramification_count(d, c);
    if (b > 0) {
      const int v = add_vertex(b / 2 - 1);
      sheets[c] = {v, v};
      const int ones = static_cast<int>(std::count(d.smooth_orders[c].begin(), d.smooth_orders[c].end(), 1));
      inv.fixed_vertices[v] = {FixedKind::nontrivial, 0, ones};
    } else {
      sheets[c] = {add_vertex(0), add_vertex(0)};
    }
  }
  inv.vertex_map.resize(static_cast<std::size_t>(g.vertex_count()));
  for (int c = 0; c < d.components; ++c) {
    inv.vertex_map[sheets[c][0]] = sheets[c][1];
    inv.vertex_map[sheets[c][1]] = sheets[c][0];
  }

  std::vector<std::pair<int, int>> exchanged;
  for (int c = 0; c < d.components; ++c) {
    for (int m : d.smooth_orders[c]) {
      if (m == 1) continue;
      int p;
      if (m % 2 == 1) {
        p = add_point(m - 1, {sheets[c][0]});
        inv.fixed_points[p] = InvolutionClass::a;
      } else {
        p = add_point(m - 1, {sheets[c][0], sheets[c][1]});
        inv.fixed_points[p] = m == 2 ? InvolutionClass::c1 : InvolutionClass::b1;
      }
    }
  }
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    const auto [a, b] = d.nodes[i].ends;
    if (d.nodes[i].stacky) {
      int p = add_point(1, {sheets[a][0], sheets[b][0]});
      inv.fixed_points[p] = InvolutionClass::c2;
    } else if (d.node_orders[i][0] == 1) {
      int p = add_point(3, {sheets[a][0], sheets[b][0]});
      inv.fixed_points[p] = InvolutionClass::b2;
    } else {
      int p = add_point(1, {sheets[a][0], sheets[b][0]});
      int q = add_point(1, {sheets[a][1], sheets[b][1]});
      exchanged.emplace_back(p, q);
    }
  }
  inv.point_map.resize(static_cast<std::size_t>(g.point_count()));
  std::iota(inv.point_map.begin(), inv.point_map.end(), 0);
  for (auto [p, q] : exchanged) {
    inv.point_map[p] = q;
    inv.point_map[q] = p;
  }

  res.genus = -euler_characteristic(d);
  const int graph_genus = arithmetic_genus(g);
  if (graph_genus != res.genus)
    throw Error("internal", "cover genus " + std::to_string(graph_genus) +
                                " disagrees with -chi(L) = " + std::to_string(res.genus));
  Verdict vi = validate_involution(g, inv);
  if (!vi.ok) throw Error("internal", "deck involution fails validation: " + vi.reasons.front());
  return res;
}

// The quotient presentation of a hyperelliptic curve: the quotient tree with
// n3 images as stacky nodes, n2 images as (1,1) nodes and n1 images as
// (0,0) nodes; fixed singular points over smooth points give order r+1 and
// fixed smooth points give order 1.
inline CoverData extract_cover_data(const CurveGraph& g, const DecoratedInvolution& inv) {
  const QuotientReport q = quotient(g, inv);
  if (!q.is_hyperelliptic)
    throw Error("not-hyperelliptic", "the quotient is not a nodal curve of genus 0");
  const CurveGraph& z = q.quotient_graph;
  CoverData d;
  d.components = z.vertex_count();
  d.smooth_orders.resize(static_cast<std::size_t>(d.components));
  d.deg2L.resize(static_cast<std::size_t>(d.components));
  d.nodes.resize(static_cast<std::size_t>(z.point_count()));
  d.node_orders.assign(static_cast<std::size_t>(z.point_count()), {0, 0});
  for (int p = 0; p < g.point_count(); ++p) {
    const PointImage& img = q.point_images[p];
    if (img.quotient_point < 0) {
      d.smooth_orders[img.quotient_vertex].push_back(g.points[p].r + 1);
      continue;
    }
    CoverNode& node = d.nodes[img.quotient_point];
    const auto& br = z.points[img.quotient_point].branches;
    node.ends = {br[0], br[1]};
    node.stacky = img.fiber == FiberCase::n3;
    if (img.fiber == FiberCase::n2) d.node_orders[img.quotient_point] = {1, 1};
  }
  for (const auto& [v, f] : inv.fixed_vertices)
    d.smooth_orders[q.vertex_images[v]].insert(d.smooth_orders[q.vertex_images[v]].end(), f.smooth_fixed, 1);
  for (int c = 0; c < d.components; ++c) {
    std::vector<int> pre;
    for (int v = 0; v < g.vertex_count(); ++v)
      if (q.vertex_images[v] == c) pre.push_back(v);
    const int gc = subcurve_genus(g, Subcurve(pre));
    d.deg2L[c] = stacky_count(d, c) - 2 - 2 * gc;
    std::sort(d.smooth_orders[c].begin(), d.smooth_orders[c].end());
  }
  return d;
}

}  // namespace hyperstack
