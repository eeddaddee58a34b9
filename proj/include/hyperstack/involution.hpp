#pragma once

// Involutions of curve graphs with enough local decoration to build the
// quotient: the induced permutations, a kind per fixed component and an
// involution class per fixed singular point.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyperstack/curve_graph.hpp"
#include "hyperstack/error.hpp"
#include "hyperstack/local_sing.hpp"

namespace hyperstack {

enum class FixedKind { identity, nontrivial };

struct FixedVertex {
  FixedKind kind = FixedKind::nontrivial;
  int quotient_genus = 0;  // genus of the normalization modulo the involution
  int smooth_fixed = 0;    // fixed points over smooth points of the component

  friend bool operator==(const FixedVertex&, const FixedVertex&) = default;
};

struct DecoratedInvolution {
  std::vector<int> vertex_map;
  std::vector<int> point_map;
  std::map<int, FixedVertex> fixed_vertices;
  // Local class at each fixed point. A fixed point without an entry is acted
  // on trivially, which is only possible inside a pointwise fixed component.
  std::map<int, InvolutionClass> fixed_points;

  friend bool operator==(const DecoratedInvolution&, const DecoratedInvolution&) = default;
};

inline DecoratedInvolution trivial_involution(const CurveGraph& g) {
  DecoratedInvolution inv;
  for (int v = 0; v < g.vertex_count(); ++v) {
    inv.vertex_map.push_back(v);
    inv.fixed_vertices[v] = {FixedKind::identity, 0, 0};
  }
  for (int p = 0; p < g.point_count(); ++p) inv.point_map.push_back(p);
  return inv;
}

namespace detail {

inline bool is_involutive_permutation(const std::vector<int>& m, int n) {
  if (static_cast<int>(m.size()) != n) return false;
  for (int i = 0; i < n; ++i)
    if (m[i] < 0 || m[i] >= n || m[m[i]] != i) return false;
  return true;
}

inline std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

inline std::vector<int> mapped_branches(const Point& p, const std::vector<int>& vmap) {
  std::vector<int> out;
  for (int b : p.branches) out.push_back(vmap[b]);
  return sorted(std::move(out));
}

inline const FixedVertex* fixed_data(const DecoratedInvolution& inv, int v) {
  auto it = inv.fixed_vertices.find(v);
  return it == inv.fixed_vertices.end() ? nullptr : &it->second;
}

inline bool is_identity_vertex(const DecoratedInvolution& inv, int v) {
  const FixedVertex* f = fixed_data(inv, v);
  return f && f->kind == FixedKind::identity;
}

}  // namespace detail

// Fixed points on the normalization of a nontrivially acted component that
// lie over singular points: one per branch through v that the lift fixes.
inline int singular_fixed_branches(const CurveGraph& g, const DecoratedInvolution& inv, int v) {
  int count = 0;
  for (const auto& [p, cls] : inv.fixed_points) {
    if (p < 0 || p >= g.point_count()) continue;
    const Point& pt = g.points[p];
    // Inapplicable classes are reported by validate_involution.
    if (!class_applies(pt.r, cls) || branch_action(pt.r, cls) == BranchAction::swapped) continue;
    for (int b : pt.branches)
      if (b == v) ++count;
  }
  return count;
}

inline Verdict validate_involution(const CurveGraph& g, const DecoratedInvolution& inv) {
  Verdict v = validate_graph(g);
  if (!v.ok) return v;
  const int nv = g.vertex_count(), np = g.point_count();
  if (!detail::is_involutive_permutation(inv.vertex_map, nv))
    v.fail("vertex_map is not an involutive permutation of the vertices");
  if (!detail::is_involutive_permutation(inv.point_map, np))
    v.fail("point_map is not an involutive permutation of the points");
  if (!v.ok) return v;
  const auto& vm = inv.vertex_map;
  const auto& pm = inv.point_map;

  for (const auto& [id, fv] : inv.fixed_vertices)
    if (id < 0 || id >= nv || vm[id] != id)
      v.fail("vertex " + std::to_string(id) + ": decorated but not fixed");
  for (const auto& [id, cls] : inv.fixed_points)
    if (id < 0 || id >= np || pm[id] != id)
      v.fail("point " + std::to_string(id) + ": decorated but not fixed");
  if (!v.ok) return v;

  for (int i = 0; i < nv; ++i) {
    const std::string tag = "vertex " + std::to_string(i);
    if (vm[i] != i) {
      if (g.vertices[i].geom_genus != g.vertices[vm[i]].geom_genus)
        v.fail(tag + ": exchanged with a component of different genus");
      continue;
    }
    const FixedVertex* f = detail::fixed_data(inv, i);
    if (!f) {
      v.fail(tag + ": fixed but carries no decoration");
      continue;
    }
    if (f->kind == FixedKind::identity) continue;
    if (f->quotient_genus < 0 || f->smooth_fixed < 0) {
      v.fail(tag + ": negative decoration");
      continue;
    }
    const int expected = 2 * g.vertices[i].geom_genus + 2 - 4 * f->quotient_genus;
    const int found = f->smooth_fixed + singular_fixed_branches(g, inv, i);
    if (expected != found)
      v.fail(tag + ": Riemann-Hurwitz needs " + std::to_string(expected) +
             " fixed points on the normalization, decoration gives " + std::to_string(found));
  }

  for (int p = 0; p < np; ++p) {
    const Point& pt = g.points[p];
    const std::string tag = "point " + std::to_string(p);
    const auto image = detail::mapped_branches(pt, vm);
    bool on_identity = false;
    for (int b : pt.branches) on_identity = on_identity || detail::is_identity_vertex(inv, b);

    if (pm[p] != p) {
      const Point& q = g.points[pm[p]];
      if (q.r != pt.r) v.fail(tag + ": exchanged with a point of different type");
      else if (image != detail::sorted(q.branches))
        v.fail(tag + ": exchange does not respect branch incidences");
      if (on_identity) v.fail(tag + ": lies on a pointwise fixed component but is moved");
      continue;
    }
    if (image != detail::sorted(pt.branches)) {
      v.fail(tag + ": fixed but its components are not carried to themselves");
      continue;
    }
    auto it = inv.fixed_points.find(p);
    if (it == inv.fixed_points.end()) {
      for (int b : pt.branches)
        if (!detail::is_identity_vertex(inv, b))
          v.fail(tag + ": trivial local action needs every branch on a pointwise fixed component");
      continue;
    }
    const InvolutionClass cls = it->second;
    if (!class_applies(pt.r, cls)) {
      v.fail(tag + ": class " + std::string(to_string(cls)) + " does not act on A_" +
             std::to_string(pt.r));
      continue;
    }
    if (cls == InvolutionClass::c3) {
      bool ok = pt.joins_distinct();
      if (ok) {
        const bool id0 = detail::is_identity_vertex(inv, pt.branches[0]);
        const bool id1 = detail::is_identity_vertex(inv, pt.branches[1]);
        ok = vm[pt.branches[0]] == pt.branches[0] && vm[pt.branches[1]] == pt.branches[1] &&
             id0 != id1;
      }
      if (!ok) v.fail(tag + ": class c3 needs one pointwise fixed branch and one nontrivial branch");
      continue;
    }
    if (on_identity) {
      v.fail(tag + ": lies on a pointwise fixed component but has class " +
             std::string(to_string(cls)));
      continue;
    }
    const BranchAction act = branch_action(pt.r, cls);
    if (act == BranchAction::swapped) {
      if (pt.joins_distinct() && vm[pt.branches[0]] != pt.branches[1])
        v.fail(tag + ": class swaps branches on components that are not exchanged");
    } else {
      for (int b : pt.branches)
        if (vm[b] != b) v.fail(tag + ": class fixes branches but their components are exchanged");
    }
  }
  return v;
}

inline bool fixed_locus_finite(const CurveGraph&, const DecoratedInvolution& inv) {
  for (const auto& [id, f] : inv.fixed_vertices)
    if (f.kind == FixedKind::identity) return false;
  for (const auto& [id, cls] : inv.fixed_points)
    if (cls == InvolutionClass::c3) return false;
  return true;
}

// The five fiber shapes over points of a nodal genus-0 quotient; `other`
// marks images outside that list, which only occur for non-hyperelliptic
// quotients.
enum class FiberCase { s2, n1, n2, n3, other };

inline std::string_view to_string(FiberCase f) {
  switch (f) {
    case FiberCase::s2: return "s2";
    case FiberCase::n1: return "n1";
    case FiberCase::n2: return "n2";
    case FiberCase::n3: return "n3";
    case FiberCase::other: return "other";
  }
  return "?";
}

struct PointImage {
  int quotient_point = -1;  // -1 when the image is a smooth point
  int quotient_vertex = -1; // component containing a smooth image
  FiberCase fiber = FiberCase::other;
  std::optional<int> fiber_length;
};

struct QuotientReport {
  CurveGraph quotient_graph;
  std::vector<int> vertex_images;
  std::vector<PointImage> point_images;
  int quotient_genus = 0;
  bool is_hyperelliptic = false;
};

inline QuotientReport quotient(const CurveGraph& g, const DecoratedInvolution& inv) {
  Verdict v = validate_involution(g, inv);
  if (!v.ok) throw Error("invalid-involution", v.reasons.front());
  if (!fixed_locus_finite(g, inv))
    throw Error("infinite-fixed-locus", "the involution fixes a whole component");

  QuotientReport rep;
  const auto& vm = inv.vertex_map;
  rep.vertex_images.assign(static_cast<std::size_t>(g.vertex_count()), -1);
  for (int i = 0; i < g.vertex_count(); ++i) {
    if (rep.vertex_images[i] >= 0) continue;
    const int id = rep.quotient_graph.vertex_count();
    rep.vertex_images[i] = rep.vertex_images[vm[i]] = id;
    const int genus = vm[i] == i ? inv.fixed_vertices.at(i).quotient_genus : g.vertices[i].geom_genus;
    rep.quotient_graph.vertices.push_back({genus});
  }

  rep.point_images.resize(static_cast<std::size_t>(g.point_count()));
  for (int p = 0; p < g.point_count(); ++p) {
    const int q = inv.point_map[p];
    if (q < p) {
      rep.point_images[p] = rep.point_images[q];
      continue;
    }
    const Point& pt = g.points[p];
    PointImage img;
    Point down;
    if (q != p) {
      down.r = pt.r;
      for (int b : pt.branches) down.branches.push_back(rep.vertex_images[b]);
      img.fiber = pt.r == 1 ? FiberCase::n1 : FiberCase::other;
      img.fiber_length = 2;
    } else {
      const InvolutionClass cls = inv.fixed_points.at(p);
      const LocalQuotient lq = quotient_local(pt.r, cls);
      down.r = lq.quotient_type.r;
      if (lq.quotient_type.unibranch()) {
        if (down.r > 0) down.branches = {rep.vertex_images[pt.branches[0]]};
      } else {
        for (int b : pt.branches) down.branches.push_back(rep.vertex_images[b]);
      }
      if (down.r == 0) img.fiber = FiberCase::s2;
      else if (down.r == 1 && lq.flat && pt.r == 3) img.fiber = FiberCase::n2;
      else if (down.r == 1 && !lq.flat && pt.r == 1) img.fiber = FiberCase::n3;
      if (img.fiber != FiberCase::other) img.fiber_length = lq.flat ? 2 : 3;
      else if (lq.flat) img.fiber_length = 2;
    }
    if (down.r == 0) {
      img.quotient_vertex = rep.vertex_images[pt.branches[0]];
    } else {
      img.quotient_point = rep.quotient_graph.point_count();
      img.quotient_vertex = down.branches[0];
      rep.quotient_graph.points.push_back(std::move(down));
    }
    rep.point_images[p] = img;
  }

  rep.quotient_genus = arithmetic_genus(rep.quotient_graph);
  rep.is_hyperelliptic = rep.quotient_genus == 0;
  for (const Point& p : rep.quotient_graph.points)
    rep.is_hyperelliptic = rep.is_hyperelliptic && p.r == 1;
  return rep;
}

inline bool is_hyperelliptic(const CurveGraph& g, const DecoratedInvolution& inv) {
  if (!validate_involution(g, inv).ok || !fixed_locus_finite(g, inv)) return false;
  return quotient(g, inv).is_hyperelliptic;
}

struct ActionSignature {
  std::vector<int> vertex_permutation;
  std::vector<int> point_permutation;
  friend bool operator==(const ActionSignature&, const ActionSignature&) = default;
  friend auto operator<=>(const ActionSignature&, const ActionSignature&) = default;
};

inline ActionSignature action_signature(const CurveGraph& g, const DecoratedInvolution& inv) {
  Verdict v = validate_involution(g, inv);
  if (!v.ok) throw Error("invalid-involution", v.reasons.front());
  return {inv.vertex_map, inv.point_map};
}

// Total order used to report search results deterministically.
inline std::vector<int> involution_key(const DecoratedInvolution& inv) {
  std::vector<int> key = inv.vertex_map;
  key.insert(key.end(), inv.point_map.begin(), inv.point_map.end());
  for (const auto& [id, f] : inv.fixed_vertices) {
    key.push_back(id);
    key.push_back(static_cast<int>(f.kind));
    key.push_back(f.quotient_genus);
    key.push_back(f.smooth_fixed);
  }
  for (const auto& [id, cls] : inv.fixed_points) {
    key.push_back(id);
    key.push_back(static_cast<int>(cls));
  }
  return key;
}

namespace detail {

// Calls `emit` with every involutive permutation m of {0..n-1} such that
// allowed(i, m[i]) holds for all i.
inline void for_each_involution(int n, const std::function<bool(int, int)>& allowed,
                                const std::function<void(const std::vector<int>&)>& emit) {
  std::vector<int> m(static_cast<std::size_t>(n), -1);
  std::function<void(int)> rec = [&](int i) {
    while (i < n && m[i] >= 0) ++i;
    if (i == n) {
      emit(m);
      return;
    }
    if (allowed(i, i)) {
      m[i] = i;
      rec(i + 1);
      m[i] = -1;
    }
    for (int j = i + 1; j < n; ++j) {
      if (m[j] >= 0 || !allowed(i, j)) continue;
      m[i] = j;
      m[j] = i;
      rec(i + 1);
      m[i] = m[j] = -1;
    }
  };
  rec(0);
}

}  // namespace detail

// Every decorated involution whose quotient is a nodal genus-0 curve. A
// hyperelliptic quotient forces: no pointwise fixed components, quotient
// genus 0 on fixed components, genus-0 exchanged components, fixed points of
// type A_r for r >= 2, and local classes with quotient A_0 or A_1. The
// smooth fixed counts then follow from Riemann-Hurwitz.
inline std::vector<DecoratedInvolution> find_hyperelliptic_involutions(const CurveGraph& g) {
  require_connected(g);
  std::vector<DecoratedInvolution> found;
  const int nv = g.vertex_count(), np = g.point_count();

  auto vertex_ok = [&](int i, int j) {
    if (i == j) return true;
    return g.vertices[i].geom_genus == 0 && g.vertices[j].geom_genus == 0;
  };
  detail::for_each_involution(nv, vertex_ok, [&](const std::vector<int>& vm) {
    auto point_ok = [&](int p, int q) {
      const Point& a = g.points[p];
      if (p == q) return detail::mapped_branches(a, vm) == detail::sorted(a.branches);
      const Point& b = g.points[q];
      return a.r == 1 && b.r == 1 && detail::mapped_branches(a, vm) == detail::sorted(b.branches);
    };
    detail::for_each_involution(np, point_ok, [&](const std::vector<int>& pm) {
      std::vector<int> fixed;
      std::vector<std::vector<InvolutionClass>> options;
      for (int p = 0; p < np; ++p) {
        if (pm[p] != p) continue;
        const Point& pt = g.points[p];
        std::vector<InvolutionClass> ok;
        for (InvolutionClass c : classify_involutions(pt.r)) {
          if (c == InvolutionClass::c3) continue;
          if (quotient_local(pt.r, c).quotient_type.r > 1) continue;
          const bool swapped = branch_action(pt.r, c) == BranchAction::swapped;
          bool consistent = true;
          if (swapped && pt.joins_distinct()) consistent = vm[pt.branches[0]] == pt.branches[1];
          if (!swapped)
            for (int b : pt.branches) consistent = consistent && vm[b] == b;
          if (consistent) ok.push_back(c);
        }
        if (ok.empty()) return;
        fixed.push_back(p);
        options.push_back(std::move(ok));
      }
      std::vector<std::size_t> choice(fixed.size(), 0);
      while (true) {
        DecoratedInvolution inv;
        inv.vertex_map = vm;
        inv.point_map = pm;
        for (std::size_t i = 0; i < fixed.size(); ++i) inv.fixed_points[fixed[i]] = options[i][choice[i]];
        bool rh_ok = true;
        for (int v = 0; v < nv; ++v) {
          if (vm[v] != v) continue;
          const int sf = 2 * g.vertices[v].geom_genus + 2 - singular_fixed_branches(g, inv, v);
          rh_ok = rh_ok && sf >= 0;
          inv.fixed_vertices[v] = {FixedKind::nontrivial, 0, sf};
        }
        if (rh_ok && validate_involution(g, inv).ok && quotient(g, inv).is_hyperelliptic)
          found.push_back(std::move(inv));
        std::size_t k = 0;
        while (k < choice.size() && ++choice[k] == options[k].size()) choice[k++] = 0;
        if (k == choice.size()) break;
      }
    });
  });
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    return involution_key(a) < involution_key(b);
  });
  return found;
}

// Image of a subcurve under the involution.
inline Subcurve image(const DecoratedInvolution& inv, const Subcurve& s) {
  std::vector<int> out;
  for (int v : s.vertices) out.push_back(inv.vertex_map.at(static_cast<std::size_t>(v)));
  return Subcurve(std::move(out));
}

}  // namespace hyperstack
