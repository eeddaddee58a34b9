#pragma once

// JSON wire format. Input ids may be integers or strings and are resolved to
// indices in order of appearance; output always uses the indices as ids.
// Unknown references resolve to -1 and surface as domain-level reasons;
// documents of the wrong shape raise MalformedInput.

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "hyperstack/canonical.hpp"
#include "hyperstack/cohomology.hpp"
#include "hyperstack/cover.hpp"
#include "hyperstack/curve_graph.hpp"
#include "hyperstack/error.hpp"
#include "hyperstack/involution.hpp"

namespace hyperstack::json_io {

using json = nlohmann::json;

namespace detail {

[[noreturn]] inline void malformed(const std::string& what) { throw MalformedInput(what); }

inline const json& field(const json& j, const char* key) {
  if (!j.is_object()) malformed("expected an object holding \"" + std::string(key) + "\"");
  auto it = j.find(key);
  if (it == j.end()) malformed("missing field \"" + std::string(key) + "\"");
  return *it;
}

inline int as_int(const json& j, const std::string& what) {
  if (!j.is_number_integer()) malformed(what + " must be an integer");
  const auto v = j.get<long long>();
  if (v < -1000000 || v > 1000000) malformed(what + " is out of range");
  return static_cast<int>(v);
}

inline std::string id_text(const json& j, const std::string& what) {
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  if (j.is_string()) return j.get<std::string>();
  malformed(what + " must be an integer or a string");
}

inline const json& array_field(const json& j, const char* key, bool required = true) {
  static const json empty = json::array();
  if (!j.is_object()) malformed("expected an object");
  auto it = j.find(key);
  if (it == j.end()) {
    if (required) malformed("missing field \"" + std::string(key) + "\"");
    return empty;
  }
  if (!it->is_array()) malformed("\"" + std::string(key) + "\" must be an array");
  return *it;
}

inline const json& object_field(const json& j, const char* key) {
  static const json empty = json::object();
  auto it = j.find(key);
  if (it == j.end()) return empty;
  if (!it->is_object()) malformed("\"" + std::string(key) + "\" must be an object");
  return *it;
}

// Id -> index table built from an array of declarations.
struct IdTable {
  std::map<std::string, int> index;

  void add(const std::string& id, const std::string& what) {
    if (!index.emplace(id, static_cast<int>(index.size())).second) malformed("duplicate " + what + " id " + id);
  }
  int resolve(const std::string& id) const {
    auto it = index.find(id);
    return it == index.end() ? -1 : it->second;
  }
};

}  // namespace detail

// Id tables of a parsed graph, needed to read an involution against it.
struct GraphIds {
  detail::IdTable vertices;
  detail::IdTable points;
  detail::IdTable markings;
};

inline CurveGraph graph_from_json(const json& j, GraphIds* ids_out = nullptr) {
  using namespace detail;
  GraphIds ids;
  CurveGraph g;
  for (const json& v : array_field(j, "vertices")) {
    ids.vertices.add(id_text(field(v, "id"), "vertex id"), "vertex");
    g.vertices.push_back({as_int(field(v, "geom_genus"), "geom_genus")});
  }
  for (const json& p : array_field(j, "points", false)) {
    ids.points.add(id_text(field(p, "id"), "point id"), "point");
    Point pt;
    pt.r = as_int(field(p, "r"), "r");
    for (const json& b : array_field(p, "branches")) {
      const json& ref = b.is_object() ? field(b, "vertex") : b;
      pt.branches.push_back(ids.vertices.resolve(id_text(ref, "branch vertex")));
    }
    g.points.push_back(std::move(pt));
  }
  for (const json& m : array_field(j, "markings", false)) {
    if (m.is_object()) {
      ids.markings.add(id_text(field(m, "id"), "marking id"), "marking");
      g.markings.push_back(ids.vertices.resolve(id_text(field(m, "vertex"), "marking vertex")));
    } else {
      ids.markings.add(std::to_string(ids.markings.index.size()), "marking");
      g.markings.push_back(ids.vertices.resolve(id_text(m, "marking vertex")));
    }
  }
  if (ids_out) *ids_out = std::move(ids);
  return g;
}

inline json to_json(const CurveGraph& g) {
  json out = {{"vertices", json::array()}, {"points", json::array()}, {"markings", json::array()}};
  for (int v = 0; v < g.vertex_count(); ++v) out["vertices"].push_back({{"id", v}, {"geom_genus", g.vertices[v].geom_genus}});
  for (int p = 0; p < g.point_count(); ++p) {
    json br = json::array();
    for (int b : g.points[p].branches) br.push_back({{"vertex", b}});
    out["points"].push_back({{"id", p}, {"r", g.points[p].r}, {"branches", br}});
  }
  for (std::size_t m = 0; m < g.markings.size(); ++m) out["markings"].push_back({{"id", m}, {"vertex", g.markings[m]}});
  return out;
}

inline DecoratedInvolution involution_from_json(const json& j, const CurveGraph& g, const GraphIds& ids) {
  using namespace detail;
  if (!j.is_object()) malformed("an involution must be an object");
  DecoratedInvolution inv;
  inv.vertex_map.resize(g.vertices.size());
  inv.point_map.resize(g.points.size());
  for (int v = 0; v < g.vertex_count(); ++v) inv.vertex_map[v] = v;
  for (int p = 0; p < g.point_count(); ++p) inv.point_map[p] = p;
  // Unknown ids map to an out-of-range index so validation reports them.
  auto resolve = [](const IdTable& t, const std::string& id, int size) {
    const int i = t.resolve(id);
    return i < 0 ? size : i;
  };
  for (const auto& [k, v] : object_field(j, "vertex_map").items()) {
    const int from = ids.vertices.resolve(k);
    if (from < 0) throw Error("invalid-involution", "vertex_map names unknown vertex " + k);
    inv.vertex_map[from] = resolve(ids.vertices, id_text(v, "vertex_map target"), g.vertex_count());
  }
  for (const auto& [k, v] : object_field(j, "point_map").items()) {
    const int from = ids.points.resolve(k);
    if (from < 0) throw Error("invalid-involution", "point_map names unknown point " + k);
    inv.point_map[from] = resolve(ids.points, id_text(v, "point_map target"), g.point_count());
  }
  for (const auto& [k, v] : object_field(j, "fixed_vertices").items()) {
    const int id = ids.vertices.resolve(k);
    if (id < 0) throw Error("invalid-involution", "fixed_vertices names unknown vertex " + k);
    FixedVertex f;
    const json& kind = field(v, "kind");
    if (!kind.is_string()) malformed("kind must be a string");
    const std::string ks = kind.get<std::string>();
    if (ks == "IDENTITY") f.kind = FixedKind::identity;
    else if (ks == "NONTRIVIAL") f.kind = FixedKind::nontrivial;
    else malformed("kind must be IDENTITY or NONTRIVIAL");
    if (v.contains("quotient_genus")) f.quotient_genus = as_int(v["quotient_genus"], "quotient_genus");
    if (v.contains("smooth_fixed")) f.smooth_fixed = as_int(v["smooth_fixed"], "smooth_fixed");
    inv.fixed_vertices[id] = f;
  }
  for (const auto& [k, v] : object_field(j, "fixed_points").items()) {
    const int id = ids.points.resolve(k);
    if (id < 0) throw Error("invalid-involution", "fixed_points names unknown point " + k);
    if (!v.is_string()) malformed("a fixed point class must be a string");
    const std::string cs = v.get<std::string>();
    if (cs == "trivial") continue;
    auto cls = parse_involution_class(cs);
    if (!cls) malformed("unknown involution class " + cs);
    inv.fixed_points[id] = *cls;
  }
  return inv;
}

inline json to_json(const DecoratedInvolution& inv) {
  json out = {{"vertex_map", json::object()},
              {"point_map", json::object()},
              {"fixed_vertices", json::object()},
              {"fixed_points", json::object()}};
  for (std::size_t v = 0; v < inv.vertex_map.size(); ++v) out["vertex_map"][std::to_string(v)] = inv.vertex_map[v];
  for (std::size_t p = 0; p < inv.point_map.size(); ++p) out["point_map"][std::to_string(p)] = inv.point_map[p];
  for (const auto& [v, f] : inv.fixed_vertices)
    out["fixed_vertices"][std::to_string(v)] = {
        {"kind", f.kind == FixedKind::identity ? "IDENTITY" : "NONTRIVIAL"},
        {"quotient_genus", f.quotient_genus},
        {"smooth_fixed", f.smooth_fixed}};
  for (const auto& [p, c] : inv.fixed_points) out["fixed_points"][std::to_string(p)] = std::string(to_string(c));
  return out;
}

inline CoverData cover_from_json(const json& j) {
  using namespace detail;
  IdTable comps, nodes;
  CoverData d;
  for (const json& c : array_field(j, "components")) {
    comps.add(id_text(c.is_object() ? field(c, "id") : c, "component id"), "component");
    ++d.components;
  }
  for (const json& n : array_field(j, "nodes", false)) {
    nodes.add(id_text(field(n, "id"), "node id"), "node");
    const json& ends = array_field(n, "ends");
    if (ends.size() != 2) malformed("a node has exactly two ends");
    CoverNode node;
    node.ends = {comps.resolve(id_text(ends[0], "node end")), comps.resolve(id_text(ends[1], "node end"))};
    if (n.contains("stacky")) {
      if (!n["stacky"].is_boolean()) malformed("stacky must be a boolean");
      node.stacky = n["stacky"].get<bool>();
    }
    d.nodes.push_back(node);
  }
  d.deg2L.assign(static_cast<std::size_t>(d.components), 0);
  d.smooth_orders.assign(static_cast<std::size_t>(d.components), {});
  d.node_orders.assign(d.nodes.size(), {0, 0});
  const json& deg = field(j, "deg2L");
  if (!deg.is_object()) malformed("deg2L must be an object");
  std::vector<bool> have(static_cast<std::size_t>(d.components), false);
  for (const auto& [k, v] : deg.items()) {
    const int c = comps.resolve(k);
    if (c < 0) malformed("deg2L names unknown component " + k);
    d.deg2L[c] = as_int(v, "deg2L");
    have[c] = true;
  }
  for (int c = 0; c < d.components; ++c)
    if (!have[c]) malformed("deg2L is missing a component");
  for (const auto& [k, v] : object_field(j, "smooth_orders").items()) {
    const int c = comps.resolve(k);
    if (c < 0) malformed("smooth_orders names unknown component " + k);
    if (!v.is_array()) malformed("smooth orders must be an array");
    for (const json& m : v) d.smooth_orders[c].push_back(as_int(m, "smooth order"));
  }
  for (const auto& [k, v] : object_field(j, "node_orders").items()) {
    const int n = nodes.resolve(k);
    if (n < 0) malformed("node_orders names unknown node " + k);
    if (!v.is_array() || v.size() != 2) malformed("node orders are a pair");
    d.node_orders[n] = {as_int(v[0], "node order"), as_int(v[1], "node order")};
  }
  return d;
}

inline json to_json(const CoverData& d) {
  json out = {{"components", json::array()},
              {"nodes", json::array()},
              {"deg2L", json::object()},
              {"smooth_orders", json::object()},
              {"node_orders", json::object()}};
  for (int c = 0; c < d.components; ++c) {
    out["components"].push_back(c);
    out["deg2L"][std::to_string(c)] = d.deg2L[c];
    out["smooth_orders"][std::to_string(c)] = d.smooth_orders[c];
  }
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    out["nodes"].push_back({{"id", i}, {"ends", {d.nodes[i].ends[0], d.nodes[i].ends[1]}}, {"stacky", d.nodes[i].stacky}});
    out["node_orders"][std::to_string(i)] = {d.node_orders[i][0], d.node_orders[i][1]};
  }
  return out;
}

inline Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Rational(std::stoll(s));
      const long long num = std::stoll(s.substr(0, slash)), den = std::stoll(s.substr(slash + 1));
      if (den == 0) detail::malformed("zero denominator");
      return Rational(num) / Rational(den);
    } catch (const std::logic_error&) {
      detail::malformed("bad rational " + s);
    }
  }
  detail::malformed("a coordinate must be an integer or a \"p/q\" string");
}

struct BundleInput {
  TreeBundle bundle;
  std::optional<NodePlacement> placement;
};

inline BundleInput bundle_from_json(const json& j) {
  using namespace detail;
  IdTable comps, nodes;
  BundleInput in;
  TreeBundle& b = in.bundle;
  for (const json& c : array_field(j, "components")) {
    comps.add(id_text(c.is_object() ? field(c, "id") : c, "component id"), "component");
    ++b.components;
  }
  for (const json& n : array_field(j, "nodes", false)) {
    const json& ends = array_field(n, "ends");
    if (ends.size() != 2) malformed("a node has exactly two ends");
    nodes.add(n.contains("id") ? id_text(n["id"], "node id") : std::to_string(nodes.index.size()), "node");
    b.edges.emplace_back(comps.resolve(id_text(ends[0], "node end")), comps.resolve(id_text(ends[1], "node end")));
  }
  b.degree.assign(static_cast<std::size_t>(b.components), 0);
  const json& deg = field(j, "degree");
  if (!deg.is_object()) malformed("degree must be an object");
  for (const auto& [k, v] : deg.items()) {
    const int c = comps.resolve(k);
    if (c < 0) malformed("degree names unknown component " + k);
    b.degree[c] = as_int(v, "degree");
  }
  if (j.contains("placement")) {
    NodePlacement at(b.edges.size());
    std::vector<bool> have(b.edges.size(), false);
    for (const auto& [k, v] : object_field(j, "placement").items()) {
      const int n = nodes.resolve(k);
      if (n < 0) malformed("placement names unknown node " + k);
      if (!v.is_array() || v.size() != 2) malformed("a placement is a pair of coordinates");
      at[n] = {rational_from_json(v[0]), rational_from_json(v[1])};
      have[n] = true;
    }
    for (bool h : have)
      if (!h) malformed("placement must cover every node");
    in.placement = std::move(at);
  }
  return in;
}

inline json reasons_json(const std::vector<std::string>& reasons) { return json(reasons); }

inline json to_json(const QuotientReport& q) {
  json images = json::array();
  for (std::size_t p = 0; p < q.point_images.size(); ++p) {
    const PointImage& im = q.point_images[p];
    json e = {{"point", p}, {"fiber", std::string(to_string(im.fiber))}};
    e["quotient_point"] = im.quotient_point >= 0 ? json(im.quotient_point) : json(nullptr);
    e["quotient_vertex"] = im.quotient_vertex;
    e["fiber_length"] = im.fiber_length ? json(*im.fiber_length) : json(nullptr);
    images.push_back(std::move(e));
  }
  return {{"quotient_graph", to_json(q.quotient_graph)},
          {"vertex_images", q.vertex_images},
          {"point_images", images},
          {"quotient_genus", q.quotient_genus},
          {"is_hyperelliptic", q.is_hyperelliptic}};
}

inline json to_json(const DecompositionReport& d) {
  json pieces = json::array();
  for (std::size_t i = 0; i < d.pieces.size(); ++i)
    pieces.push_back({{"vertices", d.pieces[i].vertices}, {"genus", d.genera[i]}});
  json out = {{"pieces", pieces}};
  if (d.kind == DecompositionKind::a1_separating) {
    out["kind"] = "A1_SEPARATING";
    out["joints"] = d.joints;
  } else {
    out["kind"] = "EXIST_DECOMP";
    out["n"] = d.n;
    out["m"] = d.m;
  }
  return out;
}

inline json to_json(const HomReport& h) {
  json comps = json::array();
  for (const HomComponent& c : h.components)
    comps.push_back({{"component", c.component},
                     {"h", c.h},
                     {"n", c.n},
                     {"n_internal", c.n_internal},
                     {"untwisted", c.untwisted},
                     {"piece", c.piece},
                     {"twisted", c.twisted}});
  return {{"components", comps}, {"untwisted_total", h.untwisted_total}, {"twisted_total", h.twisted_total}};
}

inline json to_json(const UnramifiedCertificate& c) {
  json audit = json::array();
  for (const UnramifiedAudit& a : c.audit)
    audit.push_back({{"component", a.component}, {"h", a.h}, {"n", a.n}, {"degree", a.degree}});
  return {{"unramified", c.ok}, {"audit", audit}};
}

}  // namespace hyperstack::json_io
