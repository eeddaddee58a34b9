#pragma once

// Command dispatcher behind the `hyperstack` tool. Every subcommand reads one
// JSON document and writes one JSON document. Exit status: 0 success, 1 a
// well-formed input that fails a domain check, 2 malformed input or usage.

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hyperstack/canonical.hpp"
#include "hyperstack/cohomology.hpp"
#include "hyperstack/cover.hpp"
#include "hyperstack/curve_graph.hpp"
#include "hyperstack/enumerate.hpp"
#include "hyperstack/error.hpp"
#include "hyperstack/involution.hpp"
#include "hyperstack/json_io.hpp"

namespace hyperstack::cli {

using json = nlohmann::json;

enum ExitCode : int { kSuccess = 0, kInvalid = 1, kMalformed = 2 };

struct Options {
  std::string command;
  std::string input;
  std::optional<int> genus;
  std::optional<int> r;
  std::string side = "both";
  bool pretty = false;
};

struct Outcome {
  json body;
  int status = kSuccess;
};

inline const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = {
      "validate-graph", "genus",     "stability", "involutions",     "quotient",    "to-cover",  "from-cover",
      "validate-cover", "cohomology", "decompose", "base-locus", "genus1-classify", "deformation", "enumerate"};
  return names;
}

namespace detail {

inline json read_document(const Options& o, std::istream& in) {
  std::string text;
  if (o.input.empty() || o.input == "-") {
    text.assign(std::istreambuf_iterator<char>(in), {});
  } else {
    std::ifstream f(o.input, std::ios::binary);
    if (!f) throw MalformedInput("cannot open input file " + o.input);
    text.assign(std::istreambuf_iterator<char>(f), {});
  }
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw MalformedInput("input is not valid JSON");
  return doc;
}

// A document is either the object itself or wraps it under `key`.
inline const json& section(const json& doc, const char* key) {
  if (!doc.is_object()) throw MalformedInput("input must be a JSON object");
  auto it = doc.find(key);
  return it == doc.end() ? doc : *it;
}

struct GraphInput {
  CurveGraph graph;
  json_io::GraphIds ids;
};

inline GraphInput read_graph(const json& doc) {
  GraphInput in;
  in.graph = json_io::graph_from_json(section(doc, "graph"), &in.ids);
  return in;
}

inline DecoratedInvolution read_involution(const json& doc, const GraphInput& g) {
  if (!doc.is_object() || !doc.contains("involution")) throw MalformedInput("missing field \"involution\"");
  return json_io::involution_from_json(doc["involution"], g.graph, g.ids);
}

inline int resolve_vertex(const GraphInput& g, const json& ref) {
  return g.ids.vertices.resolve(json_io::detail::id_text(ref, "vertex"));
}

inline int resolve_marking(const GraphInput& g, const json& ref) {
  const int m = g.ids.markings.resolve(json_io::detail::id_text(ref, "marking"));
  if (m < 0) throw Error("unknown-marking", "no such marking");
  return m;
}

inline Outcome invalid(std::vector<std::string> reasons, json body = json::object()) {
  body["valid"] = false;
  body["reasons"] = std::move(reasons);
  return {std::move(body), kInvalid};
}

inline int default_r(int genus) { return 2 * std::max(genus, 0) + 1; }

inline int cover_genus(const Options& o, const CoverData& d) {
  return o.genus ? *o.genus : -euler_characteristic(d);
}

inline json stratum_json(const GraphStratum& s) {
  json invs = json::array();
  for (const DecoratedInvolution& inv : s.involutions) invs.push_back(json_io::to_json(inv));
  return {{"graph", json_io::to_json(s.graph.graph)}, {"involutions", invs}};
}

// ---------------------------------------------------------------------------
// Subcommands

inline Outcome validate_graph_cmd(const json& doc) {
  const Verdict v = validate_graph(read_graph(doc).graph);
  if (!v.ok) return invalid(v.reasons);
  return {{{"valid", true}, {"reasons", json::array()}}};
}

inline Outcome genus_cmd(const json& doc) {
  const CurveGraph g = read_graph(doc).graph;
  require_connected(g);
  return {{{"genus", arithmetic_genus(g)}}};
}

inline Outcome stability_cmd(const Options& o, const json& doc) {
  const CurveGraph g = read_graph(doc).graph;
  require_connected(g);
  const int r = o.r ? *o.r : default_r(arithmetic_genus(g));
  const Verdict v = is_stable(g, r);
  json body = {{"stable", v.ok}, {"reasons", v.reasons}, {"r_max", r}};
  return {std::move(body), v.ok ? kSuccess : kInvalid};
}

inline Outcome involutions_cmd(const json& doc) {
  const CurveGraph g = read_graph(doc).graph;
  require_connected(g);
  json list = json::array();
  for (const DecoratedInvolution& inv : find_hyperelliptic_involutions(g)) list.push_back(json_io::to_json(inv));
  return {{{"count", list.size()}, {"involutions", list}}};
}

inline Outcome quotient_cmd(const json& doc) {
  const GraphInput g = read_graph(doc);
  require_connected(g.graph);
  const DecoratedInvolution inv = read_involution(doc, g);
  const Verdict v = validate_involution(g.graph, inv);
  if (!v.ok) return invalid(v.reasons);
  if (!fixed_locus_finite(g.graph, inv)) return invalid({"the fixed locus is not finite"});
  return {json_io::to_json(quotient(g.graph, inv))};
}

inline Outcome to_cover_cmd(const json& doc) {
  const GraphInput g = read_graph(doc);
  require_connected(g.graph);
  const CoverData d = extract_cover_data(g.graph, read_involution(doc, g));
  return {{{"cover", json_io::to_json(d)}, {"euler_characteristic", euler_characteristic(d)}}};
}

inline Outcome from_cover_cmd(const Options& o, const json& doc) {
  const CoverData d = json_io::cover_from_json(section(doc, "cover"));
  const Verdict s = validate_cover_structure(d);
  if (!s.ok) return invalid(s.reasons);
  const int r = o.r ? *o.r : default_r(-euler_characteristic(d));
  const Verdict p = validate_cover_prestable(d, r);
  if (!p.ok) return invalid(p.reasons);
  const CoverResult c = build_cover(d, r);
  return {{{"graph", json_io::to_json(c.curve)}, {"involution", json_io::to_json(c.involution)}, {"genus", c.genus}}};
}

inline Outcome validate_cover_cmd(const Options& o, const json& doc) {
  const CoverData d = json_io::cover_from_json(section(doc, "cover"));
  const int g = cover_genus(o, d);
  const int r = o.r ? *o.r : default_r(g);
  const CoverVerdict v = validate_cover_data(d, g, r);
  json body = {{"genus", g}, {"r", r}};
  if (!v.ok()) return invalid(v.reasons(), std::move(body));
  body["valid"] = true;
  body["reasons"] = json::array();
  return {std::move(body)};
}

inline Outcome cohomology_cmd(const json& doc) {
  const json_io::BundleInput in = json_io::bundle_from_json(section(doc, "bundle"));
  const Verdict v = validate_tree_bundle(in.bundle);
  if (!v.ok) return invalid(v.reasons);
  const Cohomology c = in.placement ? h0_h1(in.bundle, *in.placement) : h0_h1(in.bundle);
  return {{{"h0", c.h0}, {"h1", c.h1}, {"euler_characteristic", euler_characteristic(in.bundle)}}};
}

inline Outcome decompose_cmd(const json& doc) {
  const GraphInput g = read_graph(doc);
  require_connected(g.graph);
  json body = {{"a1_separating", json_io::to_json(a1_separating_decomposition(g.graph))}};
  if (!doc.is_object() || !doc.contains("involution")) return {std::move(body)};
  const DecoratedInvolution inv = read_involution(doc, g);
  const Verdict v = validate_involution(g.graph, inv);
  if (!v.ok) return invalid(v.reasons, std::move(body));
  std::vector<std::pair<int, int>> pairs;
  if (doc.contains("pair")) {
    const json& p = doc["pair"];
    if (!p.is_array() || p.size() != 2) throw MalformedInput("\"pair\" must list two vertices");
    pairs.emplace_back(resolve_vertex(g, p[0]), resolve_vertex(g, p[1]));
  } else {
    for (int v0 = 0; v0 < g.graph.vertex_count(); ++v0) {
      const int w = inv.vertex_map[v0];
      if (w > v0 && g.graph.vertices[v0].geom_genus == 0) pairs.emplace_back(v0, w);
    }
  }
  json exist = json::array();
  std::vector<std::string> failures;
  for (auto [a, b] : pairs) {
    try {
      json e = json_io::to_json(exist_decomposition(g.graph, inv, a, b));
      e["pair"] = {a, b};
      exist.push_back(std::move(e));
    } catch (const Error& err) {
      failures.push_back(err.code() + ": " + err.what());
    }
  }
  body["exist"] = exist;
  if (!failures.empty()) return invalid(failures, std::move(body));
  return {std::move(body)};
}

inline Outcome base_locus_cmd(const json& doc) {
  const CurveGraph g = read_graph(doc).graph;
  require_connected(g);
  const BaseLocus b = canonical_base_locus(g);
  return {{{"points", b.points}, {"vertices", b.vertices}}};
}

inline Outcome genus1_cmd(const json& doc) {
  const GraphInput g = read_graph(doc);
  int p1 = 0, p2 = 0;
  if (doc.is_object() && doc.contains("p1")) {
    p1 = resolve_marking(g, doc["p1"]);
    p2 = doc.contains("p2") ? resolve_marking(g, doc["p2"]) : p1;
  } else {
    if (g.graph.markings.empty()) throw Error("unknown-marking", "the curve carries no markings");
    p2 = g.graph.markings.size() > 1 ? 1 : 0;
  }
  const Genus1Shape s = classify_genus1(g.graph, p1, p2);
  json body = {{"shape", std::string(to_string(s))}, {"p1", p1}, {"p2", p2}};
  if (s == Genus1Shape::invalid) return invalid({"no admissible genus-1 shape"}, std::move(body));
  return {std::move(body)};
}

inline Outcome deformation_cmd(const json& doc) {
  const GraphInput g = read_graph(doc);
  require_connected(g.graph);
  const DecoratedInvolution inv = read_involution(doc, g);
  const UnramifiedCertificate c = unramifiedness_certificate(g.graph, inv);
  json body = {{"hom", json_io::to_json(hom_omega_dimensions(g.graph, inv))}, {"certificate", json_io::to_json(c)}};
  return {std::move(body), c.ok ? kSuccess : kInvalid};
}

inline Outcome enumerate_cmd(const Options& o) {
  EnumerationQuery q;
  if (!o.genus) throw MalformedInput("enumerate needs --genus");
  q.genus = *o.genus;
  q.r_max = o.r ? *o.r : default_r(q.genus);
  if (o.side == "graph") q.side = Side::graph;
  else if (o.side == "cover") q.side = Side::cover;
  else if (o.side == "both") q.side = Side::both;
  else throw MalformedInput("--side must be graph, cover or both");
  require_enumerable(q);
  const int r = effective_r(q.genus, q.r_max);
  json body = {{"genus", q.genus}, {"r_max", q.r_max}};
  auto graphs_json = [](const std::vector<GraphStratum>& gs) {
    json out = json::array();
    for (const GraphStratum& s : gs) out.push_back(stratum_json(s));
    return out;
  };
  auto covers_json = [](const std::vector<CanonicalCover>& cs) {
    json out = json::array();
    for (const CanonicalCover& c : cs) out.push_back(json_io::to_json(c.data));
    return out;
  };
  if (q.side == Side::graph) {
    body["graphs"] = graphs_json(enumerate_hyperelliptic_graphs(q.genus, r));
    return {std::move(body)};
  }
  if (q.side == Side::cover) {
    body["covers"] = covers_json(enumerate_cover_data(q.genus, r));
    return {std::move(body)};
  }
  const BijectionReport rep = cross_check(q.genus, r);
  body["graphs"] = graphs_json(rep.graphs);
  body["covers"] = covers_json(rep.covers);
  body["cover_to_graph"] = rep.cover_to_graph;
  body["bijective"] = rep.bijective;
  body["round_trips"] = rep.round_trips;
  body["problems"] = rep.problems;
  return {std::move(body), rep.bijective && rep.round_trips ? kSuccess : kInvalid};
}

inline Outcome dispatch(const Options& o, std::istream& in) {
  if (o.command == "enumerate") return enumerate_cmd(o);
  const json doc = read_document(o, in);
  if (o.command == "validate-graph") return validate_graph_cmd(doc);
  if (o.command == "genus") return genus_cmd(doc);
  if (o.command == "stability") return stability_cmd(o, doc);
  if (o.command == "involutions") return involutions_cmd(doc);
  if (o.command == "quotient") return quotient_cmd(doc);
  if (o.command == "to-cover") return to_cover_cmd(doc);
  if (o.command == "from-cover") return from_cover_cmd(o, doc);
  if (o.command == "validate-cover") return validate_cover_cmd(o, doc);
  if (o.command == "cohomology") return cohomology_cmd(doc);
  if (o.command == "decompose") return decompose_cmd(doc);
  if (o.command == "base-locus") return base_locus_cmd(doc);
  if (o.command == "genus1-classify") return genus1_cmd(doc);
  if (o.command == "deformation") return deformation_cmd(doc);
  throw MalformedInput("unknown subcommand " + o.command);
}

inline json error_body(const std::string& code, const std::string& message) {
  return {{"error", {{"code", code}, {"message", message}}}};
}

}  // namespace detail

// `args` excludes the program name.
inline int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out) {
  Options o;
  CLI::App app{"Hyperelliptic A_r-stable curves as decorated dual graphs"};
  app.name("hyperstack");
  app.add_option("subcommand", o.command, "one of the subcommands")->required()->check(CLI::IsMember(subcommands()));
  app.add_option("--input", o.input, "JSON input file (default: standard input)");
  app.add_option("--genus", o.genus, "genus");
  app.add_option("--r", o.r, "largest singularity type A_r");
  app.add_option("--side", o.side, "enumeration side")->check(CLI::IsMember({"graph", "cover", "both"}));
  app.add_flag("--pretty", o.pretty, "indent the output");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  Outcome result;
  try {
    app.parse(reversed);
    result = detail::dispatch(o, in);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    result = {detail::error_body("usage", e.what()), kMalformed};
  } catch (const MalformedInput& e) {
    result = {detail::error_body("malformed-input", e.what()), kMalformed};
  } catch (const nlohmann::json::exception& e) {
    result = {detail::error_body("malformed-input", e.what()), kMalformed};
  } catch (const Error& e) {
    result = {detail::error_body(e.code(), e.what()), kInvalid};
  } catch (const std::exception& e) {
    result = {detail::error_body("internal", e.what()), kMalformed};
  }
  out << (o.pretty ? result.body.dump(2) : result.body.dump()) << '\n';
  return result.status;
}

}  // namespace hyperstack::cli
