#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace hyperstack;
using hstest::make_graph;
using hstest::single_component;

namespace {

CoverData two_components(std::array<int, 2> deg2L, bool stacky, std::array<int, 2> node_orders,
                         std::vector<int> left, std::vector<int> right) {
  CoverData d;
  d.components = 2;
  d.nodes = {{{0, 1}, stacky}};
  d.deg2L = {deg2L[0], deg2L[1]};
  d.smooth_orders = {std::move(left), std::move(right)};
  d.node_orders = {node_orders};
  return d;
}

// Euler characteristic read as sum of (floor(deg L) + 1) minus non-stacky
// nodes, with deg L = deg2L / 2.
int floor_formula(const CoverData& d) {
  int chi = -nonstacky_count(d);
  for (int x : d.deg2L) chi += static_cast<int>(std::floor(x / 2.0)) + 1;
  return chi;
}

bool has_reason(const std::vector<std::string>& reasons, const std::string& tag) {
  for (const auto& r : reasons)
    if (r.rfind(tag, 0) == 0) return true;
  return false;
}

}  // namespace

TEST(ValidateCover, SmoothHyperelliptic) {
  for (int g = 2; g <= 4; ++g)
    for (int r = 0; r <= 9; ++r) {
      const CoverVerdict v = validate_cover_data(single_component(-2 * (g + 1), std::vector<int>(2 * g + 2, 1)), g, r);
      EXPECT_TRUE(v.ok()) << g << " " << r;
    }
}

TEST(ValidateCover, OrderBeyondRPlusOne) {
  const int r = 2;
  const CoverData d = single_component(-(r + 2) - 4, {r + 2, 1, 1, 1, 1});
  const CoverVerdict v = validate_cover_data(d, -euler_characteristic(d), r);
  EXPECT_FALSE(v.ok());
  EXPECT_TRUE(has_reason(v.reasons(), "(b3)"));
}

TEST(ValidateCover, TacnodeOverNode) {
  // deg L = (-1, -2) is prestable with genus 2 but fails (c1) on the left.
  const CoverData thin = two_components({-2, -4}, false, {1, 1}, {1}, {1, 1, 1});
  const CoverVerdict tv = validate_cover_data(thin, 2, 3);
  EXPECT_TRUE(tv.structure.ok);
  EXPECT_TRUE(tv.prestable.ok);
  EXPECT_FALSE(tv.stable.ok);
  EXPECT_TRUE(has_reason(tv.reasons(), "(c1)"));
  // deg L = (-2, -2) is valid in genus 3.
  const CoverData d = two_components({-4, -4}, false, {1, 1}, {1, 1, 1}, {1, 1, 1});
  EXPECT_TRUE(validate_cover_data(d, 3, 3).ok());
  EXPECT_FALSE(validate_cover_data(d, 3, 2).ok());
  const CoverResult c = build_cover(d, 3);
  int tacnodes = 0;
  for (const Point& p : c.curve.points) tacnodes += p.r == 3;
  EXPECT_EQ(tacnodes, 1);
}

TEST(ValidateCover, StructureFailures) {
  EXPECT_FALSE(validate_cover_structure(single_component(-4, {2, 1, 1, 1})).ok);  // balance
  EXPECT_FALSE(validate_cover_structure(single_component(-3, {1, 1, 1})).ok);     // parity
  EXPECT_FALSE(validate_cover_structure(single_component(-4, {5, -1})).ok);       // negative order
  CoverData stacky = two_components({-3, -3}, true, {1, 0}, {1, 1}, {1, 1, 1});
  EXPECT_FALSE(validate_cover_structure(stacky).ok);
  CoverData cyc = two_components({-2, -2}, false, {0, 0}, {1, 1}, {1, 1});
  cyc.nodes.push_back({{0, 1}, false});
  cyc.node_orders.push_back({0, 0});
  EXPECT_FALSE(validate_cover_structure(cyc).ok);
}

TEST(EulerCharacteristic, Examples) {
  EXPECT_EQ(euler_characteristic(single_component(-8, {2, 2, 2, 2})), -3);
  EXPECT_EQ(euler_characteristic(two_components({-3, -3}, true, {0, 0}, {1, 2}, {1, 2})), -2);
  // deg L = (-1, -3) across a plain node: 0 + (-2) - 1.
  const CoverData plain = two_components({-2, -6}, false, {0, 0}, {1, 1}, {1, 1, 1, 1, 1, 1});
  EXPECT_EQ(euler_characteristic(plain), -3);
  EXPECT_EQ(arithmetic_genus(build_cover(plain, 1).curve), 3);
}

// Two stacky nodes on one component: the floor reading undercounts there.
TEST(EulerCharacteristic, FloorReadingFailsOnTwoStackyNodes) {
  const CurveGraph chain = make_graph({1, 1, 1}, {{1, {0, 1}}, {1, {1, 2}}});
  const auto invs = find_hyperelliptic_involutions(chain);
  ASSERT_EQ(invs.size(), 1u);
  const CoverData d = extract_cover_data(chain, invs[0]);
  EXPECT_EQ(d.components, 3);
  EXPECT_EQ(euler_characteristic(d), -arithmetic_genus(chain));
  EXPECT_EQ(floor_formula(d), -2);
  EXPECT_NE(floor_formula(d), -arithmetic_genus(chain));
}

TEST(EulerCharacteristic, FloorReadingAgreesWithAtMostOneStackyNode) {
  for (const auto& d : {single_component(-8, {2, 2, 2, 2}), two_components({-3, -3}, true, {0, 0}, {1, 2}, {1, 2}),
                        two_components({-4, -4}, false, {1, 1}, {1, 1, 1}, {1, 1, 1})})
    EXPECT_EQ(floor_formula(d), euler_characteristic(d));
}

TEST(BuildCover, FourNodeBanana) {
  const CoverResult c = build_cover(single_component(-8, {2, 2, 2, 2}), 1);
  EXPECT_EQ(c.genus, 3);
  EXPECT_EQ(c.curve.vertex_count(), 2);
  ASSERT_EQ(c.curve.point_count(), 4);
  for (const Point& p : c.curve.points) {
    EXPECT_EQ(p.r, 1);
    EXPECT_TRUE(p.joins_distinct());
  }
  EXPECT_EQ(c.involution.vertex_map, (std::vector<int>{1, 0}));
  EXPECT_TRUE(is_hyperelliptic(c.curve, c.involution));
}

TEST(BuildCover, TwoNodesCollideIntoTacnode) {
  const CoverResult c = build_cover(single_component(-8, {2, 2, 4}), 3);
  EXPECT_EQ(c.genus, 3);
  EXPECT_EQ(arithmetic_genus(c.curve), 3);
  std::vector<int> types;
  for (const Point& p : c.curve.points) types.push_back(p.r);
  std::sort(types.begin(), types.end());
  EXPECT_EQ(types, (std::vector<int>{1, 1, 3}));
  EXPECT_THROW(build_cover(single_component(-8, {2, 2, 4}), 2), Error);
}

TEST(BuildCover, SmoothGenusTwo) {
  const CoverResult c = build_cover(single_component(-6, {1, 1, 1, 1, 1, 1}), 0);
  ASSERT_EQ(c.curve.vertex_count(), 1);
  EXPECT_EQ(c.curve.vertices[0].geom_genus, 2);
  EXPECT_EQ(c.involution.fixed_vertices.at(0).smooth_fixed, 6);
}

TEST(RoundTrip, BuiltExamples) {
  const std::vector<std::pair<CoverData, int>> cases = {
      {single_component(-8, {2, 2, 2, 2}), 1},
      {single_component(-8, {2, 2, 4}), 3},
      {single_component(-6, {1, 1, 1, 1, 1, 1}), 0},
      {two_components({-3, -3}, true, {0, 0}, {1, 2}, {1, 2}), 1},
      {two_components({-4, -4}, false, {1, 1}, {1, 1, 1}, {1, 1, 1}), 3},
      {single_component(-8, {3, 5}), 4},
  };
  for (const auto& [d, r] : cases) {
    const CoverResult c = build_cover(d, r);
    EXPECT_EQ(canonical_key(extract_cover_data(c.curve, c.involution)), canonical_key(d));
  }
}

TEST(ExtractCover, EllipticPair) {
  const CoverData d = extract_cover_data(hstest::elliptic_pair(), hstest::elliptic_pair_involution());
  EXPECT_EQ(d.components, 2);
  ASSERT_EQ(d.nodes.size(), 1u);
  EXPECT_TRUE(d.nodes[0].stacky);
  EXPECT_EQ(d.deg2L, (std::vector<int>{-3, -3}));
}

TEST(ExtractCover, SmoothGenusThree) {
  const auto g = make_graph({3}, {});
  const CoverData d = extract_cover_data(g, find_hyperelliptic_involutions(g).at(0));
  EXPECT_EQ(d.deg2L, (std::vector<int>{-8}));
  EXPECT_EQ(d.smooth_orders[0], std::vector<int>(8, 1));
}

TEST(ExtractCover, RejectsNonHyperelliptic) {
  const auto g = make_graph({0, 0}, {{1, {0, 1}}, {1, {0, 1}}, {1, {0, 1}}, {1, {0, 1}}});
  DecoratedInvolution inv{{1, 0}, {1, 0, 3, 2}, {}, {}};
  EXPECT_THROW(extract_cover_data(g, inv), Error);
}
