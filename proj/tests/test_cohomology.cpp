#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "support.hpp"

using namespace hyperstack;
using hstest::make_graph;
using C = InvolutionClass;

namespace {

// h^0 on a tree of rational curves by pruning from a root. A subtree hanging
// off a node reports its dimension and whether its sections can be nonzero
// at that node. On a component of degree d with children split into
// surjective and non-surjective ones, the surjective gluings are independent
// and the others impose vanishing at distinct points.
int h0_by_pruning(const TreeBundle& b) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(b.components));
  for (auto [x, y] : b.edges) {
    adj[x].push_back(y);
    adj[y].push_back(x);
  }
  std::function<std::pair<int, bool>(int, int)> walk = [&](int c, int parent) {
    const int free = std::max(0, b.degree[c] + 1);
    int dim = free, surj = 0, dead = 0;
    for (int child : adj[c]) {
      if (child == parent) continue;
      auto [d, s] = walk(child, c);
      dim += d;
      s ? ++surj : ++dead;
    }
    dim -= surj + std::min(dead, free);
    return std::pair{dim, free > dead};
  };
  return walk(0, -1).first;
}

CurveGraph three_node_lines() { return make_graph({0, 0}, {{1, {0, 1}}, {1, {0, 1}}, {1, {0, 1}}}); }

DecoratedInvolution exchange_lines(int points, C cls) {
  DecoratedInvolution inv;
  inv.vertex_map = {1, 0};
  for (int p = 0; p < points; ++p) {
    inv.point_map.push_back(p);
    inv.fixed_points[p] = cls;
  }
  return inv;
}

// Two exchanged lines through one node, each meeting both of `tails`
// elliptic tails; the two nodes of a tail are exchanged.
std::pair<CurveGraph, DecoratedInvolution> lines_with_tails(int joining_r, int tails) {
  CurveGraph g = make_graph({0, 0}, {{joining_r, {0, 1}}});
  DecoratedInvolution inv;
  inv.vertex_map = {1, 0};
  inv.point_map = {0};
  inv.fixed_points[0] = joining_r == 1 ? C::c1 : C::b1;
  for (int t = 0; t < tails; ++t) {
    const int v = g.vertex_count();
    g.vertices.push_back({1});
    inv.vertex_map.push_back(v);
    inv.fixed_vertices[v] = {FixedKind::nontrivial, 0, 4};
    const int p = g.point_count();
    g.points.push_back({1, {v, 0}});
    g.points.push_back({1, {v, 1}});
    inv.point_map.push_back(p + 1);
    inv.point_map.push_back(p);
  }
  return {g, inv};
}

}  // namespace

TEST(MatrixRank, Small) {
  EXPECT_EQ(matrix_rank({{1, 2}, {2, 4}}), 1);
  EXPECT_EQ(matrix_rank({{1, 0}, {0, 1}, {1, 1}}), 2);
  EXPECT_EQ(matrix_rank({}), 0);
  EXPECT_EQ(matrix_rank({{Rational(1) / 3, 1}, {1, 3}}), 1);
}

TEST(H0H1, Examples) {
  EXPECT_EQ(h0_h1(TreeBundle{1, {}, {5}}), (Cohomology{6, 0}));
  EXPECT_EQ(h0_h1(TreeBundle{2, {{0, 1}}, {-1, -1}}), (Cohomology{0, 1}));
  EXPECT_EQ(h0_h1(TreeBundle{2, {{0, 1}}, {0, -1}}), (Cohomology{0, 0}));
  EXPECT_EQ(h0_h1(TreeBundle{3, {{0, 1}, {1, 2}}, {0, -3, 0}}), (Cohomology{0, 2}));
  EXPECT_THROW(h0_h1(TreeBundle{2, {}, {0, 0}}), Error);
}

TEST(H0H1, MatchesPruningOracle) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 400; ++t) {
    const TreeBundle b = hstest::random_tree_bundle(rng, 7, -3, 3);
    const Cohomology c = h0_h1(b, hstest::random_placement(rng, b));
    ASSERT_EQ(c.h0, h0_by_pruning(b));
    ASSERT_EQ(c.h0 - c.h1, euler_characteristic(b));
  }
}

TEST(H0H1, NonnegativeDegreesHaveNoH1) {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 300; ++t) EXPECT_EQ(h0_h1(hstest::random_tree_bundle(rng, 7, 0, 3)).h1, 0);
}

TEST(EvaluationSurjective, Leaves) {
  const TreeBundle b{2, {{0, 1}}, {0, -1}};
  const NodePlacement at = default_placement(b);
  EXPECT_FALSE(evaluation_surjective(b, at, 0, 5));
  const TreeBundle c{2, {{0, 1}}, {1, 0}};
  EXPECT_TRUE(evaluation_surjective(c, default_placement(c), 0, 5));
  EXPECT_THROW(evaluation_surjective(c, default_placement(c), 0, 0), Error);
}

TEST(HodgePieces, Examples) {
  const auto pieces = hodge_pieces(hstest::elliptic_pair());
  ASSERT_EQ(pieces.size(), 2u);
  EXPECT_EQ(pieces[0].genus + pieces[1].genus, 2);
  EXPECT_EQ(hodge_pieces(make_graph({3}, {})).size(), 1u);
  const auto chain = hodge_pieces(make_graph({1, 1, 1}, {{1, {0, 1}}, {1, {1, 2}}}));
  ASSERT_EQ(chain.size(), 3u);
  int total = 0;
  for (const auto& p : chain) total += p.genus;
  EXPECT_EQ(total, 3);
}

TEST(A1Decomposition, Examples) {
  EXPECT_EQ(a1_separating_decomposition(make_graph({0, 0}, {{1, {0, 1}}, {1, {0, 1}}})).pieces.size(), 1u);
  EXPECT_EQ(a1_separating_decomposition(hstest::elliptic_pair()).pieces.size(), 2u);
  const auto star = make_graph({1, 1, 1, 1}, {{1, {0, 1}}, {1, {0, 2}}, {1, {0, 3}}});
  const auto rep = a1_separating_decomposition(star);
  EXPECT_EQ(rep.pieces.size(), 4u);
  EXPECT_EQ(rep.joints.size(), 3u);
  // A separating tacnode does not split.
  EXPECT_EQ(a1_separating_decomposition(make_graph({1, 1}, {{3, {0, 1}}})).pieces.size(), 1u);
}

TEST(ExistDecomposition, ThreeNodes) {
  const auto rep = exist_decomposition(three_node_lines(), exchange_lines(3, C::c1), 0, 1);
  EXPECT_EQ(rep.n, 3);
  EXPECT_EQ(rep.m, 0);
  EXPECT_EQ(arithmetic_genus(three_node_lines()), rep.m + rep.n - 1);
}

TEST(ExistDecomposition, NodeAndTwoTails) {
  const auto [g, inv] = lines_with_tails(1, 2);
  const auto rep = exist_decomposition(g, inv, 0, 1);
  EXPECT_EQ(rep.n, 1);
  EXPECT_EQ(rep.m, 2);
  EXPECT_EQ(rep.genera, (std::vector<int>{1, 1}));
  EXPECT_EQ(arithmetic_genus(g), 4);
}

TEST(ExistDecomposition, TacnodeAndOneTail) {
  const auto [g, inv] = lines_with_tails(3, 1);
  const auto rep = exist_decomposition(g, inv, 1, 0);
  EXPECT_EQ(rep.n, 2);
  EXPECT_EQ(rep.m, 1);
  EXPECT_EQ(arithmetic_genus(g), 3);
}

TEST(ExistDecomposition, ClauseFailures) {
  // Two nodes and nothing else: m + n = 2.
  const auto two = make_graph({0, 0}, {{1, {0, 1}}, {1, {0, 1}}});
  try {
    exist_decomposition(two, exchange_lines(2, C::c1), 0, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "decomposition-violation");
    EXPECT_NE(std::string(e.what()).find("(a)"), std::string::npos);
  }
  EXPECT_THROW(exist_decomposition(hstest::elliptic_pair(), hstest::elliptic_pair_involution(), 0, 1), Error);
}

TEST(BaseLocus, Examples) {
  const BaseLocus pair = canonical_base_locus(hstest::elliptic_pair());
  EXPECT_EQ(pair.points, (std::vector<int>{0}));
  EXPECT_TRUE(pair.vertices.empty());
  const BaseLocus smooth = canonical_base_locus(make_graph({3}, {}));
  EXPECT_TRUE(smooth.points.empty());
  EXPECT_TRUE(smooth.vertices.empty());
  const BaseLocus bridge = canonical_base_locus(make_graph({0, 1, 1}, {{1, {0, 1}}, {1, {0, 2}}}));
  EXPECT_EQ(bridge.points, (std::vector<int>{0, 1}));
  EXPECT_EQ(bridge.vertices, (std::vector<int>{0}));
  // A rational bridge with a non-separating pair of nodes is not in it.
  const BaseLocus cyc = canonical_base_locus(make_graph({0, 1, 1}, {{1, {0, 1}}, {1, {0, 1}}, {1, {0, 2}}}));
  EXPECT_EQ(cyc.points, (std::vector<int>{2}));
  EXPECT_TRUE(cyc.vertices.empty());
}

TEST(BaseLocus, CriteriaAgreeOnRandomGraphs) {
  std::mt19937_64 rng(33);
  for (int t = 0; t < 500; ++t) {
    const CurveGraph g = hstest::random_connected_graph(rng, 6, 5, 2, 3);
    for (int v = 0; v < g.vertex_count(); ++v) ASSERT_EQ(is_type2_component(g, v), is_type2_by_subcurves(g, v));
  }
}

TEST(Genus1, Shapes) {
  EXPECT_EQ(classify_genus1(make_graph({1}, {}, {0, 0}), 0, 1), Genus1Shape::a);
  EXPECT_EQ(classify_genus1(make_graph({0}, {{1, {0, 0}}}, {0, 0}), 0, 1), Genus1Shape::a);
  EXPECT_EQ(classify_genus1(make_graph({0, 1}, {{1, {0, 1}}}, {0, 0}), 0, 1), Genus1Shape::b);
  EXPECT_EQ(classify_genus1(make_graph({0, 1}, {{1, {0, 1}}}, {0, 1}), 0, 1), Genus1Shape::invalid);
  EXPECT_EQ(classify_genus1(make_graph({0, 0}, {{1, {0, 1}}, {1, {0, 1}}}, {0, 1}), 0, 1), Genus1Shape::c);
  EXPECT_EQ(classify_genus1(make_graph({0, 0}, {{1, {0, 1}}, {1, {0, 1}}}, {0, 0}), 0, 1), Genus1Shape::invalid);
  EXPECT_EQ(classify_genus1(make_graph({0, 0}, {{3, {0, 1}}}, {1, 0}), 0, 1), Genus1Shape::d);
  EXPECT_EQ(classify_genus1(make_graph({1}, {}, {0}), 0, 0), Genus1Shape::a);
  EXPECT_THROW(classify_genus1(make_graph({2}, {}, {0, 0}), 0, 1), Error);
  EXPECT_THROW(classify_genus1(make_graph({1}, {}, {0}), 0, 1), Error);
}

TEST(HomOmega, EllipticPair) {
  const HomReport rep = hom_omega_dimensions(hstest::elliptic_pair(), hstest::elliptic_pair_involution());
  ASSERT_EQ(rep.components.size(), 2u);
  EXPECT_EQ(rep.untwisted_total, 2);
  EXPECT_EQ(rep.twisted_total, 0);
  for (const auto& c : rep.components) {
    EXPECT_EQ(c.h, 1);
    EXPECT_EQ(c.n, 1);
    EXPECT_EQ(c.untwisted, 1);
  }
}

TEST(HomOmega, SmoothAndBanana) {
  const auto smooth = make_graph({3}, {});
  const auto inv = find_hyperelliptic_involutions(smooth).at(0);
  EXPECT_EQ(hom_omega_dimensions(smooth, inv).twisted_total, 0);
  EXPECT_EQ(hom_omega_dimensions(three_node_lines(), exchange_lines(3, C::c1)).twisted_total, 0);
}

TEST(Unramified, Certificates) {
  const UnramifiedCertificate pair = unramifiedness_certificate(hstest::elliptic_pair(), hstest::elliptic_pair_involution());
  EXPECT_TRUE(pair.ok);
  for (const auto& a : pair.audit) {
    EXPECT_EQ(a.h, 1);
    EXPECT_EQ(a.n, 1);
    EXPECT_EQ(a.degree, -1);
  }
  const auto smooth = make_graph({3}, {});
  const UnramifiedCertificate s = unramifiedness_certificate(smooth, find_hyperelliptic_involutions(smooth).at(0));
  EXPECT_TRUE(s.ok);
  ASSERT_EQ(s.audit.size(), 1u);
  EXPECT_EQ(s.audit[0].h, 3);
  EXPECT_EQ(s.audit[0].n, 0);
}
