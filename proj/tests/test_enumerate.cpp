#include <gtest/gtest.h>

#include <algorithm>

#include "support.hpp"

using namespace hyperstack;
using hstest::make_graph;

namespace {

bool contains_graph(const std::vector<GraphStratum>& list, const CurveGraph& g) {
  const CanonicalKey k = canonical_key(g);
  return std::any_of(list.begin(), list.end(), [&](const GraphStratum& s) { return s.graph.key == k; });
}

}  // namespace

// Stable graphs with only nodes: 7 in genus 2 and 42 in genus 3.
TEST(StableGraphs, NodalCounts) {
  EXPECT_EQ(enumerate_stable_graphs(2, 1).size(), 7u);
  EXPECT_EQ(enumerate_stable_graphs(3, 1).size(), 42u);
}

TEST(StableGraphs, AreStableAndDistinct) {
  for (int r : {1, 3, 5}) {
    const auto list = enumerate_stable_graphs(2, r);
    for (std::size_t i = 0; i < list.size(); ++i) {
      EXPECT_TRUE(is_stable(list[i].graph, r).ok);
      EXPECT_EQ(arithmetic_genus(list[i].graph), 2);
      if (i > 0) EXPECT_LT(list[i - 1].key, list[i].key);
    }
  }
}

TEST(StableGraphs, EveryGenusTwoGraphIsHyperelliptic) {
  for (int r = 1; r <= 5; ++r)
    EXPECT_EQ(enumerate_hyperelliptic_graphs(2, r).size(), enumerate_stable_graphs(2, r).size()) << r;
}

TEST(HyperellipticGraphs, GenusTwoExamples) {
  const auto list = enumerate_hyperelliptic_graphs(2, 1);
  EXPECT_TRUE(contains_graph(list, hstest::elliptic_pair()));
  EXPECT_TRUE(contains_graph(list, make_graph({1, 0}, {{1, {0, 1}}, {1, {1, 1}}})));
  EXPECT_TRUE(contains_graph(list, make_graph({0, 0}, {{1, {0, 1}}, {1, {0, 1}}, {1, {0, 1}}})));
}

TEST(CoverData, GenusThreeContainsCollidedBranchPoints) {
  const CanonicalKey k = canonical_key(hstest::single_component(-8, {2, 2, 4}));
  const auto list = enumerate_cover_data(3, 3);
  EXPECT_TRUE(std::any_of(list.begin(), list.end(), [&](const CanonicalCover& c) { return c.key == k; }));
  for (const auto& c : list) {
    EXPECT_TRUE(validate_cover_data(c.data, 3, 3).ok());
  }
}

TEST(CrossCheck, GenusTwoAllTypes) {
  for (int r = 1; r <= 5; r += 2) {
    const BijectionReport rep = cross_check(2, r);
    EXPECT_TRUE(rep.bijective) << r;
    EXPECT_TRUE(rep.round_trips) << r;
    EXPECT_TRUE(rep.problems.empty());
    EXPECT_EQ(rep.graphs.size(), rep.covers.size());
  }
}

TEST(CrossCheck, GenusThreeNodal) {
  const BijectionReport rep = cross_check(3, 1);
  EXPECT_TRUE(rep.bijective);
  EXPECT_TRUE(rep.round_trips);
}

TEST(Query, Limits) {
  EXPECT_THROW(require_enumerable({5, 1, Side::both}), Error);
  EXPECT_THROW(require_enumerable({3, 10, Side::both}), Error);
  EXPECT_THROW(require_enumerable({1, 1, Side::both}), Error);
  EXPECT_NO_THROW(require_enumerable({4, 9, Side::graph}));
  EXPECT_EQ(effective_r(2, 9), 5);
  EXPECT_EQ(effective_r(3, 2), 2);
}

TEST(Partitions, Colexicographic) {
  std::vector<std::vector<int>> seen;
  detail::for_each_partition(4, 4, [&](const std::vector<int>& p) { seen.push_back(p); });
  EXPECT_EQ(seen.size(), 5u);
  std::vector<std::vector<int>> capped;
  detail::for_each_partition(4, 2, [&](const std::vector<int>& p) { capped.push_back(p); });
  EXPECT_EQ(capped.size(), 3u);
}

TEST(LabelledTrees, Cayley) {
  for (int k = 1; k <= 5; ++k) {
    std::size_t expected = 1;
    for (int i = 0; i < k - 2; ++i) expected *= k;
    EXPECT_EQ(detail::labelled_trees(k).size(), expected);
  }
}
