#include <gtest/gtest.h>

#include <random>

#include "localpt/shapes.hpp"

using namespace localpt;

namespace {

std::vector<Box> bl(std::initializer_list<Box> b) { return std::vector<Box>(b); }

// Every subset of the boxes of lambda, filtered by the two predicates.
size_t brute_force_shape_count(const Partition& lambda) {
  auto bs = boxes_of(lambda);
  size_t count = 0;
  for (unsigned mask = 1; mask < (1u << bs.size()); ++mask) {
    std::vector<Box> s;
    for (size_t k = 0; k < bs.size(); ++k)
      if (mask >> k & 1) s.push_back(bs[k]);
    if (is_upward_closed(lambda, s) && is_edge_connected(s)) ++count;
  }
  return count;
}

RPP random_rpp(std::mt19937_64& rng, const Partition& lambda, int max_entry) {
  auto bs = boxes_of(lambda);
  RPP n(bs.size(), 0);
  for (size_t k = 0; k < bs.size(); ++k) {
    int lo = 0;
    if (bs[k].i > 0) lo = std::max(lo, n[box_index(lambda, {bs[k].i - 1, bs[k].j})]);
    if (bs[k].j > 0) lo = std::max(lo, n[box_index(lambda, {bs[k].i, bs[k].j - 1})]);
    n[k] = std::uniform_int_distribution<int>(lo, std::max(lo, max_entry))(rng);
  }
  return n;
}

}  // namespace

TEST(Shapes, PartitionEnumeration) {
  EXPECT_EQ(partitions_of(0), std::vector<Partition>{Partition{}});
  EXPECT_EQ(partitions_of(3), (std::vector<Partition>{{3}, {2, 1}, {1, 1, 1}}));
  EXPECT_EQ(partitions_of(5).size(), 7u);
  EXPECT_EQ(partitions_of(8).size(), 22u);
}

TEST(Shapes, ConjugateOfFigureExample) {
  EXPECT_EQ(conjugate_and_stats({4, 2, 2, 1}).conjugate, (Partition{4, 3, 1, 1}));
}

TEST(Shapes, SmallStatistics) {
  auto one = conjugate_and_stats({1});
  EXPECT_EQ(one.n, 0);
  EXPECT_EQ(one.n_conjugate, 0);
  auto col = conjugate_and_stats({1, 1});
  EXPECT_EQ(col.n, 1);
  EXPECT_EQ(col.conjugate, Partition{2});
  EXPECT_EQ(col.n_conjugate, 0);
}

TEST(Shapes, ConjugationIsInvolutionAndColumnStatisticAgrees) {
  for (int d = 0; d <= 8; ++d)
    for (const auto& p : partitions_of(d)) {
      auto st = conjugate_and_stats(p);
      EXPECT_EQ(conjugate_and_stats(st.conjugate).conjugate, p);
      int col = 0;
      for (const Box& b : boxes_of(p)) col += b.j;
      EXPECT_EQ(st.n_conjugate, col);
      EXPECT_EQ(conjugate_and_stats(st.conjugate).n, st.n_conjugate);
    }
}

TEST(Shapes, SkewShapeExamples) {
  auto one = connected_skew_shapes({1});
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].boxes, bl({{0, 0}}));
  auto two = connected_skew_shapes({2});
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0].boxes, bl({{0, 1}}));
  EXPECT_EQ(two[1].boxes, bl({{0, 0}, {0, 1}}));
  auto hook = connected_skew_shapes({2, 1});
  ASSERT_EQ(hook.size(), 3u);
  EXPECT_EQ(hook[0].boxes, bl({{0, 1}}));
  EXPECT_EQ(hook[1].boxes, bl({{1, 0}}));
  EXPECT_EQ(hook[2].boxes, bl({{0, 0}, {0, 1}, {1, 0}}));
  EXPECT_EQ(hook[2].mu, Partition{});
  EXPECT_EQ(hook[0].mu, (Partition{1, 1}));
}

TEST(Shapes, SkewShapesMatchBruteForce) {
  for (int d = 1; d <= 6; ++d)
    for (const auto& p : partitions_of(d)) {
      auto shapes = connected_skew_shapes(p);
      EXPECT_EQ(shapes.size(), brute_force_shape_count(p)) << partition_string(p);
      for (const auto& s : shapes) {
        EXPECT_TRUE(is_upward_closed(p, s.boxes));
        EXPECT_TRUE(is_edge_connected(s.boxes));
      }
      EXPECT_EQ(connected_skew_shapes(conjugate_and_stats(p).conjugate).size(), shapes.size());
    }
  EXPECT_EQ(connected_skew_shapes({2, 2}).size(), 5u);
  EXPECT_EQ(connected_skew_shapes({3, 1}).size(), 4u);
}

TEST(Shapes, DecomposeExamples) {
  EXPECT_EQ(decompose_rpp({2, 1}, {0, 0, 0}), (SkewMultiplicity{0, 0, 0}));
  EXPECT_EQ(decompose_rpp({2, 1}, {1, 1, 1}), (SkewMultiplicity{0, 0, 1}));
  EXPECT_EQ(decompose_rpp({2}, {0, 1}), (SkewMultiplicity{1, 0}));
  EXPECT_THROW(decompose_rpp({2}, {1, 0}), std::invalid_argument);
}

TEST(Shapes, DecomposeReconstitutesRandomRpps) {
  std::mt19937_64 rng(21);
  for (int d = 1; d <= 6; ++d)
    for (const auto& p : partitions_of(d)) {
      auto shapes = connected_skew_shapes(p);
      for (int k = 0; k < 10; ++k) {
        RPP n = random_rpp(rng, p, 3);
        ASSERT_TRUE(is_rpp(p, n));
        EXPECT_EQ(box_sums(p, shapes, decompose_rpp(p, n)), n);
      }
    }
}

TEST(Shapes, ZeroOneFillingsDecomposeUniquely) {
  for (int d = 1; d <= 5; ++d)
    for (const auto& p : partitions_of(d)) {
      auto shapes = connected_skew_shapes(p);
      auto all = multiplicities_up_to(shapes, d);
      for (unsigned mask = 0; mask < (1u << d); ++mask) {
        RPP n(d);
        int total = 0;
        for (int k = 0; k < d; ++k) total += n[k] = (mask >> k) & 1;
        if (!is_rpp(p, n)) continue;
        int hits = 0;
        for (const auto& m : all)
          if (weight(shapes, m) == total && box_sums(p, shapes, m) == n) ++hits;
        EXPECT_EQ(hits, 1);
        EXPECT_EQ(box_sums(p, shapes, decompose_rpp(p, n)), n);
      }
    }
}

TEST(Shapes, ExpectedDimensionExamples) {
  EXPECT_EQ(expected_dimension({2, 1}, {0, 0, 0}), 0);
  for (int k = 0; k < 5; ++k) EXPECT_EQ(expected_dimension({1}, {k}), k);
  // (2) with n=(0,1): n00 + (n01 - n00) = 1
  EXPECT_EQ(expected_dimension({2}, {0, 1}), 1);
}

TEST(Shapes, MultiplicityEnumerationRespectsWeight) {
  auto shapes = connected_skew_shapes({2});
  auto all = multiplicities_up_to(shapes, 3);
  // weights: shape sizes 1 and 2; pairs (a,b) with a + 2b <= 3
  EXPECT_EQ(all.size(), 6u);
  for (const auto& m : all) EXPECT_LE(weight(shapes, m), 3);
}
