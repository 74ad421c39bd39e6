#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "setval/core.hpp"

using namespace setval;

namespace {

BoxSet iv(double lo, double hi, bool lc, bool hc) {
  return BoxSet::of({FlaggedInterval(lo, hi, lc, hc)});
}
BoxSet closed(double lo, double hi) { return iv(lo, hi, true, true); }
BoxSet open(double lo, double hi) { return iv(lo, hi, false, false); }

// Random raw box lists with endpoints on the quarter lattice of [-1, 3].
std::vector<Box> random_boxes(std::mt19937_64& rng, std::size_t dim, std::size_t count) {
  std::uniform_int_distribution<int> q(-4, 12);
  std::bernoulli_distribution flag(0.5);
  std::vector<Box> out;
  while (out.size() < count) {
    Box b;
    for (std::size_t k = 0; k < dim; ++k) {
      int a = q(rng), c = q(rng);
      if (a > c) std::swap(a, c);
      if (a == c) {
        b.push_back(FlaggedInterval::point(a / 4.0));
      } else {
        b.emplace_back(a / 4.0, c / 4.0, flag(rng), flag(rng));
      }
    }
    out.push_back(b);
  }
  return out;
}

bool raw_contains(const std::vector<Box>& boxes, const Point& p) {
  return std::any_of(boxes.begin(), boxes.end(), [&](const Box& b) { return box_contains(b, p); });
}

// Sample lattice on eighths: hits every endpoint and every gap midpoint.
std::vector<Point> sample_points(std::size_t dim) {
  std::vector<Point> pts{{}};
  for (std::size_t k = 0; k < dim; ++k) {
    std::vector<Point> next;
    for (const auto& p : pts) {
      for (int i = -10; i <= 26; ++i) {
        Point q = p;
        q.push_back(i / 8.0);
        next.push_back(q);
      }
    }
    pts = std::move(next);
  }
  return pts;
}

}  // namespace

TEST(FlaggedInterval, RejectsEmptyDescriptions) {
  EXPECT_THROW(FlaggedInterval(1, 0, true, true), std::invalid_argument);
  EXPECT_THROW(FlaggedInterval(1, 1, true, false), std::invalid_argument);
  EXPECT_FALSE(FlaggedInterval::make(1, 1, false, true).has_value());
  EXPECT_TRUE(FlaggedInterval::make(1, 1, true, true).has_value());
}

TEST(FlaggedInterval, IntersectAtSharedEndpoint) {
  EXPECT_FALSE(intersect(FlaggedInterval(0, 1, true, false), FlaggedInterval::closed(1, 2)));
  auto one = intersect(FlaggedInterval::closed(0, 1), FlaggedInterval::closed(1, 2));
  ASSERT_TRUE(one);
  EXPECT_EQ(*one, FlaggedInterval::point(1));
}

TEST(Dilate, QuarterAroundThreeHalves) {
  EXPECT_EQ(dilate(closed(1.5, 2), 0.25), open(1.25, 2.25));
}

TEST(Dilate, OpenUnitInterval) {
  for (double eps : {0.1, 0.5, 1.0}) EXPECT_EQ(dilate(open(0, 1), eps), open(-eps, 1 + eps));
}

TEST(Dilate, EmptyStaysEmpty) { EXPECT_TRUE(dilate(BoxSet(1), 1.0).empty()); }

TEST(Dilate, RejectsNonPositiveEps) { EXPECT_THROW(dilate(closed(0, 1), 0.0), std::invalid_argument); }

TEST(Intersect, DilatedUnitMeetsOne) {
  for (double eps : {0.1, 0.5, 1.0, 3.0}) {
    EXPECT_EQ(intersect(open(-eps, 1 + eps), closed(1, 1)), closed(1, 1));
  }
}

TEST(Intersect, ClipsToCompactTarget) {
  for (double eps : {0.25, 0.5, 1.0, 1.5}) {
    EXPECT_EQ(intersect(open(1.5 - eps, 2 + eps), closed(0, 2)), iv(1.5 - eps, 2, false, true));
  }
}

TEST(Intersect, Idempotent) {
  const BoxSet a = unite(open(0, 1), closed(2, 3));
  EXPECT_EQ(intersect(a, a), a);
}

TEST(Intersect, DimensionMismatchThrows) {
  EXPECT_THROW(intersect(closed(0, 1), BoxSet(2)), DimensionError);
}

TEST(Closure, FlipsFlags) {
  EXPECT_EQ(closure(iv(1.25, 2, false, true)), closed(1.25, 2));
  EXPECT_EQ(closure(closed(1, 1)), closed(1, 1));
}

TEST(Closure, AdjacentPiecesMerge) {
  const BoxSet s = unite(open(0, 1), iv(1, 2, true, false));
  // Oracle: p is in the closure iff its distance to some raw interval is 0.
  for (int i = -8; i <= 24; ++i) {
    const double p = i / 8.0;
    const bool expect = (p >= 0 && p <= 1) || (p >= 1 && p <= 2);
    EXPECT_EQ(closure(s).contains(Point{p}), expect) << p;
  }
  EXPECT_EQ(closure(s), closed(0, 2));
}

TEST(Predicates, Examples) {
  EXPECT_FALSE(open(0, 1).contains(Point{0.0}));
  EXPECT_TRUE(subset_within(closed(1.5, 2), closed(0, 2), 0));
  // Oracle: max over a dense sample of [3,4] of the distance to [0,2].
  double brute = 0;
  for (int i = 0; i <= 1000; ++i) brute = std::max(brute, 3 + i / 1000.0 - 2);
  EXPECT_DOUBLE_EQ(hausdorff_upper(closed(3, 4), closed(0, 2)), brute);
}

TEST(Predicates, ExcessOverEmptyIsUndefined) {
  EXPECT_THROW(hausdorff_upper(closed(0, 1), BoxSet(1)), std::invalid_argument);
  EXPECT_EQ(hausdorff_upper(BoxSet(1), BoxSet(1)), 0.0);
}

TEST(Predicates, SubsetWithinTolerance) {
  EXPECT_FALSE(subset_within(closed(0, 1.25), closed(0, 1), 0));
  EXPECT_TRUE(subset_within(closed(0, 1.25), closed(0, 1), 0.25));
  EXPECT_FALSE(subset_within(closed(0, 1.25), closed(0, 1), 0.125));
}

TEST(Grid, PointsAndCounts) {
  Grid g({0, 0}, {1, 0.5}, 0.25);
  EXPECT_EQ(g.size(), 15u);
  EXPECT_EQ(g.points().front(), (Point{0, 0}));
  EXPECT_EQ(g.points().back(), (Point{1, 0.5}));
  EXPECT_EQ(g.points_in(BoxSet::of({FlaggedInterval::open(0, 1), FlaggedInterval::open(0, 0.5)}))
                .size(),
            3u);
  EXPECT_THROW(Grid({0}, {1}, 0), std::invalid_argument);
}

class RandomBoxSets : public ::testing::TestWithParam<std::size_t> {};

TEST_P(RandomBoxSets, CanonicalFormPreservesMembership) {
  std::mt19937_64 rng(GetParam());
  for (std::size_t dim : {1u, 2u}) {
    const auto pts = sample_points(dim);
    for (int trial = 0; trial < 10; ++trial) {
      auto raw = random_boxes(rng, dim, 1 + trial % 4);
      BoxSet s(dim, raw);
      for (const auto& p : pts) ASSERT_EQ(s.contains(p), raw_contains(raw, p));
      // idempotence
      EXPECT_EQ(BoxSet(dim, s.boxes()), s);
    }
  }
}

TEST_P(RandomBoxSets, BooleanOperationsMatchMembership) {
  std::mt19937_64 rng(GetParam() + 100);
  for (std::size_t dim : {1u, 2u}) {
    const auto pts = sample_points(dim);
    for (int trial = 0; trial < 6; ++trial) {
      auto ra = random_boxes(rng, dim, 3), rb = random_boxes(rng, dim, 2), rc = random_boxes(rng, dim, 2);
      BoxSet a(dim, ra), b(dim, rb), c(dim, rc);
      BoxSet i = intersect(a, b), u = unite(a, b), d = difference(a, b);
      for (const auto& p : pts) {
        const bool in_a = raw_contains(ra, p), in_b = raw_contains(rb, p);
        ASSERT_EQ(i.contains(p), in_a && in_b);
        ASSERT_EQ(u.contains(p), in_a || in_b);
        ASSERT_EQ(d.contains(p), in_a && !in_b);
      }
      EXPECT_EQ(intersect(a, b), intersect(b, a));
      EXPECT_EQ(intersect(intersect(a, b), c), intersect(a, intersect(b, c)));
      EXPECT_EQ(subset(i, a), true);
      EXPECT_EQ(subset(a, u), true);
    }
  }
}

TEST_P(RandomBoxSets, DilationProperties) {
  std::mt19937_64 rng(GetParam() + 200);
  for (std::size_t dim : {1u, 2u}) {
    for (int trial = 0; trial < 8; ++trial) {
      BoxSet s(dim, random_boxes(rng, dim, 3));
      const double e1 = 0.125, e2 = 0.375;
      EXPECT_TRUE(subset(dilate(s, e1), dilate(s, e2)));
      EXPECT_TRUE(subset(dilate(s, e1), closure(dilate(s, e1))));
      EXPECT_EQ(hausdorff_upper(s, dilate(s, e2)), 0.0);
      EXPECT_LE(hausdorff_upper(dilate(s, e2), s), e2 * std::sqrt(double(dim)) + 1e-12);
      EXPECT_TRUE(subset_within(dilate(s, e1), s, e1));
    }
  }
}

TEST_P(RandomBoxSets, ExcessZeroIffClosureInclusion) {
  std::mt19937_64 rng(GetParam() + 300);
  for (std::size_t dim : {1u, 2u}) {
    for (int trial = 0; trial < 10; ++trial) {
      BoxSet a(dim, random_boxes(rng, dim, 2)), b(dim, random_boxes(rng, dim, 3));
      EXPECT_EQ(hausdorff_upper(a, b) == 0.0, subset(closure(a), closure(b)));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomBoxSets, ::testing::Values(1u, 2u, 3u, 4u));
