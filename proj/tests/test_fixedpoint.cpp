#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "setval/builtin.hpp"
#include "setval/economy.hpp"
#include "setval/fixedpoint.hpp"

using namespace setval;

namespace {

using FI = FlaggedInterval;

BoxSet line(FI iv) { return BoxSet::of({iv}); }

// y in cl Gr T at x, judged from values at x + h e, e in {-1,0,1}^d.
bool near_graph(const PiecewiseMap& t, const Point& x, const Point& y) {
  const double h = std::ldexp(1.0, -20);
  std::size_t combos = 1;
  for (std::size_t k = 0; k < x.size(); ++k) combos *= 3;
  for (std::size_t c = 0; c < combos; ++c) {
    Point xp = x;
    std::size_t r = c;
    for (auto& v : xp) {
      v += h * (double(r % 3) - 1.0);
      r /= 3;
    }
    if (!t.domain().contains(xp)) continue;
    const BoxSet v = t.evaluate(xp);
    if (!v.empty() && distance(y, v) <= (t.slope_modulus() + 1) * h * x.size()) return true;
  }
  return false;
}

// Q_V recomputed point by point from the definition.
std::vector<Point> brute_qv(const ProductMap& s, double eps, const Grid& grid) {
  std::vector<PiecewiseMap> tv;
  for (std::size_t i = 0; i < s.size(); ++i) tv.push_back(t_upper(s.factor(i), eps, s.target(i)));
  std::vector<Point> out;
  for (const auto& x : grid.points_in(s.target_product())) {
    bool all = true;
    for (std::size_t i = 0; i < s.size() && all; ++i) all = near_graph(tv[i], x, s.own(i, x));
    if (all) out.push_back(x);
  }
  return out;
}

bool has(const std::vector<Point>& pts, const Point& p) {
  return std::find(pts.begin(), pts.end(), p) != pts.end();
}

ProductMap example_2_1_product() {
  return ProductMap({example_2_1_map()}, {example_2_1_target()});
}

ProductMap example_4_1_product() { return selection_product(example_4_1_economy(2)); }

}  // namespace

TEST(QvSet, ExampleTwoOneIsOne) {
  const Grid g({0}, {2}, 1.0 / 64);
  for (double eps : {1.0, 0.5, 0.1}) {
    const QvSet q = fixed_points_of_approximation(example_2_1_product(), eps, g);
    EXPECT_EQ(q.points, (std::vector<Point>{{1.0}}));
    EXPECT_EQ(q.points, brute_qv(example_2_1_product(), eps, g));
  }
}

TEST(QvSet, ConstantFactors) {
  const BoxSet dom = BoxSet::of({FI::closed(0, 2), FI::closed(0, 2)});
  const ProductMap s({constant_map(dom, line(FI::point(0.5))), constant_map(dom, line(FI::point(1.25)))},
                     {line(FI::closed(0, 2)), line(FI::closed(0, 2))});
  const Grid g({0, 0}, {2, 2}, 0.125);
  // Q_V is the closed eps-box around c; it shrinks to {c} once eps is below
  // the grid step.
  const QvSet q = fixed_points_of_approximation(s, 0.25, g);
  EXPECT_EQ(q.points, brute_qv(s, 0.25, g));
  EXPECT_EQ(q.points, g.points_in(BoxSet::of({FI::closed(0.25, 0.75), FI::closed(1, 1.5)})));
  const ChainResult r = intersect_qv_chain(s, {0.5, 0.25, 0.0625}, g);
  ASSERT_EQ(r.points.size(), 1u);
  EXPECT_EQ(r.points[0].x, (Point{0.5, 1.25}));
  EXPECT_TRUE(r.points[0].certified);
}

TEST(QvSet, ExampleFourOneConstructionMatchesBruteForce) {
  const ProductMap s = example_4_1_product();
  const Grid g({0, 0}, {2, 2}, 0.125);
  const QvSet q = fixed_points_of_approximation(s, 0.25, g);
  EXPECT_TRUE(has(q.points, {1.5, 1.5}));
  EXPECT_EQ(q.points, brute_qv(s, 0.25, g));
}

TEST(QvSet, GridMustCoverTarget) {
  EXPECT_THROW(fixed_points_of_approximation(example_2_1_product(), 0.5, Grid({0}, {0.5}, 0.125)),
               std::invalid_argument);
}

TEST(Chain, ExampleTwoOneCertifiedOne) {
  const ChainResult r = intersect_qv_chain(example_2_1_product(), {1, 0.5, 0.25}, Grid({0}, {2}, 1.0 / 64));
  ASSERT_EQ(r.points.size(), 1u);
  EXPECT_EQ(r.points[0].x, Point{1.0});
  EXPECT_TRUE(r.points[0].certified);
  // 1 lies in the adherence of T1 at 1, which is [0, 2]
  EXPECT_EQ(adherence(example_2_1_map()).evaluate(Point{1.0}), line(FI::closed(0, 2)));
  EXPECT_TRUE(r.nested);
}

TEST(Chain, ExampleFourOneContainsCertifiedEquilibrium) {
  const ProductMap s = example_4_1_product();
  const ChainResult r = intersect_qv_chain(s, {0.5, 0.25, 0.125}, Grid({0, 0}, {2, 2}, 0.125));
  auto it = std::find_if(r.points.begin(), r.points.end(),
                         [](const ChainPoint& p) { return p.x == Point{1.5, 1.5}; });
  ASSERT_NE(it, r.points.end());
  EXPECT_TRUE(it->certified);
  EXPECT_TRUE(r.nested);
  // Certificates re-checked through the adherence maps.
  std::vector<PiecewiseMap> adh;
  for (std::size_t i = 0; i < s.size(); ++i) adh.push_back(adherence(s.factor(i)));
  for (const auto& p : r.points) {
    bool all = true;
    for (std::size_t i = 0; i < s.size(); ++i) all = all && adh[i].evaluate(p.x).contains(s.own(i, p.x));
    EXPECT_EQ(p.certified, all);
  }
}

TEST(Chain, NestingForBuiltins) {
  const AbstractEconomy e = example_4_1_economy(2);
  const ProductMap budgets({e.agent(0).b, e.agent(1).b}, {e.agent(0).target, e.agent(1).target});
  const std::vector<double> chain{0.5, 0.25, 0.125, 0.0625};
  for (const ProductMap& s : {example_2_1_product(), example_4_1_product(), budgets}) {
    const Grid g = Grid::covering(s.target_product(), s.domain().dim() == 1 ? 1.0 / 64 : 0.125);
    const ChainResult r = intersect_qv_chain(s, chain, g);
    EXPECT_TRUE(r.nested);
    for (std::size_t k = 1; k < r.sets.size(); ++k) {
      for (const auto& x : r.sets[k].points) EXPECT_TRUE(has(r.sets[k - 1].points, x));
    }
  }
}

TEST(Chain, RejectsShortChain) {
  EXPECT_THROW(intersect_qv_chain(example_2_1_product(), {0.5}, Grid({0}, {2}, 0.125)),
               std::invalid_argument);
}

TEST(Chain, EmptyResultIsDiagnosed) {
  // S ≡ {2} never meets x in D = [0, 1]
  const BoxSet dom = line(FI::closed(0, 3));
  const ProductMap s({constant_map(dom, line(FI::point(2)))}, {line(FI::closed(0, 1))});
  const ChainResult r = intersect_qv_chain(s, {0.5, 0.25}, Grid({0}, {3}, 0.125));
  EXPECT_TRUE(r.empty());
  EXPECT_FALSE(r.diagnostics.empty());
}

TEST(ProductMap, Validation) {
  const BoxSet dom = line(FI::closed(0, 2));
  const PiecewiseMap c = constant_map(dom, line(FI::point(1)));
  EXPECT_THROW(ProductMap({}, {}), std::invalid_argument);
  EXPECT_THROW(ProductMap({c}, {line(FI::open(0, 1))}), std::invalid_argument);
  EXPECT_THROW(ProductMap({c}, {line(FI::closed(1, 3))}), DomainError);
  EXPECT_THROW(ProductMap({c, c}, {line(FI::closed(0, 1)), line(FI::closed(0, 1))}), DimensionError);
}
