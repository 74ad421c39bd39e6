#include <gtest/gtest.h>

#include <random>

#include "setval/polyhedron.hpp"

using namespace setval;

namespace {

LinearConstraint ge(std::vector<double> c, double k) { return {std::move(c), k, false}; }
LinearConstraint gt(std::vector<double> c, double k) { return {std::move(c), k, true}; }

bool satisfies(const std::vector<LinearConstraint>& rows, const std::vector<double>& x) {
  for (const auto& r : rows) {
    double v = r.constant;
    for (std::size_t j = 0; j < x.size(); ++j) v += r.coef[j] * x[j];
    if (r.strict ? !(v > 0) : !(v >= 0)) return false;
  }
  return true;
}

}  // namespace

TEST(Feasible, ClosedSegment) {
  // 0 <= x <= 1
  EXPECT_TRUE(feasible({ge({1}, 0), ge({-1}, 1)}));
}

TEST(Feasible, TouchingHalfLinesDependOnStrictness) {
  EXPECT_TRUE(feasible({ge({1}, -1), ge({-1}, 1)}));    // x >= 1, x <= 1
  EXPECT_FALSE(feasible({gt({1}, -1), ge({-1}, 1)}));   // x > 1, x <= 1
  EXPECT_FALSE(feasible({ge({1}, -1), gt({-1}, 1)}));   // x >= 1, x < 1
}

TEST(Feasible, OpenTriangle) {
  // x > 0, y > 0, x + y < 1
  EXPECT_TRUE(feasible({gt({1, 0}, 0), gt({0, 1}, 0), gt({-1, -1}, 1)}));
  // x > 0, y > 0, x + y < 0
  EXPECT_FALSE(feasible({gt({1, 0}, 0), gt({0, 1}, 0), gt({-1, -1}, 0)}));
  // x >= 0, y >= 0, x + y <= 0 is the origin
  EXPECT_TRUE(feasible({ge({1, 0}, 0), ge({0, 1}, 0), ge({-1, -1}, 0)}));
}

TEST(Feasible, ConstantRows) {
  EXPECT_TRUE(feasible({ge({0, 0}, 0)}));
  EXPECT_FALSE(feasible({gt({0, 0}, 0)}));
  EXPECT_FALSE(feasible({ge({0, 0}, -1)}));
  EXPECT_TRUE(feasible({}));
}

TEST(Feasible, AgreesWithSampledWitnesses) {
  // Random bounded systems in 2 and 3 variables.  A lattice point satisfying
  // every row proves feasibility; the converse is not asserted.
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> c(-2, 2), k(-3, 3);
  std::bernoulli_distribution strict(0.5);
  int witnessed = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + trial % 2;
    std::vector<LinearConstraint> rows;
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<double> e(n, 0.0);
      e[j] = 1;
      rows.push_back(ge(e, 2));
      e[j] = -1;
      rows.push_back(ge(e, 2));
    }
    for (int r = 0; r < 3; ++r) {
      std::vector<double> coef(n);
      for (auto& v : coef) v = c(rng);
      rows.push_back({coef, double(k(rng)), strict(rng)});
    }
    bool sampled = false;
    std::vector<double> x(n);
    const int steps = 16;
    std::vector<int> idx(n, 0);
    while (!sampled) {
      for (std::size_t j = 0; j < n; ++j) x[j] = -2 + 4.0 * idx[j] / steps;
      sampled = satisfies(rows, x);
      std::size_t j = 0;
      while (j < n && ++idx[j] > steps) idx[j++] = 0;
      if (j == n) break;
    }
    const bool f = feasible(rows);
    if (sampled) {
      ++witnessed;
      EXPECT_TRUE(f) << "trial " << trial;
    }
  }
  EXPECT_GT(witnessed, 50);
}
