// Randomized versions of the two lemmas over seeds other than the golden
// suite's, checked through membership tests rather than set algebra.
#include <gtest/gtest.h>

#include <random>

#include "setval/builtin.hpp"
#include "setval/checks.hpp"
#include "setval/reproduce.hpp"

using namespace setval;

namespace {

const std::vector<double> kChain{1, 0.5, 0.25, 0.125};

// Every sampled y in the adherence of T^eps at x for all eps of the chain
// lies in D and within eps_min + tol of the adherence of T at x.
void expect_lemma_2_2(const PiecewiseMap& t, const BoxSet& d, double step, double tol,
                      const std::string& label) {
  std::vector<PiecewiseMap> approx;
  for (double eps : kChain) approx.push_back(t_upper(t, eps, d));
  const PiecewiseMap adh = adherence(t);
  const std::size_t codim = t.codim();
  const Grid ys(Point(codim, -1.5), Point(codim, 4.5), codim == 1 ? 1.0 / 16 : 0.125);
  const auto y_points = ys.points();
  for (const auto& x : Grid::covering(t.domain(), step).points_in(t.domain())) {
    const BoxSet target = adh.evaluate(x);
    for (const auto& y : y_points) {
      bool in_all = true;
      for (const auto& a : approx) {
        in_all = in_all && adherence_contains(a, x, y);
        if (!in_all) break;
      }
      if (!in_all) continue;
      ASSERT_TRUE(closure(d).contains(y)) << label;
      ASSERT_FALSE(target.empty()) << label << " at x[0]=" << x[0];
      ASSERT_LE(distance(y, target), kChain.back() + tol + 1e-12) << label << " at x[0]=" << x[0];
    }
  }
}

}  // namespace

TEST(Lemma22, Builtins) {
  const MapPair pr = example_2_2_pair();
  const AbstractEconomy e = example_4_1_economy(2);
  expect_lemma_2_2(example_2_1_map(), example_2_1_target(), 1.0 / 64, 0, "example 2.1");
  expect_lemma_2_2(pr.t1, pr.target, 1.0 / 64, 0, "example 2.2 T1");
  expect_lemma_2_2(pr.t2, pr.target, 1.0 / 64, 0, "example 2.2 T2");
  expect_lemma_2_2(e.agent(0).b, e.agent(0).target, 0.25, 0, "example 4.1 B1");
}

class RandomLemma : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(RandomLemma, Lemma22) {
  std::mt19937_64 rng(GetParam());
  for (int k = 0; k < 12; ++k) {
    const std::size_t dim = 1 + k % 2, codim = 1 + (k / 2) % 2;
    const PiecewiseMap t = random_piecewise_map(rng, dim, codim, 4);
    const BoxSet d = random_compact_box(rng, codim);
    const double step = dim == 1 ? 1.0 / 16 : 0.25;
    expect_lemma_2_2(t, d, step, step, "map " + std::to_string(k));
  }
}

TEST_P(RandomLemma, Lemma21) {
  std::mt19937_64 rng(GetParam() + 1000);
  std::uniform_int_distribution<int> q(-4, 4);
  int accepted = 0;
  for (int attempt = 0; attempt < 200 && accepted < 8; ++attempt) {
    const std::size_t dim = 1 + attempt % 2, codim = 1 + (attempt / 2) % 2;
    const double step = dim == 1 ? 1.0 / 32 : 0.125;
    const PiecewiseMap s = adherence(random_piecewise_map(rng, dim, codim, 4));
    const Grid grid = Grid::covering(s.domain(), step);
    if (!check_usc(s, grid, step, 1e-9).passed()) continue;
    ++accepted;
    Box c;
    for (std::size_t j = 0; j < codim; ++j) {
      const double lo = q(rng) / 4.0;
      c.push_back(FlaggedInterval::closed(lo, lo + std::abs(q(rng)) / 4.0));
    }
    const BoxSet k = random_compact_box(rng, codim);
    const PiecewiseMap t = clip(minkowski_sum(s, c), k);
    for (const auto& x : grid.points()) {
      ASSERT_EQ(t.evaluate(x), intersect(minkowski_sum(s.evaluate(x), c), k));
    }
    EXPECT_TRUE(check_usc(t, grid, step, 1e-9).passed()) << "attempt " << attempt;
  }
  EXPECT_EQ(accepted, 8);
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomLemma, ::testing::Values(101u, 202u, 303u, 404u));
