// The golden suite: every worked example recomputed and compared with its
// stated result, plus the randomized property suites.  Shared by the
// reproduce-paper command and the acceptance binary.
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "setval/maps.hpp"

namespace setval {

struct GoldenCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct GoldenSection {
  std::string name;
  std::vector<GoldenCheck> checks;
  double seconds = 0.0;
  std::vector<std::pair<std::string, std::string>> parameters;

  bool passed() const;
};

struct ReproduceOptions {
  /// Grid step for maps on (0,2).
  double map_step = 1.0 / 64;
  /// Grid step for the economies and the two-dimensional random maps.
  double econ_step = 1.0 / 8;
  /// Grid step for the e-USCS verification.
  double selection_step = 1.0 / 16;
  /// Allocation and price grid step of the information economy.
  double radner_step = 1.0 / 8;
  std::uint64_t seed = 20261019;
  std::size_t random_maps = 50;
  std::size_t random_usc_maps = 20;

  /// Every grid step set to `step`, which must divide 1/2.
  static ReproduceOptions uniform(double step);
};

GoldenSection reproduce_example_2_1(const ReproduceOptions& o);
GoldenSection reproduce_example_2_2(const ReproduceOptions& o);
GoldenSection reproduce_example_4_1(const ReproduceOptions& o);
GoldenSection reproduce_lemma_2_2(const ReproduceOptions& o);
GoldenSection reproduce_lemma_2_1(const ReproduceOptions& o);
GoldenSection reproduce_fixed_point_scheme(const ReproduceOptions& o);
GoldenSection reproduce_radner(const ReproduceOptions& o);
GoldenSection reproduce_hypotheses(const ReproduceOptions& o);

std::vector<GoldenSection> reproduce_all(const ReproduceOptions& o);

/// Random piecewise-affine map on [0,2]^dim with at most max_pieces pieces,
/// dyadic endpoints and slopes, random endpoint flags and occasional empty
/// values.
PiecewiseMap random_piecewise_map(std::mt19937_64& rng, std::size_t dim, std::size_t codim,
                                  std::size_t max_pieces);
/// Random compact box with dyadic endpoints inside [-1, 3]^dim.
BoxSet random_compact_box(std::mt19937_64& rng, std::size_t dim);

}  // namespace setval
