// Grid search for fixed points of product correspondences through their
// dilated approximations, and intersection over a shrinking eps-chain.
#pragma once

#include <string>
#include <vector>

#include "setval/maps.hpp"

namespace setval {

/// x ↦ ∏_i S_i(x) with compact targets D_i.  Agent i owns the coordinates
/// [offset(i), offset(i) + dim(i)) of x.
class ProductMap {
 public:
  ProductMap(std::vector<PiecewiseMap> factors, std::vector<BoxSet> targets);

  std::size_t size() const { return factors_.size(); }
  const PiecewiseMap& factor(std::size_t i) const { return factors_.at(i); }
  const BoxSet& target(std::size_t i) const { return targets_.at(i); }
  std::size_t offset(std::size_t i) const { return offsets_.at(i); }
  std::size_t dim(std::size_t i) const { return factors_.at(i).codim(); }
  const BoxSet& domain() const { return factors_.front().domain(); }
  /// D = ∏ D_i.
  const BoxSet& target_product() const { return product_; }
  Point own(std::size_t i, const Point& x) const;

 private:
  std::vector<PiecewiseMap> factors_;
  std::vector<BoxSet> targets_;
  std::vector<std::size_t> offsets_;
  BoxSet product_;
};

struct QvSet {
  double eps = 0.0;
  std::vector<Point> points;
};

/// Grid points x of D with x_i in the adherence of (S_i + (-eps, eps)) ∩ D_i
/// at x for every i.  The grid must cover D.
QvSet fixed_points_of_approximation(const ProductMap& s, double eps, const Grid& grid);

struct ChainPoint {
  Point x;
  /// x_i lies in the adherence of S_i at x for every i, checked piece by
  /// piece without building the adherence map.
  bool certified = false;
};

struct ChainResult {
  std::vector<QvSet> sets;
  std::vector<ChainPoint> points;
  /// Q at each smaller eps is contained in Q at the previous one.
  bool nested = true;
  std::vector<std::string> diagnostics;

  bool empty() const { return points.empty(); }
};

/// eps_chain must be strictly decreasing with at least two entries.
ChainResult intersect_qv_chain(const ProductMap& s, const std::vector<double>& eps_chain,
                               const Grid& grid);

}  // namespace setval
