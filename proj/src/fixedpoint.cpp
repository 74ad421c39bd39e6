#include "setval/fixedpoint.hpp"

#include <algorithm>
#include <stdexcept>

#include "setval/checks.hpp"

namespace setval {

namespace {

BoxSet checked_product(const std::vector<PiecewiseMap>& factors,
                       const std::vector<BoxSet>& targets) {
  if (factors.empty()) throw std::invalid_argument("ProductMap needs at least one factor");
  if (factors.size() != targets.size()) {
    throw std::invalid_argument("ProductMap: one target per factor required");
  }
  std::size_t total = 0;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (!(factors[i].domain() == factors.front().domain())) {
      throw DomainError("ProductMap: factors must share a domain");
    }
    if (targets[i].dim() != factors[i].codim()) {
      throw DimensionError("ProductMap: target dimension differs from factor codomain");
    }
    if (!targets[i].is_closed() || targets[i].empty()) {
      throw std::invalid_argument("ProductMap: targets must be nonempty and compact");
    }
    total += factors[i].codim();
  }
  if (total != factors.front().xdim()) {
    throw DimensionError("ProductMap: factor codomains must add up to the domain dimension");
  }
  BoxSet d = product(targets);
  if (!subset(d, factors.front().domain())) {
    throw DomainError("ProductMap: the target product must lie in the domain");
  }
  return d;
}

}  // namespace

ProductMap::ProductMap(std::vector<PiecewiseMap> factors, std::vector<BoxSet> targets)
    : factors_(std::move(factors)),
      targets_(std::move(targets)),
      product_(checked_product(factors_, targets_)) {
  std::size_t off = 0;
  for (const auto& f : factors_) {
    offsets_.push_back(off);
    off += f.codim();
  }
}

Point ProductMap::own(std::size_t i, const Point& x) const {
  auto b = x.begin() + static_cast<long>(offset(i));
  return Point(b, b + static_cast<long>(dim(i)));
}

QvSet fixed_points_of_approximation(const ProductMap& s, double eps, const Grid& grid) {
  if (!grid.covers(s.target_product())) throw std::invalid_argument("grid does not cover D");
  std::vector<PiecewiseMap> approx;
  for (std::size_t i = 0; i < s.size(); ++i) {
    approx.push_back(adherence(t_upper(s.factor(i), eps, s.target(i))));
  }
  QvSet q{eps, {}};
  for (const auto& x : grid.points_in(s.target_product())) {
    bool all = true;
    for (std::size_t i = 0; i < s.size() && all; ++i) {
      all = approx[i].evaluate(x).contains(s.own(i, x));
    }
    if (all) q.points.push_back(x);
  }
  return q;
}

ChainResult intersect_qv_chain(const ProductMap& s, const std::vector<double>& eps_chain,
                               const Grid& grid) {
  validate_eps_chain(eps_chain);
  if (eps_chain.size() < 2) throw std::invalid_argument("eps chain needs at least two entries");
  ChainResult r;
  std::vector<Point> common;
  for (std::size_t k = 0; k < eps_chain.size(); ++k) {
    QvSet q = fixed_points_of_approximation(s, eps_chain[k], grid);
    r.diagnostics.push_back("|Q| at eps=" + format_number(q.eps) + ": " +
                            std::to_string(q.points.size()));
    if (k == 0) {
      common = q.points;
    } else {
      // Both lists are in lexicographic grid order.
      const auto& prev = r.sets.back().points;
      bool nested = std::includes(prev.begin(), prev.end(), q.points.begin(), q.points.end());
      if (!nested) {
        r.nested = false;
        r.diagnostics.push_back("nesting violated between eps=" + format_number(eps_chain[k - 1]) +
                                " and eps=" + format_number(eps_chain[k]));
      }
      std::vector<Point> next;
      std::set_intersection(common.begin(), common.end(), q.points.begin(), q.points.end(),
                            std::back_inserter(next));
      common = std::move(next);
    }
    r.sets.push_back(std::move(q));
  }
  for (auto& x : common) {
    bool cert = true;
    for (std::size_t i = 0; i < s.size() && cert; ++i) {
      cert = adherence_contains(s.factor(i), x, s.own(i, x));
    }
    r.points.push_back({std::move(x), cert});
  }
  if (r.points.empty()) {
    r.diagnostics.push_back("no fixed point at this resolution (" + grid.describe() + ")");
  }
  return r;
}

}  // namespace setval
