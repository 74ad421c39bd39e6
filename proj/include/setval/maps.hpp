// Piecewise-affine correspondences X ⇉ Y.
//
// The domain is partitioned into flagged boxes ("regions").  Each region
// carries a finite union of AffineBox values.  An AffineBox is the set
//
//     { y : for every coordinate k, y_k ⊳ l(x) for each lower bound l and
//           y_k ⊲ u(x) for each upper bound u }
//
// gated by guard inequalities on x.  Multiple bounds per side make the
// intersection, clipping and dilation of affine-interval values exact
// without splitting regions along non-axis-aligned hyperplanes.
#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "setval/core.hpp"
#include "setval/polyhedron.hpp"

namespace setval {

/// c0 + Σ c_j x_j.
struct AffineForm {
  double constant = 0.0;
  std::vector<double> coef;

  static AffineForm constant_form(double c, std::size_t xdim) {
    return {c, std::vector<double>(xdim, 0.0)};
  }
  /// c0 + s * x_index
  static AffineForm coordinate(double c0, double s, std::size_t index, std::size_t xdim);

  double operator()(std::span<const double> x) const;
  AffineForm shifted(double delta) const { return {constant + delta, coef}; }
  AffineForm negated() const;
  AffineForm minus(const AffineForm& other) const;
  /// Σ |c_j|, the Lipschitz constant in the sup norm.
  double slope() const;
  bool is_constant() const;

  friend bool operator==(const AffineForm&, const AffineForm&) = default;
};

/// One side of a coordinate bound: y_k >= form (closed) or y_k > form.
struct Bound {
  AffineForm form;
  bool closed = true;
  friend bool operator==(const Bound&, const Bound&) = default;
};

/// Condition on x: form(x) > 0 (strict) or form(x) >= 0.
struct Guard {
  AffineForm form;
  bool strict = false;
  bool holds(std::span<const double> x) const;
  friend bool operator==(const Guard&, const Guard&) = default;
};

struct DimBounds {
  std::vector<Bound> lower;
  std::vector<Bound> upper;
  friend bool operator==(const DimBounds&, const DimBounds&) = default;
};

class AffineBox {
 public:
  AffineBox(std::size_t xdim, std::vector<DimBounds> dims, std::vector<Guard> guards = {});

  /// Constant box value.
  static AffineBox constant(const Box& value, std::size_t xdim);
  /// One-dimensional value with a single lower and upper form.
  static AffineBox interval(AffineForm lo, AffineForm hi, bool lo_closed, bool hi_closed);

  std::size_t xdim() const { return xdim_; }
  std::size_t ydim() const { return dims_.size(); }
  const std::vector<DimBounds>& dims() const { return dims_; }
  const std::vector<Guard>& guards() const { return guards_; }

  /// The value at x, or nullopt when it is empty there.
  std::optional<Box> at(std::span<const double> x) const;

  /// Guards plus the pairwise conditions lower ⊲ upper; together they hold
  /// exactly where the value is nonempty.
  std::vector<Guard> nonempty_conditions() const;

  /// Pointwise Minkowski sum with a constant flagged box.
  AffineBox plus(const Box& c) const;
  /// Pointwise intersection with a constant box.
  AffineBox clipped(const Box& d) const;
  /// Every bound closed and every guard non-strict: the graph closure of a
  /// nonempty piece.
  AffineBox relaxed() const;
  /// Pointwise closure: closed bounds, emptiness unchanged.
  AffineBox closed_values() const;
  static AffineBox meet(const AffineBox& a, const AffineBox& b);

  double slope() const;
  /// True when the box has no guards and one bound on each side per dimension.
  bool is_simple() const;

  friend bool operator==(const AffineBox&, const AffineBox&) = default;

 private:
  std::size_t xdim_;
  std::vector<DimBounds> dims_;
  std::vector<Guard> guards_;
};

/// Union of boxes; the empty vector is the empty value.
using PieceValue = std::vector<AffineBox>;

struct Piece {
  Box region;
  PieceValue value;
};

/// A correspondence given by a finite partition of its domain.  The
/// constructor verifies symbolically that the regions are pairwise disjoint,
/// lie in the domain, and cover it.
class PiecewiseMap {
 public:
  PiecewiseMap(BoxSet domain, std::size_t codim, std::vector<Piece> pieces);

  const BoxSet& domain() const { return domain_; }
  std::size_t xdim() const { return domain_.dim(); }
  std::size_t codim() const { return codim_; }
  const std::vector<Piece>& pieces() const { return pieces_; }

  /// Index of the unique piece whose region contains x.
  std::size_t locate(std::span<const double> x) const;
  BoxSet evaluate(std::span<const double> x) const;

  /// Largest sup-norm Lipschitz constant over all value bounds.
  double slope_modulus() const;

 private:
  BoxSet domain_;
  std::size_t codim_;
  std::vector<Piece> pieces_;
};

PiecewiseMap constant_map(const BoxSet& domain, const BoxSet& value);

/// Builds a map from disjoint case sets; the remainder of the domain takes
/// `otherwise` (which may be omitted only when the cases cover the domain).
PiecewiseMap from_cases(const BoxSet& domain, std::size_t codim,
                        const std::vector<std::pair<BoxSet, PieceValue>>& cases,
                        const std::optional<PieceValue>& otherwise);

PiecewiseMap minkowski_sum(const PiecewiseMap& t, const Box& c);
/// x ↦ T(x) ∩ K.
PiecewiseMap clip(const PiecewiseMap& t, const BoxSet& k);
/// x ↦ (T(x) + (-eps, eps)^d) ∩ D.  D must be compact.
PiecewiseMap t_upper(const PiecewiseMap& t, double eps, const BoxSet& d);
/// Graph adherence T̄: the map whose graph is the closure of Gr T, expressed
/// over the partition induced by the closed regions.
PiecewiseMap adherence(const PiecewiseMap& t);
/// Direct membership test (x, y) ∈ cl Gr T without building the adherence
/// map.  x must lie in the domain.
bool adherence_contains(const PiecewiseMap& t, std::span<const double> x,
                        std::span<const double> y);
/// Index of a piece whose graph closure contains (x, y), if any.
std::optional<std::size_t> adherence_witness(const PiecewiseMap& t, std::span<const double> x,
                                             std::span<const double> y);
/// x ↦ A(x) ∩ B(x).  Domains must coincide.
PiecewiseMap intersect_maps(const PiecewiseMap& a, const PiecewiseMap& b);
/// x ↦ cl T(x).
PiecewiseMap closure_values(const PiecewiseMap& t);
/// The same map on domain ∩ w.
PiecewiseMap restrict_to(const PiecewiseMap& t, const BoxSet& w);
/// `on` over w, `off` over the rest of the common domain.
PiecewiseMap select(const BoxSet& w, const PiecewiseMap& on, const PiecewiseMap& off);

/// {x : T(x) ≠ ∅} when every piece is either nonempty everywhere or empty
/// everywhere on its region; nullopt when some piece is only partly nonempty.
std::optional<BoxSet> nonempty_set(const PiecewiseMap& t);

/// Whether the graph of one value box over a region contains any point.
bool graph_nonempty(const Box& region, const AffineBox& value);

}  // namespace setval
