// Exact arithmetic on finite unions of axis-aligned boxes whose endpoints
// carry open/closed flags.
//
// A BoxSet is always held in canonical form: the coarsest cell decomposition
// of the set is computed and covered cells are merged greedily in
// lexicographic order.  Two BoxSets describe the same point set if and only
// if their canonical box lists compare equal.
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace setval {

using Point = std::vector<double>;

/// Raised when operands disagree on dimension.  Always a caller bug.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a map is evaluated outside its domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A nonempty interval of the real line with per-endpoint closedness.
/// lo == hi is only legal for the closed singleton.
class FlaggedInterval {
 public:
  FlaggedInterval(double lo, double hi, bool lo_closed, bool hi_closed);

  static FlaggedInterval closed(double lo, double hi) { return {lo, hi, true, true}; }
  static FlaggedInterval open(double lo, double hi) { return {lo, hi, false, false}; }
  static FlaggedInterval point(double v) { return {v, v, true, true}; }

  /// Returns nullopt when the flags and endpoints describe the empty set.
  static std::optional<FlaggedInterval> make(double lo, double hi, bool lo_closed,
                                             bool hi_closed);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  bool lo_closed() const { return lo_closed_; }
  bool hi_closed() const { return hi_closed_; }
  bool is_closed() const { return lo_closed_ && hi_closed_; }

  bool contains(double v) const;
  FlaggedInterval closure() const { return {lo_, hi_, true, true}; }

  friend bool operator==(const FlaggedInterval&, const FlaggedInterval&) = default;

 private:
  double lo_;
  double hi_;
  bool lo_closed_;
  bool hi_closed_;
};

std::optional<FlaggedInterval> intersect(const FlaggedInterval& a, const FlaggedInterval& b);

/// Product of flagged intervals, one per dimension.
using Box = std::vector<FlaggedInterval>;

bool box_contains(const Box& b, std::span<const double> p);
std::optional<Box> box_intersect(const Box& a, const Box& b);
Box box_closure(const Box& b);
bool box_is_closed(const Box& b);
/// Representative interior-ish point (midpoint of every coordinate interval).
Point box_center(const Box& b);

class BoxSet {
 public:
  explicit BoxSet(std::size_t dim);
  BoxSet(std::size_t dim, std::vector<Box> boxes);
  static BoxSet of(const Box& b) { return BoxSet(b.size(), {b}); }

  std::size_t dim() const { return dim_; }
  const std::vector<Box>& boxes() const { return boxes_; }
  bool empty() const { return boxes_.empty(); }
  /// Convex iff the canonical form is a single box (or empty).
  bool is_single_box() const { return boxes_.size() == 1; }
  bool is_closed() const;

  bool contains(std::span<const double> p) const;

  friend bool operator==(const BoxSet&, const BoxSet&) = default;

 private:
  std::size_t dim_;
  std::vector<Box> boxes_;
};

std::string to_string(const FlaggedInterval& iv);
std::string to_string(const Box& b);
std::string to_string(const BoxSet& s);

/// s + (-eps, eps)^dim.  Every endpoint becomes open.
BoxSet dilate(const BoxSet& s, double eps);
/// Minkowski sum of s with a single flagged box.
BoxSet minkowski_sum(const BoxSet& s, const Box& c);
BoxSet intersect(const BoxSet& a, const BoxSet& b);
BoxSet unite(const BoxSet& a, const BoxSet& b);
BoxSet difference(const BoxSet& a, const BoxSet& b);
BoxSet closure(const BoxSet& s);

/// Cartesian product, dimensions concatenated in order.
BoxSet product(const std::vector<BoxSet>& factors);

/// Exact flagged inclusion a ⊆ b.
bool subset(const BoxSet& a, const BoxSet& b);
/// tol == 0: exact inclusion; tol > 0: a ⊆ closure(dilate(b, tol)).
bool subset_within(const BoxSet& a, const BoxSet& b, double tol);
/// One-sided Hausdorff excess sup_{p in a} dist(p, b), Euclidean.  Zero iff
/// closure(a) ⊆ closure(b).  Exact in one dimension; in higher dimensions
/// the supremum is taken over a candidate lattice built from all endpoints
/// and gap midpoints, which is a lower bound that is never zero when the
/// exact value is positive.
double hausdorff_upper(const BoxSet& a, const BoxSet& b);
/// Euclidean distance from p to closure(s).  s must be nonempty.
double distance(std::span<const double> p, const BoxSet& s);

/// Regular lattice lo + k*step clipped to [lo, hi].
class Grid {
 public:
  Grid(Point lo, Point hi, double step);
  /// Same step in every dimension over the bounding box of a set.
  static Grid covering(const BoxSet& s, double step);

  std::size_t dim() const { return lo_.size(); }
  const Point& lo() const { return lo_; }
  const Point& hi() const { return hi_; }
  double step() const { return step_; }
  std::size_t count(std::size_t axis) const { return counts_[axis]; }
  std::size_t size() const;

  /// Points in lexicographic order (last axis fastest).
  std::vector<Point> points() const;
  /// Grid points lying in s (flag-exact), lexicographic order.
  std::vector<Point> points_in(const BoxSet& s) const;
  /// True when the closed grid box contains the bounding box of s.
  bool covers(const BoxSet& s) const;

  std::string describe() const;

 private:
  Point lo_;
  Point hi_;
  double step_;
  std::vector<std::size_t> counts_;
};

double sup_norm_distance(std::span<const double> a, std::span<const double> b);

/// Bounded elementary cells of the decomposition induced by every endpoint of
/// `sources`: each coordinate is either a breakpoint or an open gap between
/// consecutive breakpoints.  Every source box is a union of such cells.
std::vector<Box> elementary_cells(std::size_t dim, const std::vector<Box>& sources);

}  // namespace setval
