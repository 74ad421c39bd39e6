// Grid surrogates for upper semicontinuity and its weakened variants.
//
// Contract: a failing verdict always carries a concrete witness pair
// (x, x') whose excess survives refinement toward x; a passing verdict only
// means no violation was seen at the stated resolution.
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "setval/maps.hpp"

namespace setval {

enum class Status { pass, fail, unverified };

std::string to_string(Status s);

struct Witness {
  Point point;
  Point neighbor;  // empty when the witness is pointwise
  double excess = 0.0;
  std::string category;
};

struct Verdict {
  std::string name;
  Status status = Status::pass;
  std::string detail;
  std::vector<Witness> witnesses;
  double max_excess = 0.0;
  /// Reported for audit only; does not affect the overall status.
  bool informational = false;

  bool passed() const { return status == Status::pass; }
};

struct CheckReport {
  std::string property;
  Status status = Status::pass;
  std::vector<Verdict> verdicts;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<std::string> notes;

  bool passed() const { return status == Status::pass; }
  /// Status over the non-informational verdicts whose name starts with
  /// `prefix`: fail if any fails, else unverified if any is, else pass.
  Status status_of(std::string_view prefix) const;
  const Verdict* find(std::string_view name) const;
  /// Witnesses of every failing verdict, in verdict order.
  std::vector<Witness> witnesses() const;

  void add(Verdict v);
  void absorb(const CheckReport& sub, const std::string& prefix);
  void finish();
};

struct Resolution {
  double step = 1.0 / 64;
  double delta = 1.0 / 64;
  double tol = 1e-9;
};

/// Most witnesses kept per verdict; the count of all violations goes into
/// the verdict detail.
inline constexpr std::size_t kMaxWitnesses = 16;

/// Upper semicontinuity surrogate.  Values are closed first.  For grid
/// points x and grid neighbours x' with |x' - x|_inf <= delta the excess
/// hausdorff_upper(T(x'), T(x)) is compared with tol + L |x' - x|_inf sqrt(d),
/// L the slope modulus.  A violation is kept only if it persists at every
/// point x + 2^-k (x' - x), k = 1..30, that lies in the domain.
Verdict usc_verdict(const PiecewiseMap& t, const Grid& grid, double delta, double tol,
                    std::string name = "usc");
CheckReport check_usc(const PiecewiseMap& t, const Grid& grid, double delta, double tol);

/// The reverse excess hausdorff_upper(T(x), T(x')) under the same refinement:
/// a lower semicontinuity surrogate.
Verdict lsc_verdict(const PiecewiseMap& t, const Grid& grid, double delta, double tol,
                    std::string name = "lsc");

/// Whether every grid point of the domain has a nonempty value.
Verdict nonempty_verdict(const PiecewiseMap& t, const Grid& grid, std::string name);
/// Whether every grid point of the domain has a value with at most one box.
Verdict convex_verdict(const PiecewiseMap& t, const Grid& grid, std::string name);

/// Verdicts "w-usc[eps]", "almost-w-usc[eps]" and "nonempty[eps]" for each
/// eps.  eps_list must be nonempty and strictly decreasing.
CheckReport check_w_usc(const PiecewiseMap& t, const BoxSet& d, const std::vector<double>& eps_list,
                        const Grid& grid, double delta, double tol);

/// For each eps, the adherence of x -> (T1(x) + V) ∩ T2(x) ∩ D is checked for
/// upper semicontinuity ("dual-usc[eps]") and nonempty values; a lower
/// semicontinuity surrogate is reported alongside as informational.
CheckReport check_dual_w_usc(const PiecewiseMap& t1, const PiecewiseMap& t2, const BoxSet& d,
                             const std::vector<double>& eps_list, const Grid& grid, double delta,
                             double tol);

/// Verifies on the grid points of K that `candidate` is an upper
/// semicontinuous convex-valued selection of T + (-eps, eps)^d whose closed
/// values avoid the point's own block x[self_offset, self_offset + d).
CheckReport check_e_uscs(const PiecewiseMap& t, const BoxSet& k, const PiecewiseMap& candidate,
                         double eps, std::size_t self_offset, const Grid& grid, double delta,
                         double tol);

/// Constant selection proposal: the largest box of the intersection of
/// cl T(x) over the grid points of K, falling back to the intersection of the
/// dilated values.  nullopt when both are empty or every proposal meets the
/// diagonal.
std::optional<Box> constant_selection(const PiecewiseMap& t, const BoxSet& k, double eps,
                                      std::size_t self_offset, const Grid& grid);

std::string format_number(double v);
std::string format_point(const Point& p);
std::string format_list(const std::vector<double>& v);

/// Throws std::invalid_argument unless nonempty, positive, strictly decreasing.
void validate_eps_chain(const std::vector<double>& eps);

}  // namespace setval
