// Pure exchange economies with asymmetric information and their associated
// abstract economy with a price player.
//
// A bundle has l*m + 1 coordinates: the present-period good first, then the
// l goods of each future state s = 1..m.  Consumption is truncated to
// [0, M]^(l*m+1).  Budget, information and excess-demand sets are polytopes,
// so they are carried as linear constraint systems and decided exactly by
// Fourier-Motzkin elimination rather than as box unions.
#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "setval/maps.hpp"
#include "setval/polyhedron.hpp"

namespace setval {

/// Signal labels per agent and state.  Entries keyed by price override the
/// default labels at that exact price, which is how learning from prices is
/// expressed.
class SignalTable {
 public:
  using Labels = std::vector<std::vector<std::string>>;  // [agent][state]
  struct Entry {
    Point price;
    Labels labels;
  };

  SignalTable(Labels defaults, std::vector<Entry> by_price = {});

  const Labels& defaults() const { return defaults_; }
  const std::vector<Entry>& entries() const { return entries_; }
  const std::vector<std::string>& labels(std::size_t agent, std::span<const double> p) const;

 private:
  Labels defaults_;
  std::vector<Entry> entries_;
};

class InfoEconomy {
 public:
  /// `preferences[i]` is Q'_i as a map on agent i's own truncated bundle
  /// space [0, M]^(l*m+1); when none are given every agent gets
  /// monotone_preference.  M defaults to default_truncation.
  InfoEconomy(std::size_t states, std::size_t goods, std::vector<Point> endowments,
              SignalTable signals, std::vector<PiecewiseMap> preferences = {},
              std::optional<double> truncation = std::nullopt);

  std::size_t agents() const { return endowments_.size(); }
  std::size_t states() const { return states_; }
  std::size_t goods() const { return goods_; }
  std::size_t bundle_dim() const { return goods_ * states_ + 1; }
  double truncation() const { return truncation_; }
  const Point& endowment(std::size_t i) const { return endowments_.at(i); }
  const std::vector<Point>& endowments() const { return endowments_; }
  Point aggregate_endowment() const;
  const SignalTable& signals() const { return signals_; }
  const PiecewiseMap& preference(std::size_t i) const { return preferences_.at(i); }
  const std::vector<PiecewiseMap>& preferences() const { return preferences_; }

  /// Bundle coordinate of good g in state s (s = 1..m).
  std::size_t coord(std::size_t state, std::size_t good) const {
    return 1 + (state - 1) * goods_ + good;
  }
  /// States 1..m grouped by agent i's signal at p.
  std::vector<std::vector<std::size_t>> classes(std::size_t i, std::span<const double> p) const;
  /// [0, M]^(l*m+1).
  Box truncation_box() const;

 private:
  std::size_t states_;
  std::size_t goods_;
  std::vector<Point> endowments_;
  SignalTable signals_;
  std::vector<PiecewiseMap> preferences_;
  double truncation_;
};

/// Default truncation 2 * max_k (Σ_i e^i)_k.
double default_truncation(const std::vector<Point>& endowments);

/// Q'(x) = {y : y > x componentwise, y <= M} on [0, M]^dim.
PiecewiseMap monotone_preference(std::size_t dim, double truncation);

/// Throws unless p is a price vector of the simplex.
void validate_price(std::span<const double> p, std::size_t dim);

struct BudgetSet {
  Point price;
  double wealth = 0.0;  // p . e^i
  double truncation = 0.0;

  /// p.y < p.e^i and 0 <= y <= M.
  bool contains(std::span<const double> y) const;
  /// p.y <= p.e^i and 0 <= y <= M.
  bool relaxed_contains(std::span<const double> y) const;
  /// Bounding box with open faces where the budget is strict; empty when
  /// p.e^i = 0.
  BoxSet bounding() const;
  std::vector<LinearConstraint> constraints() const;
};

BudgetSet budget_set(const InfoEconomy& e, std::size_t i, std::span<const double> p);

struct InformationSet {
  std::vector<std::vector<std::size_t>> classes;
  std::size_t goods = 1;
  double truncation = 0.0;

  /// Equal consumption across states of a class (within tol_eq), inside the
  /// truncation box.
  bool contains(std::span<const double> y, double tol_eq = 1e-12) const;
  /// The truncation box, which contains the information set.
  BoxSet bounding() const;
  /// Each equality as a pair of inequalities.
  std::vector<LinearConstraint> constraints(std::size_t dim) const;
};

InformationSet information_set(const InfoEconomy& e, std::size_t i, std::span<const double> p);

/// Delivery conditions on portfolios y in R^(l*m): p_s . y(s) <= p_s . y(s')
/// whenever s and s' share agent i's signal.
struct DeliverySet {
  Point price;
  std::vector<std::vector<std::size_t>> classes;
  std::size_t goods = 1;

  bool contains(std::span<const double> y) const;
};

DeliverySet delivery_set(const InfoEconomy& e, std::size_t i, std::span<const double> x,
                         std::span<const double> p);

/// Regular grid of the price simplex in dimension dim; 1/step must be an
/// integer.
class PriceSimplex {
 public:
  PriceSimplex(std::size_t dim, double step);
  std::size_t dim() const { return dim_; }
  double step() const { return step_; }
  std::vector<Point> points() const;

 private:
  std::size_t dim_;
  double step_;
  std::size_t divisions_;
};

/// The (n+1)-agent abstract economy of an InfoEconomy.  Agents 0..n-1 choose
/// bundles, agent n chooses prices.  The state is (x, p) with x the
/// concatenated bundles.  Correspondence values are polytopes, decided by
/// their constraint systems.
class AssociatedEconomy {
 public:
  AssociatedEconomy(InfoEconomy e, PriceSimplex simplex);

  const InfoEconomy& base() const { return e_; }
  const PriceSimplex& simplex() const { return simplex_; }
  std::size_t agents() const { return e_.agents() + 1; }
  std::size_t price_player() const { return e_.agents(); }
  Point bundle(std::size_t i, std::span<const double> x) const;
  /// Σ_i (x^i - e^i).
  Point excess(std::span<const double> x) const;

  /// Constraint systems of A_i, B_i and, per box of Q'_i(x^i), of P_i.
  std::vector<LinearConstraint> a_constraints(std::size_t i, std::span<const double> x,
                                              std::span<const double> p) const;
  std::vector<LinearConstraint> b_constraints(std::size_t i, std::span<const double> x,
                                              std::span<const double> p) const;
  std::vector<std::vector<LinearConstraint>> p_constraints(std::size_t i,
                                                           std::span<const double> x,
                                                           std::span<const double> p) const;

  /// A_i(x,p) ∩ P_i(x,p) = ∅.  For the price player this is decided by
  /// vertex enumeration: max_j z_j <= p.z.
  bool a_cap_p_empty(std::size_t i, std::span<const double> x, std::span<const double> p) const;
  /// The same question by elimination, for cross-checking.
  bool a_cap_p_empty_by_elimination(std::size_t i, std::span<const double> x,
                                    std::span<const double> p) const;
  /// y in B̄_i(x,p): the budget relaxed to p.y <= p.e^i under the signal in
  /// force at p; the simplex for the price player.
  bool b_adherence_contains(std::size_t i, std::span<const double> x, std::span<const double> p,
                            std::span<const double> y) const;
  /// A_i ∩ P_i ⊆ B_i at (x,p): A_i ∩ P_i ∩ {some B_i constraint fails} is
  /// infeasible for every constraint of B_i.
  bool inclusion_holds(std::size_t i, std::span<const double> x, std::span<const double> p) const;

 private:
  InfoEconomy e_;
  PriceSimplex simplex_;
};

AssociatedEconomy to_abstract_economy(const InfoEconomy& e, const PriceSimplex& simplex);

struct InclusionSweep {
  std::size_t samples = 0;
  std::size_t violations = 0;
  /// First violating (agent, x, p), if any.
  std::optional<std::size_t> agent;
  Point x;
  Point p;
};

/// Checks A_i ∩ P_i ⊆ B_i at every price of the simplex grid and every
/// allocation of the bundle grid of step alloc_step.  A consumer's sets
/// depend on its own bundle only, and the price player's on the aggregate,
/// so each distinct own bundle and each distinct aggregate is visited once.
InclusionSweep sweep_inclusion(const AssociatedEconomy& a, double alloc_step);

struct RadnerCertificate {
  Point x;  // all bundles, concatenated
  Point p;
  std::vector<bool> in_b_adherence;  // per agent, price player last
  std::vector<bool> a_cap_p_empty;
  bool valid = false;
};

RadnerCertificate verify_radner_equilibrium(const AssociatedEconomy& a, std::span<const double> x,
                                            std::span<const double> p);

struct RadnerSearch {
  std::vector<RadnerCertificate> equilibria;
  std::size_t prices = 0;
  std::size_t candidates = 0;
  std::vector<std::string> diagnostics;
};

/// Scans the simplex grid and the bundle grid of step alloc_step.  For each
/// price, bundles passing the agent clauses are found per agent and their
/// combinations are tested against the price player.
RadnerSearch search_radner_equilibria(const AssociatedEconomy& a, double alloc_step,
                                      std::size_t max_results = 1000);

struct ClauseResult {
  std::string name;
  bool holds = true;
  std::string detail;
};

struct MarketClearing {
  std::vector<ClauseResult> clauses;
  bool holds(std::string_view prefix) const;
};

/// Re-derives the equilibrium clauses of the information economy from a
/// certificate: (1) aggregate feasibility, directly and at each canonical
/// price; (2) membership in the relaxed information-budget set and in the
/// closure of I ∩ B; (3) no preferred informationally feasible bundle is
/// affordable, both exactly and on the sample grid of step sample_step.
MarketClearing verify_market_clearing(const AssociatedEconomy& a, const RadnerCertificate& c,
                                      double tol = 1e-9, double sample_step = 0.125);

}  // namespace setval
