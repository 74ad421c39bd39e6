// Abstract economies (X_i, A_i, P_i, B_i) with compact target sets D_i:
// equilibrium verification, grid search and the existence-theorem
// hypothesis checkers.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "setval/checks.hpp"
#include "setval/fixedpoint.hpp"
#include "setval/maps.hpp"

namespace setval {

struct Agent {
  Box choice;  // X_i
  BoxSet target;  // D_i
  PiecewiseMap a;
  PiecewiseMap b;
  PiecewiseMap p;
};

/// Every map is defined on X = ∏ X_i and takes values in agent i's block.
class AbstractEconomy {
 public:
  explicit AbstractEconomy(std::vector<Agent> agents);

  std::size_t size() const { return agents_.size(); }
  const Agent& agent(std::size_t i) const { return agents_.at(i); }
  const std::vector<Agent>& agents() const { return agents_; }
  std::size_t offset(std::size_t i) const { return offsets_.at(i); }
  std::size_t dim(std::size_t i) const { return agents_.at(i).choice.size(); }
  const BoxSet& space() const { return space_; }
  /// D = ∏ D_i.
  const BoxSet& target_product() const { return target_; }
  Point own(std::size_t i, const Point& x) const;

 private:
  std::vector<Agent> agents_;
  std::vector<std::size_t> offsets_;
  BoxSet space_;
  BoxSet target_;
};

struct AgentEvidence {
  /// B̄_i(x) and whether it contains x_i.
  BoxSet b_adherence{1};
  bool in_b_adherence = false;
  /// Piece of B_i whose graph closure contains (x, x_i), found without the
  /// adherence map.
  std::optional<std::size_t> b_piece;
  /// A_i(x) ∩ P_i(x).
  BoxSet a_cap_p{1};

  bool valid() const { return in_b_adherence && a_cap_p.empty(); }
};

struct EquilibriumCertificate {
  Point x;
  std::vector<AgentEvidence> agents;
  bool valid = false;
};

/// Caches B̄_i and A_i ∩ P_i so that many points can be verified cheaply.
class EquilibriumVerifier {
 public:
  explicit EquilibriumVerifier(const AbstractEconomy& e);
  EquilibriumCertificate verify(const Point& x) const;

 private:
  const AbstractEconomy* e_;
  std::vector<PiecewiseMap> b_adh_;
  std::vector<PiecewiseMap> h_;
};

EquilibriumCertificate verify_equilibrium(const AbstractEconomy& e, const Point& x);
/// Valid certificates at the grid points of D, lexicographic order.
std::vector<EquilibriumCertificate> search_equilibria(const AbstractEconomy& e, const Grid& grid);

/// x ↦ A_i(x) ∩ P_i(x).
PiecewiseMap constraint_preference(const AbstractEconomy& e, std::size_t i);

struct OpennessResult {
  /// W_i when the piece structure determines it exactly.
  std::optional<BoxSet> w;
  bool open = false;
  /// Grid points of W_i (always available).
  std::vector<Point> grid_points;
  std::string detail;
};

/// Openness of W_i = {x : A_i(x) ∩ P_i(x) ≠ ∅} in X.  Exact when every piece
/// of A_i ∩ P_i is nonempty everywhere or nowhere on its region; otherwise a
/// grid surrogate: every grid point of W_i has all grid neighbours within
/// delta in W_i.
OpennessResult w_openness(const AbstractEconomy& e, std::size_t i, const Grid& grid,
                          double delta);

/// The fixed-point construction from the existence proof: A_i ∩ P_i on W_i
/// and B_i elsewhere.  Requires W_i to be determined exactly.
ProductMap selection_product(const AbstractEconomy& e);

CheckReport check_theorem_4_1_hypotheses(const AbstractEconomy& e,
                                         const std::vector<double>& eps_list, const Grid& grid,
                                         double delta, double tol);
CheckReport check_theorem_4_2_hypotheses(const AbstractEconomy& e,
                                         const std::vector<double>& eps_list, const Grid& grid,
                                         double delta, double tol);

/// Candidates, when given, must have one entry per agent; a missing entry
/// falls back to the constant-selection heuristic, and condition (4) is
/// "unverified" when that finds nothing.
CheckReport check_theorem_4_3_hypotheses(const AbstractEconomy& e,
                                         const std::vector<double>& eps_list,
                                         const std::vector<std::optional<PiecewiseMap>>& candidates,
                                         const Grid& grid, double delta, double tol);

}  // namespace setval
