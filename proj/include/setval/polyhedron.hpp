// Feasibility of small systems of linear inequalities, some of them strict,
// by Fourier-Motzkin elimination.  Sizes here are tiny (a handful of
// variables, a few dozen rows), so the quadratic blow-up is harmless.
#pragma once

#include <vector>

namespace setval {

/// coef . x + constant  > 0  (strict)  or  >= 0.
struct LinearConstraint {
  std::vector<double> coef;
  double constant = 0.0;
  bool strict = false;
};

/// True when some x satisfies every constraint.  All rows must have the
/// same number of coefficients.
bool feasible(std::vector<LinearConstraint> rows);

}  // namespace setval
