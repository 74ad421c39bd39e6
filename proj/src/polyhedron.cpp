#include "setval/polyhedron.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace setval {
namespace {

constexpr double kZero = 1e-12;

double scale_of(const LinearConstraint& r) {
  double s = std::abs(r.constant);
  for (double c : r.coef) s = std::max(s, std::abs(c));
  return s;
}

// Scales each row so its largest coefficient is 1 and drops duplicates.
void normalize(std::vector<LinearConstraint>& rows) {
  for (auto& r : rows) {
    double s = 0;
    for (double c : r.coef) s = std::max(s, std::abs(c));
    if (s > 0) {
      for (double& c : r.coef) c /= s;
      r.constant /= s;
    }
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.coef != b.coef) return a.coef < b.coef;
    if (a.constant != b.constant) return a.constant < b.constant;
    return a.strict < b.strict;
  });
  // For identical coefficient rows only the tightest one matters.
  std::vector<LinearConstraint> kept;
  for (auto& r : rows) {
    if (!kept.empty() && kept.back().coef == r.coef) {
      auto& k = kept.back();
      if (r.constant < k.constant || (r.constant == k.constant && r.strict)) k = r;
      continue;
    }
    kept.push_back(std::move(r));
  }
  rows = std::move(kept);
}

bool constant_row_ok(const LinearConstraint& r) {
  double tol = kZero * std::max(1.0, scale_of(r));
  return r.strict ? r.constant > tol : r.constant >= -tol;
}

}  // namespace

bool feasible(std::vector<LinearConstraint> rows) {
  if (rows.empty()) return true;
  const std::size_t n = rows.front().coef.size();
  for (const auto& r : rows) {
    if (r.coef.size() != n) throw std::invalid_argument("feasible: ragged constraint system");
  }
  for (std::size_t var = 0; var < n; ++var) {
    normalize(rows);
    std::vector<LinearConstraint> pos, neg, next;
    for (auto& r : rows) {
      double c = r.coef[var];
      if (std::abs(c) <= kZero) {
        r.coef[var] = 0.0;
        next.push_back(std::move(r));
      } else if (c > 0) {
        pos.push_back(std::move(r));
      } else {
        neg.push_back(std::move(r));
      }
    }
    for (const auto& p : pos) {
      for (const auto& q : neg) {
        // p: a x + ... >= 0 with a > 0 (lower bound), q: -b x + ... >= 0 (upper bound).
        double a = p.coef[var];
        double b = -q.coef[var];
        LinearConstraint r;
        r.coef.resize(n);
        for (std::size_t k = 0; k < n; ++k) r.coef[k] = b * p.coef[k] + a * q.coef[k];
        r.coef[var] = 0.0;
        r.constant = b * p.constant + a * q.constant;
        r.strict = p.strict || q.strict;
        next.push_back(std::move(r));
      }
    }
    rows = std::move(next);
    // Rows that no longer mention any remaining variable can be decided now.
    std::vector<LinearConstraint> live;
    for (auto& r : rows) {
      bool any = false;
      for (std::size_t k = var + 1; k < n; ++k) any = any || std::abs(r.coef[k]) > kZero;
      if (any) {
        live.push_back(std::move(r));
      } else if (!constant_row_ok(r)) {
        return false;
      }
    }
    rows = std::move(live);
    if (rows.empty()) return true;
  }
  return std::all_of(rows.begin(), rows.end(), constant_row_ok);
}

}  // namespace setval
