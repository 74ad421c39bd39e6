#include "setval/checks.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace setval {

std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::unverified: return "unverified";
  }
  return "?";
}

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_point(const Point& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ", ";
    s += format_number(p[i]);
  }
  return s + ")";
}

std::string format_list(const std::vector<double>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += format_number(v[i]);
  }
  return s + "}";
}

void validate_eps_chain(const std::vector<double>& eps) {
  if (eps.empty()) throw std::invalid_argument("eps list must be nonempty");
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0) || !std::isfinite(eps[i])) {
      throw std::invalid_argument("eps values must be positive");
    }
    if (i && !(eps[i] < eps[i - 1])) {
      throw std::invalid_argument("eps list must be strictly decreasing");
    }
  }
}

Status CheckReport::status_of(std::string_view prefix) const {
  Status s = Status::pass;
  for (const auto& v : verdicts) {
    if (v.informational || !v.name.starts_with(prefix)) continue;
    if (v.status == Status::fail) return Status::fail;
    if (v.status == Status::unverified) s = Status::unverified;
  }
  return s;
}

const Verdict* CheckReport::find(std::string_view name) const {
  for (const auto& v : verdicts) {
    if (v.name == name) return &v;
  }
  return nullptr;
}

std::vector<Witness> CheckReport::witnesses() const {
  std::vector<Witness> out;
  for (const auto& v : verdicts) {
    if (v.status == Status::fail) out.insert(out.end(), v.witnesses.begin(), v.witnesses.end());
  }
  return out;
}

void CheckReport::add(Verdict v) { verdicts.push_back(std::move(v)); }

void CheckReport::absorb(const CheckReport& sub, const std::string& prefix) {
  for (auto v : sub.verdicts) {
    v.name = prefix + v.name;
    verdicts.push_back(std::move(v));
  }
  for (const auto& n : sub.notes) notes.push_back(prefix + n);
}

void CheckReport::finish() { status = status_of(""); }

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Excess of `other` over `base`; both already closed.
double excess_over(const BoxSet& base, const BoxSet& other, std::string& category) {
  if (other.empty()) return 0.0;
  if (base.empty()) {
    category = "empty value";
    return kInf;
  }
  category = "excess";
  return hausdorff_upper(other, base);
}

struct GridValues {
  std::vector<Point> points;
  std::vector<std::optional<BoxSet>> values;  // nullopt outside the domain
};

GridValues sample(const PiecewiseMap& t, const Grid& grid) {
  if (grid.dim() != t.xdim()) throw DimensionError("grid dimension differs from the map's");
  GridValues g;
  g.points = grid.points();
  g.values.reserve(g.points.size());
  for (const auto& p : g.points) {
    if (t.domain().contains(p)) {
      g.values.emplace_back(t.evaluate(p));
    } else {
      g.values.emplace_back(std::nullopt);
    }
  }
  return g;
}

// Calls f(i, j) for every ordered pair of distinct grid indices at sup-norm
// index distance at most r.
void for_each_neighbor_pair(const Grid& grid, std::size_t r,
                            const std::function<void(std::size_t, std::size_t)>& f) {
  const std::size_t n = grid.dim();
  std::vector<std::size_t> counts(n);
  for (std::size_t k = 0; k < n; ++k) counts[k] = grid.count(k);
  const std::size_t total = grid.size();
  std::vector<long> idx(n), off(n);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (std::size_t k = n; k-- > 0;) {
      idx[k] = static_cast<long>(rem % counts[k]);
      rem /= counts[k];
    }
    const long span = 2 * static_cast<long>(r) + 1;
    long combos = 1;
    for (std::size_t k = 0; k < n; ++k) combos *= span;
    for (long c = 0; c < combos; ++c) {
      long cc = c;
      bool zero = true;
      bool inside = true;
      std::size_t other = 0;
      for (std::size_t k = n; k-- > 0;) {
        off[k] = cc % span - static_cast<long>(r);
        cc /= span;
      }
      for (std::size_t k = 0; k < n; ++k) {
        long v = idx[k] + off[k];
        if (off[k] != 0) zero = false;
        if (v < 0 || v >= static_cast<long>(counts[k])) {
          inside = false;
          break;
        }
        other = other * counts[k] + static_cast<std::size_t>(v);
      }
      if (zero || !inside) continue;
      f(flat, other);
    }
  }
}

enum class Direction { upper, lower };

Verdict semicontinuity_verdict(const PiecewiseMap& t, const Grid& grid, double delta, double tol,
                               std::string name, Direction dir) {
  if (!(delta > 0)) throw std::invalid_argument("delta must be positive");
  if (!(tol >= 0)) throw std::invalid_argument("tol must be nonnegative");
  const PiecewiseMap closed = closure_values(t);
  const GridValues g = sample(closed, grid);
  const double lip = closed.slope_modulus() * std::sqrt(static_cast<double>(closed.codim()));
  const auto r = static_cast<std::size_t>(std::floor(delta / grid.step() + 1e-9));

  auto excess_at = [&](const BoxSet& vx, const BoxSet& vz, std::string& cat) {
    return dir == Direction::upper ? excess_over(vx, vz, cat) : excess_over(vz, vx, cat);
  };

  Verdict v;
  v.name = std::move(name);
  std::size_t violations = 0;
  for_each_neighbor_pair(grid, r, [&](std::size_t i, std::size_t j) {
    if (!g.values[i] || !g.values[j]) return;
    const Point& x = g.points[i];
    const Point& y = g.points[j];
    std::string cat;
    double e = excess_at(*g.values[i], *g.values[j], cat);
    double gap = sup_norm_distance(x, y);
    if (e <= tol + lip * gap) {
      v.max_excess = std::max(v.max_excess, e);
      return;
    }
    // A genuine violation must persist as the neighbour approaches x.
    bool genuine = true;
    Point z(x.size());
    for (int k = 1; k <= 30 && genuine; ++k) {
      double s = std::ldexp(1.0, -k);
      for (std::size_t c = 0; c < x.size(); ++c) z[c] = x[c] + s * (y[c] - x[c]);
      if (!closed.domain().contains(z)) continue;
      std::string zc;
      double ez = excess_at(*g.values[i], closed.evaluate(z), zc);
      if (ez <= tol + lip * sup_norm_distance(x, z)) genuine = false;
    }
    if (!genuine) return;
    v.max_excess = std::max(v.max_excess, e);
    ++violations;
    if (v.witnesses.size() < kMaxWitnesses) v.witnesses.push_back({x, y, e, cat});
  });
  if (violations > 0) {
    v.status = Status::fail;
    v.detail = std::to_string(violations) + " violating pair(s); max excess " +
               format_number(v.max_excess);
  } else {
    v.detail = "max excess " + format_number(v.max_excess);
  }
  if (r == 0) v.detail += "; delta below one grid step, no neighbours compared";
  return v;
}

std::vector<std::pair<std::string, std::string>> resolution_params(const Grid& grid, double delta,
                                                                   double tol) {
  return {{"grid", grid.describe()}, {"delta", format_number(delta)}, {"tol", format_number(tol)}};
}

std::string eps_tag(double eps) { return "[eps=" + format_number(eps) + "]"; }

std::optional<Box> largest_box(const BoxSet& s) {
  std::optional<Box> best;
  double best_vol = -1;
  for (const auto& b : s.boxes()) {
    double vol = 1;
    for (const auto& iv : b) vol *= iv.hi() - iv.lo();
    if (vol > best_vol) {
      best_vol = vol;
      best = b;
    }
  }
  return best;
}

Point self_block(const Point& x, std::size_t offset, std::size_t d) {
  return Point(x.begin() + static_cast<long>(offset), x.begin() + static_cast<long>(offset + d));
}

}  // namespace

Verdict usc_verdict(const PiecewiseMap& t, const Grid& grid, double delta, double tol,
                    std::string name) {
  return semicontinuity_verdict(t, grid, delta, tol, std::move(name), Direction::upper);
}

Verdict lsc_verdict(const PiecewiseMap& t, const Grid& grid, double delta, double tol,
                    std::string name) {
  return semicontinuity_verdict(t, grid, delta, tol, std::move(name), Direction::lower);
}

CheckReport check_usc(const PiecewiseMap& t, const Grid& grid, double delta, double tol) {
  CheckReport r;
  r.property = "usc";
  r.parameters = resolution_params(grid, delta, tol);
  r.add(usc_verdict(t, grid, delta, tol));
  r.notes.push_back("values closed before checking");
  r.finish();
  return r;
}

Verdict nonempty_verdict(const PiecewiseMap& t, const Grid& grid, std::string name) {
  Verdict v;
  v.name = std::move(name);
  std::size_t bad = 0;
  for (const auto& p : grid.points_in(t.domain())) {
    if (!t.evaluate(p).empty()) continue;
    ++bad;
    if (v.witnesses.size() < kMaxWitnesses) v.witnesses.push_back({p, {}, kInf, "empty value"});
  }
  if (bad) {
    v.status = Status::fail;
    v.detail = std::to_string(bad) + " grid point(s) with empty value";
  }
  return v;
}

Verdict convex_verdict(const PiecewiseMap& t, const Grid& grid, std::string name) {
  Verdict v;
  v.name = std::move(name);
  std::size_t bad = 0;
  for (const auto& p : grid.points_in(t.domain())) {
    if (t.evaluate(p).boxes().size() <= 1) continue;
    ++bad;
    if (v.witnesses.size() < kMaxWitnesses) v.witnesses.push_back({p, {}, 0.0, "non-convex"});
  }
  if (bad) {
    v.status = Status::fail;
    v.detail = std::to_string(bad) + " grid point(s) with a non-convex value";
  }
  return v;
}

CheckReport check_w_usc(const PiecewiseMap& t, const BoxSet& d, const std::vector<double>& eps_list,
                        const Grid& grid, double delta, double tol) {
  validate_eps_chain(eps_list);
  CheckReport r;
  r.property = "w-usc";
  r.parameters = resolution_params(grid, delta, tol);
  r.parameters.push_back({"eps", format_list(eps_list)});
  r.parameters.push_back({"D", to_string(d)});
  for (double eps : eps_list) {
    PiecewiseMap tv = t_upper(t, eps, d);
    PiecewiseMap adh = adherence(tv);
    r.add(usc_verdict(tv, grid, delta, tol, "w-usc" + eps_tag(eps)));
    r.add(usc_verdict(adh, grid, delta, tol, "almost-w-usc" + eps_tag(eps)));
    r.add(nonempty_verdict(adh, grid, "nonempty" + eps_tag(eps)));
  }
  r.notes.push_back("values closed before checking");
  r.finish();
  return r;
}

CheckReport check_dual_w_usc(const PiecewiseMap& t1, const PiecewiseMap& t2, const BoxSet& d,
                             const std::vector<double>& eps_list, const Grid& grid, double delta,
                             double tol) {
  validate_eps_chain(eps_list);
  CheckReport r;
  r.property = "dual";
  r.parameters = resolution_params(grid, delta, tol);
  r.parameters.push_back({"eps", format_list(eps_list)});
  r.parameters.push_back({"D", to_string(d)});
  for (double eps : eps_list) {
    PiecewiseMap adh = adherence(intersect_maps(t_upper(t1, eps, d), t2));
    r.add(usc_verdict(adh, grid, delta, tol, "dual-usc" + eps_tag(eps)));
    r.add(nonempty_verdict(adh, grid, "nonempty" + eps_tag(eps)));
    Verdict lsc = lsc_verdict(adh, grid, delta, tol, "lsc-surrogate" + eps_tag(eps));
    lsc.informational = true;
    r.add(std::move(lsc));
  }
  r.notes.push_back("dual-usc follows the upper semicontinuity reading of the worked example; "
                    "lsc-surrogate records the lower semicontinuity reading");
  r.finish();
  return r;
}

CheckReport check_e_uscs(const PiecewiseMap& t, const BoxSet& k, const PiecewiseMap& candidate,
                         double eps, std::size_t self_offset, const Grid& grid, double delta,
                         double tol) {
  if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
  if (!(candidate.domain() == t.domain())) {
    throw DomainError("candidate selection must share the map's domain");
  }
  if (candidate.codim() != t.codim()) throw DimensionError("candidate codomain differs");
  if (self_offset + t.codim() > t.xdim()) throw DimensionError("self block out of range");
  CheckReport r;
  r.property = "e-uscs";
  r.parameters = resolution_params(grid, delta, tol);
  r.parameters.push_back({"eps", format_number(eps)});
  r.parameters.push_back({"K", to_string(k)});

  BoxSet region = intersect(k, t.domain());
  PiecewiseMap cand = restrict_to(candidate, region);
  r.add(usc_verdict(cand, grid, delta, tol, "usc"));
  r.add(convex_verdict(cand, grid, "convex"));

  Verdict sel;
  sel.name = "selection";
  Verdict irr;
  irr.name = "irreflexive";
  std::size_t bad_sel = 0, bad_irr = 0;
  for (const auto& x : grid.points_in(region)) {
    BoxSet c = candidate.evaluate(x);
    if (c.empty()) continue;
    BoxSet tv = t.evaluate(x);
    if (tv.empty() || !subset_within(c, dilate(tv, eps), tol)) {
      ++bad_sel;
      double e = tv.empty() ? kInf : hausdorff_upper(c, dilate(tv, eps));
      if (sel.witnesses.size() < kMaxWitnesses) sel.witnesses.push_back({x, {}, e, "not a selection"});
    }
    if (closure(c).contains(self_block(x, self_offset, t.codim()))) {
      ++bad_irr;
      if (irr.witnesses.size() < kMaxWitnesses) irr.witnesses.push_back({x, {}, 0.0, "diagonal"});
    }
  }
  if (bad_sel) {
    sel.status = Status::fail;
    sel.detail = std::to_string(bad_sel) + " grid point(s) outside T + V";
  }
  if (bad_irr) {
    irr.status = Status::fail;
    irr.detail = std::to_string(bad_irr) + " grid point(s) with x in cl S(x)";
  }
  r.add(std::move(sel));
  r.add(std::move(irr));
  r.finish();
  return r;
}

std::optional<Box> constant_selection(const PiecewiseMap& t, const BoxSet& k, double eps,
                                      std::size_t self_offset, const Grid& grid) {
  if (self_offset + t.codim() > t.xdim()) throw DimensionError("self block out of range");
  const auto pts = grid.points_in(intersect(k, t.domain()));
  if (pts.empty()) return std::nullopt;
  auto avoids_diagonal = [&](const Box& b) {
    Box cb = box_closure(b);
    return std::none_of(pts.begin(), pts.end(), [&](const Point& x) {
      return box_contains(cb, self_block(x, self_offset, t.codim()));
    });
  };
  for (bool dilated : {false, true}) {
    std::optional<BoxSet> acc;
    for (const auto& x : pts) {
      BoxSet v = dilated ? dilate(t.evaluate(x), eps) : closure(t.evaluate(x));
      acc = acc ? intersect(*acc, v) : v;
      if (acc->empty()) break;
    }
    if (auto b = largest_box(*acc); b && avoids_diagonal(*b)) return b;
  }
  return std::nullopt;
}

}  // namespace setval
