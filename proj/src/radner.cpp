#include "setval/radner.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

#include "setval/checks.hpp"

namespace setval {

namespace {

constexpr double kPriceTol = 1e-9;
constexpr double kTol = 1e-12;

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

LinearConstraint negated(const LinearConstraint& c) {
  LinearConstraint n{c.coef, -c.constant, !c.strict};
  for (double& v : n.coef) v = -v;
  return n;
}

std::vector<LinearConstraint> box_constraints(std::size_t dim, double m) {
  std::vector<LinearConstraint> rows;
  for (std::size_t k = 0; k < dim; ++k) {
    LinearConstraint lo{std::vector<double>(dim, 0.0), 0.0, false};
    lo.coef[k] = 1;
    LinearConstraint hi{std::vector<double>(dim, 0.0), m, false};
    hi.coef[k] = -1;
    rows.push_back(std::move(lo));
    rows.push_back(std::move(hi));
  }
  return rows;
}

std::vector<LinearConstraint> simplex_constraints(std::size_t dim) {
  std::vector<LinearConstraint> rows;
  for (std::size_t k = 0; k < dim; ++k) {
    LinearConstraint lo{std::vector<double>(dim, 0.0), 0.0, false};
    lo.coef[k] = 1;
    rows.push_back(std::move(lo));
  }
  rows.push_back({std::vector<double>(dim, 1.0), -1.0, false});
  rows.push_back({std::vector<double>(dim, -1.0), 1.0, false});
  return rows;
}

// Rows of a flagged box: y_k - lo >= 0 (or > 0), hi - y_k >= 0 (or > 0).
std::vector<LinearConstraint> flagged_box_constraints(const Box& b) {
  const std::size_t dim = b.size();
  std::vector<LinearConstraint> rows;
  for (std::size_t k = 0; k < dim; ++k) {
    LinearConstraint lo{std::vector<double>(dim, 0.0), -b[k].lo(), !b[k].lo_closed()};
    lo.coef[k] = 1;
    LinearConstraint hi{std::vector<double>(dim, 0.0), b[k].hi(), !b[k].hi_closed()};
    hi.coef[k] = -1;
    rows.push_back(std::move(lo));
    rows.push_back(std::move(hi));
  }
  return rows;
}

void append(std::vector<LinearConstraint>& to, const std::vector<LinearConstraint>& from) {
  to.insert(to.end(), from.begin(), from.end());
}

}  // namespace

SignalTable::SignalTable(Labels defaults, std::vector<Entry> by_price)
    : defaults_(std::move(defaults)), entries_(std::move(by_price)) {
  for (const auto& e : entries_) {
    if (e.labels.size() != defaults_.size()) {
      throw std::invalid_argument("signal table: every entry needs labels for every agent");
    }
  }
}

const std::vector<std::string>& SignalTable::labels(std::size_t agent,
                                                    std::span<const double> p) const {
  for (const auto& e : entries_) {
    if (e.price.size() != p.size()) continue;
    bool same = true;
    for (std::size_t k = 0; k < p.size() && same; ++k) {
      same = std::abs(e.price[k] - p[k]) <= kPriceTol;
    }
    if (same) return e.labels.at(agent);
  }
  return defaults_.at(agent);
}

double default_truncation(const std::vector<Point>& endowments) {
  if (endowments.empty()) throw std::invalid_argument("no endowments");
  Point agg(endowments.front().size(), 0.0);
  for (const auto& e : endowments) {
    for (std::size_t k = 0; k < agg.size(); ++k) agg[k] += e.at(k);
  }
  return 2 * *std::max_element(agg.begin(), agg.end());
}

PiecewiseMap monotone_preference(std::size_t dim, double truncation) {
  std::vector<DimBounds> dims;
  for (std::size_t k = 0; k < dim; ++k) {
    dims.push_back({{{AffineForm::coordinate(0, 1, k, dim), false}},
                    {{AffineForm::constant_form(truncation, dim), true}}});
  }
  Box dom(dim, FlaggedInterval::closed(0, truncation));
  return PiecewiseMap(BoxSet::of(dom), dim, {{dom, {AffineBox(dim, std::move(dims))}}});
}

InfoEconomy::InfoEconomy(std::size_t states, std::size_t goods, std::vector<Point> endowments,
                         SignalTable signals, std::vector<PiecewiseMap> preferences,
                         std::optional<double> truncation)
    : states_(states),
      goods_(goods),
      endowments_(std::move(endowments)),
      signals_(std::move(signals)),
      preferences_(std::move(preferences)),
      truncation_(0) {
  if (states_ == 0 || goods_ == 0) throw std::invalid_argument("need at least one state and good");
  if (endowments_.empty()) throw std::invalid_argument("need at least one agent");
  const std::size_t d = bundle_dim();
  for (const auto& e : endowments_) {
    if (e.size() != d) throw DimensionError("endowment of wrong dimension");
    for (double v : e) {
      if (!(v >= 0)) throw std::invalid_argument("endowments must be nonnegative");
    }
  }
  if (signals_.defaults().size() != endowments_.size()) {
    throw std::invalid_argument("signal table must list every agent");
  }
  auto check_labels = [&](const SignalTable::Labels& l) {
    for (const auto& row : l) {
      if (row.size() != states_) throw std::invalid_argument("signal labels must cover every state");
    }
  };
  check_labels(signals_.defaults());
  for (const auto& e : signals_.entries()) {
    check_labels(e.labels);
    validate_price(e.price, d);
  }
  Point agg = aggregate_endowment();
  double need = *std::max_element(agg.begin(), agg.end());
  truncation_ = truncation ? *truncation : default_truncation(endowments_);
  if (!(truncation_ >= need) || !std::isfinite(truncation_)) {
    throw std::invalid_argument("truncation too small");
  }
  if (preferences_.empty()) {
    for (std::size_t i = 0; i < endowments_.size(); ++i) {
      preferences_.push_back(monotone_preference(d, truncation_));
    }
  }
  if (preferences_.size() != endowments_.size()) {
    throw std::invalid_argument("one preference map per agent required");
  }
  const BoxSet space = BoxSet::of(truncation_box());
  for (const auto& q : preferences_) {
    if (!(q.domain() == space) || q.codim() != d) {
      throw DomainError("preference maps must be defined on [0, M]^(l*m+1) with values there");
    }
  }
}

Point InfoEconomy::aggregate_endowment() const {
  Point agg(bundle_dim(), 0.0);
  for (const auto& e : endowments_) {
    for (std::size_t k = 0; k < agg.size(); ++k) agg[k] += e[k];
  }
  return agg;
}

std::vector<std::vector<std::size_t>> InfoEconomy::classes(std::size_t i,
                                                           std::span<const double> p) const {
  const auto& labels = signals_.labels(i, p);
  std::map<std::string, std::vector<std::size_t>> by_label;
  std::vector<std::string> order;
  for (std::size_t s = 0; s < states_; ++s) {
    if (!by_label.count(labels[s])) order.push_back(labels[s]);
    by_label[labels[s]].push_back(s + 1);
  }
  std::vector<std::vector<std::size_t>> out;
  for (const auto& l : order) out.push_back(by_label[l]);
  return out;
}

Box InfoEconomy::truncation_box() const {
  return Box(bundle_dim(), FlaggedInterval::closed(0, truncation_));
}

void validate_price(std::span<const double> p, std::size_t dim) {
  if (p.size() != dim) throw DimensionError("price of wrong dimension");
  double sum = 0;
  for (double v : p) {
    if (!(v >= -kPriceTol)) throw std::invalid_argument("prices must be nonnegative");
    sum += v;
  }
  if (std::abs(sum - 1) > kPriceTol) throw std::invalid_argument("prices must sum to one");
}

bool BudgetSet::contains(std::span<const double> y) const {
  for (double v : y) {
    if (v < 0 || v > truncation) return false;
  }
  return dot(price, y) < wealth;
}

bool BudgetSet::relaxed_contains(std::span<const double> y) const {
  for (double v : y) {
    if (v < 0 || v > truncation) return false;
  }
  return dot(price, y) <= wealth + kTol;
}

BoxSet BudgetSet::bounding() const {
  const std::size_t d = price.size();
  if (!(wealth > 0)) return BoxSet(d);
  Box b;
  for (std::size_t k = 0; k < d; ++k) {
    if (price[k] > 0 && wealth / price[k] <= truncation) {
      b.push_back({0, wealth / price[k], true, false});
    } else {
      b.push_back(FlaggedInterval::closed(0, truncation));
    }
  }
  return BoxSet::of(b);
}

std::vector<LinearConstraint> BudgetSet::constraints() const {
  auto rows = box_constraints(price.size(), truncation);
  LinearConstraint budget{price, wealth, true};
  for (double& v : budget.coef) v = -v;
  rows.push_back(std::move(budget));
  return rows;
}

BudgetSet budget_set(const InfoEconomy& e, std::size_t i, std::span<const double> p) {
  validate_price(p, e.bundle_dim());
  return {Point(p.begin(), p.end()), dot(p, e.endowment(i)), e.truncation()};
}

bool InformationSet::contains(std::span<const double> y, double tol_eq) const {
  for (double v : y) {
    if (v < 0 || v > truncation) return false;
  }
  for (const auto& cls : classes) {
    for (std::size_t j = 1; j < cls.size(); ++j) {
      for (std::size_t g = 0; g < goods; ++g) {
        double a = y[1 + (cls[0] - 1) * goods + g];
        double b = y[1 + (cls[j] - 1) * goods + g];
        if (std::abs(a - b) > tol_eq) return false;
      }
    }
  }
  return true;
}

BoxSet InformationSet::bounding() const {
  std::size_t states = 0;
  for (const auto& c : classes) states += c.size();
  return BoxSet::of(Box(goods * states + 1, FlaggedInterval::closed(0, truncation)));
}

std::vector<LinearConstraint> InformationSet::constraints(std::size_t dim) const {
  std::vector<LinearConstraint> rows;
  for (const auto& cls : classes) {
    for (std::size_t j = 1; j < cls.size(); ++j) {
      for (std::size_t g = 0; g < goods; ++g) {
        LinearConstraint c{std::vector<double>(dim, 0.0), 0.0, false};
        c.coef[1 + (cls[j] - 1) * goods + g] = 1;
        c.coef[1 + (cls[0] - 1) * goods + g] = -1;
        rows.push_back(c);
        rows.push_back(negated(c));
        rows.back().strict = false;
      }
    }
  }
  return rows;
}

InformationSet information_set(const InfoEconomy& e, std::size_t i, std::span<const double> p) {
  validate_price(p, e.bundle_dim());
  return {e.classes(i, p), e.goods(), e.truncation()};
}

bool DeliverySet::contains(std::span<const double> y) const {
  auto state_value = [&](std::size_t s, std::size_t t) {
    // p_s . y(t)
    double v = 0;
    for (std::size_t g = 0; g < goods; ++g) {
      v += price[1 + (s - 1) * goods + g] * y[(t - 1) * goods + g];
    }
    return v;
  };
  for (const auto& cls : classes) {
    for (std::size_t s : cls) {
      for (std::size_t t : cls) {
        if (state_value(s, s) > state_value(s, t) + kTol) return false;
      }
    }
  }
  return true;
}

DeliverySet delivery_set(const InfoEconomy& e, std::size_t i, std::span<const double>,
                         std::span<const double> p) {
  validate_price(p, e.bundle_dim());
  return {Point(p.begin(), p.end()), e.classes(i, p), e.goods()};
}

PriceSimplex::PriceSimplex(std::size_t dim, double step) : dim_(dim), step_(step) {
  if (dim == 0) throw DimensionError("simplex needs a positive dimension");
  if (!(step > 0) || step > 1) throw std::invalid_argument("simplex step must lie in (0, 1]");
  double k = 1 / step;
  if (std::abs(k - std::round(k)) > 1e-9) {
    throw std::invalid_argument("simplex step must divide 1");
  }
  divisions_ = static_cast<std::size_t>(std::round(k));
}

std::vector<Point> PriceSimplex::points() const {
  std::vector<Point> out;
  std::vector<std::size_t> c(dim_, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t k, std::size_t left) {
    if (k + 1 == dim_) {
      c[k] = left;
      Point p(dim_);
      for (std::size_t j = 0; j < dim_; ++j) {
        p[j] = static_cast<double>(c[j]) / static_cast<double>(divisions_);
      }
      out.push_back(std::move(p));
      return;
    }
    for (std::size_t v = 0; v <= left; ++v) {
      c[k] = v;
      rec(k + 1, left - v);
    }
  };
  rec(0, divisions_);
  std::sort(out.begin(), out.end());
  return out;
}

AssociatedEconomy::AssociatedEconomy(InfoEconomy e, PriceSimplex simplex)
    : e_(std::move(e)), simplex_(simplex) {
  if (simplex_.dim() != e_.bundle_dim()) {
    throw DimensionError("price simplex dimension differs from the bundle dimension");
  }
}

AssociatedEconomy to_abstract_economy(const InfoEconomy& e, const PriceSimplex& simplex) {
  return AssociatedEconomy(e, simplex);
}

Point AssociatedEconomy::bundle(std::size_t i, std::span<const double> x) const {
  const std::size_t d = e_.bundle_dim();
  if (x.size() != d * e_.agents()) throw DimensionError("allocation of wrong dimension");
  return Point(x.begin() + static_cast<long>(i * d), x.begin() + static_cast<long>((i + 1) * d));
}

Point AssociatedEconomy::excess(std::span<const double> x) const {
  Point z(e_.bundle_dim(), 0.0);
  for (std::size_t i = 0; i < e_.agents(); ++i) {
    Point b = bundle(i, x);
    for (std::size_t k = 0; k < z.size(); ++k) z[k] += b[k] - e_.endowment(i)[k];
  }
  return z;
}

std::vector<LinearConstraint> AssociatedEconomy::a_constraints(std::size_t i,
                                                               std::span<const double> x,
                                                               std::span<const double> p) const {
  validate_price(p, e_.bundle_dim());
  if (i == price_player()) return simplex_constraints(e_.bundle_dim());
  (void)bundle(i, x);
  return budget_set(e_, i, p).constraints();
}

std::vector<LinearConstraint> AssociatedEconomy::b_constraints(std::size_t i,
                                                               std::span<const double> x,
                                                               std::span<const double> p) const {
  auto rows = a_constraints(i, x, p);
  if (i != price_player()) append(rows, information_set(e_, i, p).constraints(e_.bundle_dim()));
  return rows;
}

std::vector<std::vector<LinearConstraint>> AssociatedEconomy::p_constraints(
    std::size_t i, std::span<const double> x, std::span<const double> p) const {
  validate_price(p, e_.bundle_dim());
  const std::size_t d = e_.bundle_dim();
  std::vector<std::vector<LinearConstraint>> out;
  if (i == price_player()) {
    // q in Δ with (q - p).z > 0.
    Point z = excess(x);
    auto rows = simplex_constraints(d);
    rows.push_back({z, -dot(p, z), true});
    out.push_back(std::move(rows));
    return out;
  }
  auto info = information_set(e_, i, p).constraints(d);
  auto box = box_constraints(d, e_.truncation());
  const BoxSet preferred = e_.preference(i).evaluate(bundle(i, x));
  for (const auto& b : preferred.boxes()) {
    auto rows = flagged_box_constraints(b);
    append(rows, box);
    append(rows, info);
    out.push_back(std::move(rows));
  }
  return out;
}

bool AssociatedEconomy::a_cap_p_empty(std::size_t i, std::span<const double> x,
                                      std::span<const double> p) const {
  if (i != price_player()) return a_cap_p_empty_by_elimination(i, x, p);
  validate_price(p, e_.bundle_dim());
  Point z = excess(x);
  double best = *std::max_element(z.begin(), z.end());
  return best <= dot(p, z) + kTol;
}

bool AssociatedEconomy::a_cap_p_empty_by_elimination(std::size_t i, std::span<const double> x,
                                                     std::span<const double> p) const {
  auto a = a_constraints(i, x, p);
  for (auto rows : p_constraints(i, x, p)) {
    append(rows, a);
    if (feasible(std::move(rows))) return false;
  }
  return true;
}

bool AssociatedEconomy::b_adherence_contains(std::size_t i, std::span<const double> x,
                                             std::span<const double> p,
                                             std::span<const double> y) const {
  validate_price(p, e_.bundle_dim());
  if (y.size() != e_.bundle_dim()) throw DimensionError("bundle of wrong dimension");
  if (i == price_player()) {
    double sum = 0;
    for (double v : y) {
      if (v < -kTol) return false;
      sum += v;
    }
    return std::abs(sum - 1) <= kTol;
  }
  (void)bundle(i, x);
  return budget_set(e_, i, p).relaxed_contains(y) && information_set(e_, i, p).contains(y);
}

bool AssociatedEconomy::inclusion_holds(std::size_t i, std::span<const double> x,
                                        std::span<const double> p) const {
  auto a = a_constraints(i, x, p);
  auto b = b_constraints(i, x, p);
  for (auto rows : p_constraints(i, x, p)) {
    append(rows, a);
    for (const auto& c : b) {
      // A row of the system itself is trivially implied.
      if (std::any_of(rows.begin(), rows.end(), [&](const LinearConstraint& r) {
            return r.strict == c.strict && r.constant == c.constant && r.coef == c.coef;
          })) {
        continue;
      }
      auto probe = rows;
      probe.push_back(negated(c));
      if (feasible(std::move(probe))) return false;
    }
  }
  return true;
}

InclusionSweep sweep_inclusion(const AssociatedEconomy& a, double alloc_step) {
  const InfoEconomy& e = a.base();
  const std::size_t d = e.bundle_dim();
  const std::size_t n = e.agents();
  const double m = e.truncation();
  const auto own = Grid(Point(d, 0.0), Point(d, m), alloc_step).points();
  const auto sums = Grid(Point(d, 0.0), Point(d, m * static_cast<double>(n)), alloc_step).points();
  InclusionSweep out;
  auto record = [&](std::size_t i, const Point& x, const Point& p) {
    ++out.samples;
    if (a.inclusion_holds(i, x, p)) return;
    if (out.violations++ == 0) {
      out.agent = i;
      out.x = x;
      out.p = p;
    }
  };
  for (const auto& p : a.simplex().points()) {
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto& y : own) {
        Point x(n * d, 0.0);
        std::copy(y.begin(), y.end(), x.begin() + static_cast<long>(i * d));
        record(i, x, p);
      }
    }
    for (const auto& s : sums) {
      // Any allocation with this aggregate; fill agents in order.
      Point x(n * d, 0.0);
      for (std::size_t k = 0; k < d; ++k) {
        double left = s[k];
        for (std::size_t i = 0; i < n && left > 0; ++i) {
          double take = std::min(left, m);
          x[i * d + k] = take;
          left -= take;
        }
      }
      record(a.price_player(), x, p);
    }
  }
  return out;
}

RadnerCertificate verify_radner_equilibrium(const AssociatedEconomy& a, std::span<const double> x,
                                            std::span<const double> p) {
  RadnerCertificate c;
  c.x.assign(x.begin(), x.end());
  c.p.assign(p.begin(), p.end());
  c.valid = true;
  for (std::size_t i = 0; i < a.agents(); ++i) {
    Point own = i == a.price_player() ? c.p : a.bundle(i, x);
    bool in_b = a.b_adherence_contains(i, x, p, own);
    bool empty = a.a_cap_p_empty(i, x, p);
    c.in_b_adherence.push_back(in_b);
    c.a_cap_p_empty.push_back(empty);
    c.valid = c.valid && in_b && empty;
  }
  return c;
}

RadnerSearch search_radner_equilibria(const AssociatedEconomy& a, double alloc_step,
                                      std::size_t max_results) {
  const InfoEconomy& e = a.base();
  const std::size_t d = e.bundle_dim();
  const std::size_t n = e.agents();
  Grid bundles(Point(d, 0.0), Point(d, e.truncation()), alloc_step);
  const auto grid_points = bundles.points();
  RadnerSearch out;
  for (const auto& p : a.simplex().points()) {
    ++out.prices;
    // Agent clauses depend on the agent's own bundle only.
    std::vector<std::vector<Point>> ok(n);
    Point x(n * d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto& y : grid_points) {
        std::copy(y.begin(), y.end(), x.begin() + static_cast<long>(i * d));
        if (a.b_adherence_contains(i, x, p, y) && a.a_cap_p_empty(i, x, p)) ok[i].push_back(y);
      }
      std::fill(x.begin(), x.end(), 0.0);
    }
    std::vector<std::size_t> pick(n, 0);
    if (std::any_of(ok.begin(), ok.end(), [](const auto& v) { return v.empty(); })) continue;
    while (true) {
      for (std::size_t i = 0; i < n; ++i) {
        std::copy(ok[i][pick[i]].begin(), ok[i][pick[i]].end(), x.begin() + static_cast<long>(i * d));
      }
      ++out.candidates;
      if (a.a_cap_p_empty(a.price_player(), x, p)) {
        auto c = verify_radner_equilibrium(a, x, p);
        if (c.valid) out.equilibria.push_back(std::move(c));
        if (out.equilibria.size() >= max_results) {
          out.diagnostics.push_back("stopped after " + std::to_string(max_results) +
                                    " equilibria");
          return out;
        }
      }
      std::size_t k = n;
      while (k-- > 0) {
        if (++pick[k] < ok[k].size()) break;
        pick[k] = 0;
      }
      if (k == static_cast<std::size_t>(-1)) break;
    }
  }
  out.diagnostics.push_back(std::to_string(out.prices) + " price(s), " +
                            std::to_string(out.candidates) + " allocation candidate(s), step " +
                            format_number(alloc_step));
  if (out.equilibria.empty()) {
    out.diagnostics.push_back("no equilibrium at this resolution; the strict budget may exclude "
                              "boundary equilibria");
  }
  return out;
}

bool MarketClearing::holds(std::string_view prefix) const {
  return std::all_of(clauses.begin(), clauses.end(), [&](const ClauseResult& c) {
    return !c.name.starts_with(prefix) || c.holds;
  });
}

MarketClearing verify_market_clearing(const AssociatedEconomy& a, const RadnerCertificate& c,
                                      double tol, double sample_step) {
  const InfoEconomy& e = a.base();
  const std::size_t d = e.bundle_dim();
  MarketClearing m;
  Point z = a.excess(c.x);
  {
    bool ok = std::all_of(z.begin(), z.end(), [&](double v) { return v <= tol; });
    m.clauses.push_back({"(1) aggregate", ok, "Σx - Σe = " + format_point(z)});
  }
  for (std::size_t j = 0; j < d; ++j) {
    Point q(d, 0.0);
    q[j] = 1;
    double v = dot(q, z);
    m.clauses.push_back({"(1) canonical q" + std::to_string(j), v <= tol,
                         "q.(Σx - Σe) = " + format_number(v)});
  }
  Grid samples(Point(d, 0.0), Point(d, e.truncation()), sample_step);
  for (std::size_t i = 0; i < e.agents(); ++i) {
    const std::string n = " #" + std::to_string(i + 1);
    Point xi = a.bundle(i, c.x);
    BudgetSet b = budget_set(e, i, c.p);
    InformationSet info = information_set(e, i, c.p);
    bool relaxed = b.relaxed_contains(xi) && info.contains(xi);
    m.clauses.push_back({"(2) relaxed" + n, relaxed, "x in cl I(p) ∩ cl B(p)"});
    // I ∩ B is convex and contains 0 when p.e > 0, so its closure is the
    // relaxed set; otherwise I ∩ B is empty.
    bool cl = b.wealth > 0 && relaxed;
    m.clauses.push_back({"(2) closure" + n, cl,
                         b.wealth > 0 ? "x in cl(I ∩ B)(p)" : "p.e = 0, so I ∩ B is empty"});
    bool exact = a.a_cap_p_empty(i, c.x, c.p);
    m.clauses.push_back({"(3) exact" + n, exact, "Q'(x) ∩ I(p) ∩ B(p) decided by elimination"});
    const PiecewiseMap& q = e.preference(i);
    BoxSet better = q.evaluate(xi);
    std::size_t bad = 0;
    for (const auto& y : samples.points()) {
      if (better.contains(y) && info.contains(y) && b.contains(y)) ++bad;
    }
    m.clauses.push_back({"(3) sampled" + n, bad == 0,
                         std::to_string(bad) + " affordable preferred sample(s)"});
  }
  return m;
}

}  // namespace setval
