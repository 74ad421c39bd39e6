#include "setval/reproduce.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "setval/builtin.hpp"
#include "setval/checks.hpp"
#include "setval/economy.hpp"
#include "setval/fixedpoint.hpp"
#include "setval/radner.hpp"
#include "setval/serialize.hpp"

namespace setval {
namespace {

constexpr double kTol = 1e-9;

using Clock = std::chrono::steady_clock;

class Section {
 public:
  explicit Section(std::string name) : start_(Clock::now()) { s_.name = std::move(name); }

  void check(std::string name, bool ok, std::string detail = "") {
    s_.checks.push_back({std::move(name), ok, std::move(detail)});
  }
  void param(std::string key, std::string value) {
    s_.parameters.emplace_back(std::move(key), std::move(value));
  }
  GoldenSection done() {
    s_.seconds = std::chrono::duration<double>(Clock::now() - start_).count();
    return std::move(s_);
  }

 private:
  GoldenSection s_;
  Clock::time_point start_;
};

std::string eps_name(double eps) { return "[eps=" + format_number(eps) + "]"; }

BoxSet interval_set(FlaggedInterval iv) { return BoxSet::of({iv}); }

// First grid point where the map's value differs from `expected`, if any.
std::optional<Point> first_mismatch(const PiecewiseMap& t, const std::vector<Point>& pts,
                                    const BoxSet& expected) {
  for (const auto& x : pts) {
    if (!(t.evaluate(x) == expected)) return x;
  }
  return std::nullopt;
}

std::string mismatch_detail(const std::optional<Point>& x, const PiecewiseMap& t) {
  if (!x) return "";
  return "differs at " + format_point(*x) + ": " + to_string(t.evaluate(*x));
}

std::string status_line(const CheckReport& r, std::string_view prefix) {
  return std::string(prefix) + " " + to_string(r.status_of(prefix));
}

// ∩_eps adh(T^eps)(x) ⊆ cl(dilate(adh T(x), eps_min)) ∩ D at every grid
// point of the domain.  Returns the first violation.
std::optional<std::string> lemma_2_2_violation(const PiecewiseMap& t, const BoxSet& d,
                                               const std::vector<double>& chain, const Grid& grid,
                                               double tol) {
  std::vector<PiecewiseMap> approx;
  for (double eps : chain) approx.push_back(adherence(t_upper(t, eps, d)));
  const PiecewiseMap adh = adherence(t);
  const double eps_min = chain.back();
  for (const auto& x : grid.points_in(t.domain())) {
    BoxSet lhs = approx.front().evaluate(x);
    for (std::size_t k = 1; k < approx.size(); ++k) lhs = intersect(lhs, approx[k].evaluate(x));
    BoxSet rhs = intersect(closure(dilate(adh.evaluate(x), eps_min)), d);
    if (!subset_within(lhs, rhs, tol)) {
      return "at " + format_point(x) + ": " + to_string(lhs) + " not within " + to_string(rhs);
    }
  }
  return std::nullopt;
}

// Q_V recomputed from a serialized copy of the factors, pointwise through
// the piece-closure test instead of the adherence map.
std::vector<Point> qv_oracle(const ProductMap& s, double eps, const Grid& grid) {
  std::vector<PiecewiseMap> factors;
  for (std::size_t i = 0; i < s.size(); ++i) {
    PiecewiseMap copy = io::map_from_json(io::json::parse(io::to_json(s.factor(i)).dump()));
    factors.push_back(t_upper(copy, eps, s.target(i)));
  }
  std::vector<Point> out;
  for (const auto& x : grid.points_in(s.target_product())) {
    bool all = true;
    for (std::size_t i = 0; i < s.size() && all; ++i) {
      all = adherence_contains(factors[i], x, s.own(i, x));
    }
    if (all) out.push_back(x);
  }
  return out;
}

double dyadic(std::mt19937_64& rng, int lo_quarters, int hi_quarters) {
  return std::uniform_int_distribution<int>(lo_quarters, hi_quarters)(rng) / 4.0;
}

bool coin(std::mt19937_64& rng, double p = 0.5) {
  return std::bernoulli_distribution(p)(rng);
}

}  // namespace

bool GoldenSection::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const GoldenCheck& c) { return c.passed; });
}

ReproduceOptions ReproduceOptions::uniform(double step) {
  if (!(step > 0) || !std::isfinite(step)) throw std::invalid_argument("step must be positive");
  double ratio = 0.5 / step;
  if (std::abs(ratio - std::round(ratio)) > 1e-9) {
    throw std::invalid_argument("step must divide 1/2 (the examples' endpoints are multiples of 1/2)");
  }
  ReproduceOptions o;
  o.map_step = o.econ_step = o.selection_step = o.radner_step = step;
  return o;
}

PiecewiseMap random_piecewise_map(std::mt19937_64& rng, std::size_t dim, std::size_t codim,
                                  std::size_t max_pieces) {
  const Box domain(dim, FlaggedInterval::closed(0, 2));
  std::vector<Box> regions{domain};
  const std::size_t target = std::uniform_int_distribution<std::size_t>(1, max_pieces)(rng);
  for (int attempt = 0; regions.size() < target && attempt < 32; ++attempt) {
    std::size_t r = std::uniform_int_distribution<std::size_t>(0, regions.size() - 1)(rng);
    std::size_t axis = std::uniform_int_distribution<std::size_t>(0, dim - 1)(rng);
    const FlaggedInterval iv = regions[r][axis];
    double c = dyadic(rng, 1, 7);
    if (!(iv.lo() < c && c < iv.hi())) continue;
    bool left_closed = coin(rng);
    Box left = regions[r], right = regions[r];
    left[axis] = FlaggedInterval(iv.lo(), c, iv.lo_closed(), left_closed);
    right[axis] = FlaggedInterval(c, iv.hi(), !left_closed, iv.hi_closed());
    regions[r] = left;
    regions.push_back(right);
  }
  std::vector<Piece> pieces;
  for (const auto& region : regions) {
    Piece p{region, {}};
    if (!coin(rng, 0.15)) {
      std::vector<DimBounds> dims;
      for (std::size_t k = 0; k < codim; ++k) {
        AffineForm lo = AffineForm::constant_form(dyadic(rng, -4, 8), dim);
        std::size_t j = std::uniform_int_distribution<std::size_t>(0, dim - 1)(rng);
        lo.coef[j] = dyadic(rng, -2, 2);
        double width = dyadic(rng, 0, 6);
        bool lc = width == 0 || coin(rng, 0.6);
        bool hc = width == 0 || coin(rng, 0.6);
        dims.push_back({{{lo, lc}}, {{lo.shifted(width), hc}}});
      }
      p.value.push_back(AffineBox(dim, std::move(dims)));
    }
    pieces.push_back(std::move(p));
  }
  return PiecewiseMap(BoxSet::of(domain), codim, std::move(pieces));
}

BoxSet random_compact_box(std::mt19937_64& rng, std::size_t dim) {
  Box b;
  for (std::size_t k = 0; k < dim; ++k) {
    double lo = dyadic(rng, -4, 8);
    b.push_back(FlaggedInterval::closed(lo, lo + dyadic(rng, 0, 8)));
  }
  return BoxSet::of(b);
}

GoldenSection reproduce_example_2_1(const ReproduceOptions& o) {
  Section s("example 2.1");
  const PiecewiseMap t1 = example_2_1_map();
  const BoxSet d = example_2_1_target();
  const Grid grid = Grid::covering(t1.domain(), o.map_step);
  const auto pts = grid.points_in(t1.domain());
  s.param("grid", grid.describe());
  for (double eps : {0.1, 0.5, 1.0}) {
    PiecewiseMap tv = t_upper(t1, eps, d);
    auto bad = first_mismatch(tv, pts, d);
    s.check("T^V" + eps_name(eps) + " = {1} on the grid", !bad, mismatch_detail(bad, tv));
    PiecewiseMap adh = adherence(tv);
    bad = first_mismatch(adh, pts, d);
    s.check("adherence of T^V" + eps_name(eps) + " = {1} on the grid", !bad,
            mismatch_detail(bad, adh));
    Verdict v = usc_verdict(adh, grid, o.map_step, kTol);
    s.check("adherence of T^V" + eps_name(eps) + " usc with excess 0",
            v.passed() && v.max_excess == 0, v.detail);
  }
  CheckReport usc = check_usc(t1, grid, o.map_step, kTol);
  bool near_one = false;
  for (const auto& w : usc.witnesses()) {
    double dx = std::abs(w.point[0] - 1);
    if (!w.neighbor.empty()) dx = std::min(dx, std::abs(w.neighbor[0] - 1));
    near_one = near_one || dx <= o.map_step + kTol;
  }
  std::string first;
  if (!usc.witnesses().empty()) {
    const Witness w = usc.witnesses().front();
    first = "witness " + format_point(w.point) + " -> " + format_point(w.neighbor) + ", excess " +
            format_number(w.excess);
  }
  s.check("T1 is not usc, witness within one step of 1", usc.status == Status::fail && near_one,
          first);
  CheckReport w = check_w_usc(t1, d, {1.0, 0.5, 0.1}, grid, o.map_step, kTol);
  s.check("T1 is w-usc and almost w-usc w.r.t. {1}", w.passed(),
          status_line(w, "w-usc") + ", " + status_line(w, "almost-w-usc") + ", " +
              status_line(w, "nonempty"));
  BoxSet adh_at_one = adherence(t1).evaluate(Point{1.0});
  s.check("adherence of T1 at 1 = [0, 2]", adh_at_one == interval_set(FlaggedInterval::closed(0, 2)),
          to_string(adh_at_one));
  return s.done();
}

GoldenSection reproduce_example_2_2(const ReproduceOptions& o) {
  Section s("example 2.2");
  const MapPair pr = example_2_2_pair();
  const Grid grid = Grid::covering(pr.t1.domain(), o.map_step);
  const auto pts = grid.points_in(pr.t1.domain());
  const BoxSet two = interval_set(FlaggedInterval::point(2));
  s.param("grid", grid.describe());
  s.check("T1(1/2) = [3/2, 2]",
          pr.t1.evaluate(Point{0.5}) == interval_set(FlaggedInterval::closed(1.5, 2)),
          to_string(pr.t1.evaluate(Point{0.5})));
  for (double eps : {0.5, 2.5}) {
    PiecewiseMap pre = intersect_maps(t_upper(pr.t1, eps, pr.target), pr.t2);
    PiecewiseMap adh = adherence(pre);
    auto bad = first_mismatch(adh, pts, two);
    s.check("adherence of (T1+V) ∩ T2 ∩ D" + eps_name(eps) + " = {2} on the grid", !bad,
            mismatch_detail(bad, adh));
    if (eps == 0.5) {
      BoxSet at_one = pre.evaluate(Point{1.0});
      s.check("(T1+V) ∩ T2 ∩ D" + eps_name(eps) + " is empty at 1", at_one.empty(),
              to_string(at_one));
    }
  }
  CheckReport r = check_dual_w_usc(pr.t1, pr.t2, pr.target, {2.5, 0.5}, grid, o.map_step, kTol);
  s.check("(T1, T2) dual almost w-usc", r.passed(),
          status_line(r, "dual-usc") + ", " + status_line(r, "nonempty"));
  return s.done();
}

GoldenSection reproduce_example_4_1(const ReproduceOptions& o) {
  Section s("example 4.1 (n = 2)");
  const AbstractEconomy e = example_4_1_economy(2);
  const Grid grid = Grid::covering(e.space(), o.econ_step);
  s.param("grid", grid.describe());
  s.param("eps", format_list({4, 2, 0.5}));
  CheckReport r = check_theorem_4_1_hypotheses(e, {4, 2, 0.5}, grid, o.econ_step, kTol);
  for (int c = 1; c <= 6; ++c) {
    std::string prefix = "(" + std::to_string(c) + ")";
    Status st = r.status_of(prefix);
    s.check("theorem 4.1 condition " + prefix, st == Status::pass, to_string(st));
  }
  const BoxSet h_value = interval_set(FlaggedInterval::closed(1.5, 2));
  const BoxSet unit_closed = BoxSet::of(Box(2, FlaggedInterval::closed(0, 1)));
  const BoxSet empty(1);
  for (std::size_t i = 0; i < e.size(); ++i) {
    PiecewiseMap adh = adherence(constraint_preference(e, i));
    std::optional<Point> bad;
    for (const auto& x : grid.points_in(e.space())) {
      BoxSet expected = unit_closed.contains(x) ? h_value : empty;
      if (!(adh.evaluate(x) == expected)) {
        bad = x;
        break;
      }
    }
    s.check("adherence of A" + std::to_string(i + 1) + "∩P" + std::to_string(i + 1) +
                " = [3/2, 2] on [0,1]^2, empty elsewhere",
            !bad, mismatch_detail(bad, adh));
    PiecewiseMap bv = t_upper(e.agent(i).b, 0.5, e.agent(i).target);
    std::optional<Point> bad_b;
    const BoxSet full = interval_set(FlaggedInterval::closed(0, 2));
    for (const auto& x : grid.points_in(e.space())) {
      bool origin = x[0] == 0 && x[1] == 0;
      if (!(bv.evaluate(x) == (origin ? empty : full))) {
        bad_b = x;
        break;
      }
    }
    s.check("B" + std::to_string(i + 1) + "^V[eps=0.5] empty at 0, [0, 2] elsewhere", !bad_b,
            mismatch_detail(bad_b, bv));
  }
  EquilibriumCertificate c = verify_equilibrium(e, {1.5, 1.5});
  s.check("(3/2, 3/2) is an equilibrium", c.valid);
  EquilibriumCertificate q = verify_equilibrium(e, {0.25, 0.25});
  s.check("(1/4, 1/4) is not: A∩P = [3/2, 2]",
          !q.valid && q.agents.front().a_cap_p == h_value, to_string(q.agents.front().a_cap_p));
  const Grid dgrid = Grid::covering(e.target_product(), o.econ_step);
  auto eqs = search_equilibria(e, dgrid);
  bool has = std::any_of(eqs.begin(), eqs.end(), [](const EquilibriumCertificate& c) {
    return c.x == Point{1.5, 1.5};
  });
  const BoxSet unit_open = BoxSet::of(Box(2, FlaggedInterval::open(0, 1)));
  bool inside = std::any_of(eqs.begin(), eqs.end(),
                            [&](const EquilibriumCertificate& c) { return unit_open.contains(c.x); });
  s.check("search finds (3/2, 3/2)", has, std::to_string(eqs.size()) + " equilibria on " +
                                             dgrid.describe());
  s.check("search finds no point of (0,1)^2", !inside);
  return s.done();
}

GoldenSection reproduce_lemma_2_2(const ReproduceOptions& o) {
  Section s("lemma 2.2 property suite");
  const std::vector<double> chain{1, 0.5, 0.25, 0.125};
  s.param("eps chain", format_list(chain));
  s.param("seed", std::to_string(o.seed));
  struct Case {
    std::string name;
    PiecewiseMap t;
    BoxSet d;
    double step;
  };
  const MapPair pr = example_2_2_pair();
  const AbstractEconomy e41 = example_4_1_economy(2);
  std::vector<Case> builtins{
      {"example 2.1 T1, D = {1}", example_2_1_map(), example_2_1_target(), o.map_step},
      {"example 2.2 T1, D = [1,2]", pr.t1, pr.target, o.map_step},
      {"example 4.1 B1, D = [0,2]", e41.agent(0).b, e41.agent(0).target, o.econ_step}};
  for (const auto& c : builtins) {
    auto v = lemma_2_2_violation(c.t, c.d, chain, Grid::covering(c.t.domain(), c.step), 0.0);
    s.check(c.name + " (tol 0)", !v, v.value_or(""));
  }
  std::mt19937_64 rng(o.seed);
  std::size_t failures = 0;
  std::string first;
  for (std::size_t k = 0; k < o.random_maps; ++k) {
    std::size_t dim = 1 + k % 2;
    std::size_t codim = std::uniform_int_distribution<std::size_t>(1, 2)(rng);
    PiecewiseMap t = random_piecewise_map(rng, dim, codim, 4);
    BoxSet d = random_compact_box(rng, codim);
    double step = dim == 1 ? o.map_step : o.econ_step;
    auto v = lemma_2_2_violation(t, d, chain, Grid::covering(t.domain(), step), step);
    if (v && failures++ == 0) first = "map " + std::to_string(k) + " " + *v;
  }
  s.check(std::to_string(o.random_maps) + " random maps (tol = grid step)", failures == 0,
          failures ? std::to_string(failures) + " failing, first " + first : "");
  return s.done();
}

GoldenSection reproduce_lemma_2_1(const ReproduceOptions& o) {
  Section s("lemma 2.1 property suite");
  s.param("seed", std::to_string(o.seed + 1));
  std::mt19937_64 rng(o.seed + 1);
  std::size_t accepted = 0, rejected = 0, failures = 0, attempts = 0;
  std::string first;
  while (accepted < o.random_usc_maps && attempts < 20 * o.random_usc_maps) {
    ++attempts;
    std::size_t dim = 1 + attempts % 2;
    std::size_t codim = std::uniform_int_distribution<std::size_t>(1, 2)(rng);
    double step = dim == 1 ? o.map_step : o.econ_step;
    PiecewiseMap base = random_piecewise_map(rng, dim, codim, 4);
    PiecewiseMap sm = adherence(base);
    Grid grid = Grid::covering(sm.domain(), step);
    if (!check_usc(sm, grid, step, kTol).passed()) {
      ++rejected;
      continue;
    }
    ++accepted;
    Box c;
    for (std::size_t k = 0; k < codim; ++k) {
      double lo = dyadic(rng, -2, 2);
      c.push_back(FlaggedInterval::closed(lo, lo + dyadic(rng, 0, 2)));
    }
    BoxSet kset = random_compact_box(rng, codim);
    PiecewiseMap t = clip(minkowski_sum(sm, c), kset);
    CheckReport r = check_usc(t, grid, step, kTol);
    if (!r.passed() && failures++ == 0) {
      first = "S + " + to_string(c) + " ∩ " + to_string(kset) + ": " +
              r.verdicts.front().detail;
    }
  }
  s.check(std::to_string(accepted) + " usc maps S: (S + C) ∩ K is usc",
          accepted == o.random_usc_maps && failures == 0,
          failures ? std::to_string(failures) + " failing, first " + first
                   : std::to_string(rejected) + " candidate(s) rejected as not usc");
  return s.done();
}

GoldenSection reproduce_fixed_point_scheme(const ReproduceOptions& o) {
  Section s("fixed-point scheme");
  const std::vector<double> chain_21{1, 0.5, 0.25};
  const std::vector<double> chain_41{0.5, 0.25, 0.125};
  const std::vector<double> chain_default{0.5, 0.25, 0.125, 0.0625};

  ProductMap p21({example_2_1_map()}, {example_2_1_target()});
  Grid g21 = Grid::covering(p21.target_product(), o.map_step);
  ChainResult r21 = intersect_qv_chain(p21, chain_21, g21);
  bool one = r21.points.size() == 1 && r21.points[0].x == Point{1.0} && r21.points[0].certified;
  s.check("example 2.1: chain intersection is {1}, certified", one,
          std::to_string(r21.points.size()) + " point(s)");
  s.check("example 2.1: Q_V nested", r21.nested);

  const AbstractEconomy e = example_4_1_economy(2);
  ProductMap p41 = selection_product(e);
  Grid g41 = Grid::covering(p41.target_product(), o.econ_step);
  ChainResult r41 = intersect_qv_chain(p41, chain_41, g41);
  bool near = std::any_of(r41.points.begin(), r41.points.end(), [&](const ChainPoint& c) {
    return c.certified && sup_norm_distance(c.x, Point{1.5, 1.5}) <= o.econ_step + kTol;
  });
  s.check("example 4.1: certified point within one step of (3/2, 3/2)", near,
          std::to_string(r41.points.size()) + " point(s)");
  s.check("example 4.1: Q_V nested", r41.nested);

  // Example 2.2's D = [1,2] is not inside X = (0,2), so its maps do not form
  // a fixed-point instance; the constraint maps of example 4.1 do.
  ProductMap pb({e.agent(0).b, e.agent(1).b}, {e.agent(0).target, e.agent(1).target});
  Grid gb = Grid::covering(pb.target_product(), o.econ_step);
  ChainResult rb = intersect_qv_chain(pb, chain_default, gb);
  s.check("example 4.1 (B1, B2): Q_V nested", rb.nested);

  struct Instance {
    std::string name;
    const ProductMap* map;
    const Grid* grid;
    const ChainResult* result;
  };
  for (const Instance& in : {Instance{"example 2.1", &p21, &g21, &r21},
                             Instance{"example 4.1", &p41, &g41, &r41},
                             Instance{"example 4.1 (B1, B2)", &pb, &gb, &rb}}) {
    bool same = true;
    for (const auto& q : in.result->sets) same = same && qv_oracle(*in.map, q.eps, *in.grid) == q.points;
    s.check(in.name + ": Q_V matches the pointwise recomputation", same);
  }
  return s.done();
}

GoldenSection reproduce_radner(const ReproduceOptions& o) {
  Section s("information economy");
  const InfoEconomy e = radner_toy();
  const AssociatedEconomy a = to_abstract_economy(e, PriceSimplex(e.bundle_dim(), o.radner_step));
  s.param("allocation step", format_number(o.radner_step));
  s.param("price step", format_number(o.radner_step));
  s.param("truncation", format_number(e.truncation()));
  InclusionSweep sw = sweep_inclusion(a, o.radner_step);
  std::string where;
  if (sw.agent) {
    where = "first at agent " + std::to_string(*sw.agent + 1) + ", x = " + format_point(sw.x) +
            ", p = " + format_point(sw.p);
  }
  s.check("A∩P ⊆ B at every sampled (x, p)", sw.violations == 0,
          std::to_string(sw.samples) + " samples, " + std::to_string(sw.violations) +
              " violation(s) " + where);
  RadnerSearch found = search_radner_equilibria(a, o.radner_step);
  std::size_t clause1 = 0, clause2 = 0, clause3 = 0;
  for (const auto& c : found.equilibria) {
    MarketClearing m = verify_market_clearing(a, c);
    clause1 += m.holds("(1)");
    clause2 += m.holds("(2)");
    clause3 += m.holds("(3)");
  }
  const std::size_t n = found.equilibria.size();
  s.check("every certificate found clears the market (clause 1)", clause1 == n,
          std::to_string(n) + " equilibria; clause (2) holds for " + std::to_string(clause2) +
              ", clause (3) for " + std::to_string(clause3));
  Point autarky;
  for (const auto& ei : e.endowments()) autarky.insert(autarky.end(), ei.begin(), ei.end());
  const Point p{0.25, 0.5, 0.25};
  RadnerCertificate c = verify_radner_equilibrium(a, autarky, p);
  MarketClearing m = verify_market_clearing(a, c);
  bool all = std::all_of(m.clauses.begin(), m.clauses.end(),
                         [](const ClauseResult& r) { return r.holds; });
  s.check("autarky at p = (1/4, 1/2, 1/4) is an equilibrium satisfying every clause",
          c.valid && all);
  return s.done();
}

GoldenSection reproduce_hypotheses(const ReproduceOptions& o) {
  Section s("existence-theorem hypotheses");
  const AbstractEconomy e22 = example_2_2_economy();
  const Grid g22 = Grid::covering(e22.space(), o.map_step);
  CheckReport r42 = check_theorem_4_2_hypotheses(e22, {2.5, 0.5}, g22, o.map_step, kTol);
  s.check("theorem 4.2 condition (4) on example 2.2", r42.status_of("(4)") == Status::pass,
          to_string(r42.status_of("(4)")));

  const AbstractEconomy e41 = example_4_1_economy(2);
  const Grid g41 = Grid::covering(e41.space(), o.econ_step);
  CheckReport r42b = check_theorem_4_2_hypotheses(e41, {4, 2, 0.5}, g41, o.econ_step, kTol);
  s.check("theorem 4.2 condition (2) fails on example 4.1 (P exceeds D)",
          r42b.status_of("(2)") == Status::fail && !r42b.witnesses().empty());

  const Grid gsel = Grid::covering(e41.space(), o.selection_step);
  std::vector<std::optional<PiecewiseMap>> constant(
      e41.size(), constant_map(e41.space(), interval_set(FlaggedInterval::closed(1.5, 2))));
  CheckReport r43 =
      check_theorem_4_3_hypotheses(e41, {0.5}, constant, gsel, o.selection_step, kTol);
  s.check("theorem 4.3 condition (4) on example 4.1 with selection [3/2, 2]",
          r43.status_of("(4)") == Status::pass, to_string(r43.status_of("(4)")));
  CheckReport heur = check_theorem_4_3_hypotheses(e41, {0.5}, {}, gsel, o.selection_step, kTol);
  s.check("theorem 4.3 condition (4) on example 4.1 with the constant-selection heuristic",
          heur.status_of("(4)") == Status::pass, to_string(heur.status_of("(4)")));
  return s.done();
}

std::vector<GoldenSection> reproduce_all(const ReproduceOptions& o) {
  return {reproduce_example_2_1(o),        reproduce_example_2_2(o), reproduce_example_4_1(o),
          reproduce_lemma_2_2(o),          reproduce_lemma_2_1(o),   reproduce_fixed_point_scheme(o),
          reproduce_radner(o),             reproduce_hypotheses(o)};
}

}  // namespace setval
