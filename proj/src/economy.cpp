#include "setval/economy.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace setval {

namespace {

Box product_box(const std::vector<Agent>& agents) {
  if (agents.empty()) throw std::invalid_argument("economy needs at least one agent");
  Box out;
  for (const auto& a : agents) out.insert(out.end(), a.choice.begin(), a.choice.end());
  return out;
}

std::string idx(std::size_t i) { return "_" + std::to_string(i + 1); }

std::string eps_tag(double eps) { return "[eps=" + format_number(eps) + "]"; }

// Fails at every point where `bad` returns a category.
template <class F>
Verdict scan(std::string name, const std::vector<Point>& pts, F bad) {
  Verdict v;
  v.name = std::move(name);
  std::size_t n = 0;
  for (const auto& x : pts) {
    if (auto cat = bad(x)) {
      ++n;
      if (v.witnesses.size() < kMaxWitnesses) v.witnesses.push_back({x, {}, 0.0, *cat});
    }
  }
  if (n) {
    v.status = Status::fail;
    v.detail = std::to_string(n) + " grid point(s) violate the condition";
  }
  return v;
}

Verdict plain(std::string name, bool ok, std::string detail) {
  Verdict v;
  v.name = std::move(name);
  v.status = ok ? Status::pass : Status::fail;
  v.detail = std::move(detail);
  return v;
}

Verdict unverified(std::string name, std::string detail) {
  Verdict v;
  v.name = std::move(name);
  v.status = Status::unverified;
  v.detail = std::move(detail);
  return v;
}

void add_params(CheckReport& r, const std::vector<double>& eps_list, const Grid& grid,
                double delta, double tol) {
  r.parameters = {{"grid", grid.describe()},
                  {"delta", format_number(delta)},
                  {"tol", format_number(tol)},
                  {"eps", format_list(eps_list)}};
}

Verdict condition_1(const AbstractEconomy& e, std::size_t i, bool compact_x) {
  const Agent& a = e.agent(i);
  bool d_ok = !a.target.empty() && a.target.is_closed() && a.target.is_single_box() &&
              subset(a.target, BoxSet::of(a.choice));
  bool x_ok = !compact_x || box_is_closed(a.choice);
  std::string detail = "X" + idx(i) + " = " + to_string(a.choice) + ", D" + idx(i) + " = " +
                       to_string(a.target);
  if (!d_ok) detail += "; D must be a nonempty compact convex subset of X";
  if (!x_ok) detail += "; X must be compact";
  return plain("(1) X" + idx(i) + ", D" + idx(i), d_ok && x_ok, detail);
}

Verdict openness_verdict(const OpennessResult& o, std::size_t i, const std::string& cond) {
  return plain(cond + " W" + idx(i) + " open", o.open, o.detail);
}

// Almost w-USC of t with nonempty convex adherence values, per eps.
void almost_w_usc(CheckReport& r, const std::string& label, const PiecewiseMap& t,
                  const BoxSet& d, const std::vector<double>& eps_list, const Grid& grid,
                  double delta, double tol) {
  for (double eps : eps_list) {
    PiecewiseMap adh = adherence(t_upper(t, eps, d));
    r.add(usc_verdict(adh, grid, delta, tol, label + " almost-w-usc" + eps_tag(eps)));
    r.add(nonempty_verdict(adh, grid, label + " nonempty" + eps_tag(eps)));
    r.add(convex_verdict(adh, grid, label + " convex" + eps_tag(eps)));
  }
}

Verdict irreflexive(const AbstractEconomy& e, std::size_t i, const PiecewiseMap& adh,
                    const std::vector<Point>& pts, std::string name) {
  return scan(std::move(name), pts, [&](const Point& x) -> std::optional<std::string> {
    if (adh.evaluate(x).contains(e.own(i, x))) return "x_i in adherence";
    return std::nullopt;
  });
}

}  // namespace

AbstractEconomy::AbstractEconomy(std::vector<Agent> agents)
    : agents_(std::move(agents)),
      space_(BoxSet::of(product_box(agents_))),
      target_(space_.dim()) {
  std::size_t off = 0;
  std::vector<BoxSet> targets;
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    const Agent& a = agents_[i];
    offsets_.push_back(off);
    off += a.choice.size();
    for (const PiecewiseMap* m : {&a.a, &a.b, &a.p}) {
      if (!(m->domain() == space_)) {
        throw DomainError("agent " + std::to_string(i + 1) + ": maps must be defined on X");
      }
      if (m->codim() != a.choice.size()) {
        throw DimensionError("agent " + std::to_string(i + 1) + ": map codomain differs from X_i");
      }
    }
    if (a.target.dim() != a.choice.size()) {
      throw DimensionError("agent " + std::to_string(i + 1) + ": D_i has the wrong dimension");
    }
    if (!a.target.is_closed()) {
      throw std::invalid_argument("agent " + std::to_string(i + 1) + ": D must be compact");
    }
    targets.push_back(a.target);
  }
  target_ = product(targets);
}

Point AbstractEconomy::own(std::size_t i, const Point& x) const {
  auto b = x.begin() + static_cast<long>(offset(i));
  return Point(b, b + static_cast<long>(dim(i)));
}

PiecewiseMap constraint_preference(const AbstractEconomy& e, std::size_t i) {
  return intersect_maps(e.agent(i).a, e.agent(i).p);
}

EquilibriumVerifier::EquilibriumVerifier(const AbstractEconomy& e) : e_(&e) {
  for (std::size_t i = 0; i < e.size(); ++i) {
    b_adh_.push_back(adherence(e.agent(i).b));
    h_.push_back(constraint_preference(e, i));
  }
}

EquilibriumCertificate EquilibriumVerifier::verify(const Point& x) const {
  if (!e_->space().contains(x)) throw DomainError("point outside X");
  EquilibriumCertificate c;
  c.x = x;
  c.valid = true;
  for (std::size_t i = 0; i < e_->size(); ++i) {
    AgentEvidence ev;
    Point xi = e_->own(i, x);
    ev.b_adherence = b_adh_[i].evaluate(x);
    ev.in_b_adherence = ev.b_adherence.contains(xi);
    ev.b_piece = adherence_witness(e_->agent(i).b, x, xi);
    ev.a_cap_p = h_[i].evaluate(x);
    c.valid = c.valid && ev.valid();
    c.agents.push_back(std::move(ev));
  }
  return c;
}

EquilibriumCertificate verify_equilibrium(const AbstractEconomy& e, const Point& x) {
  return EquilibriumVerifier(e).verify(x);
}

std::vector<EquilibriumCertificate> search_equilibria(const AbstractEconomy& e, const Grid& grid) {
  if (!grid.covers(e.target_product())) throw std::invalid_argument("grid does not cover D");
  EquilibriumVerifier v(e);
  std::vector<EquilibriumCertificate> out;
  for (const auto& x : grid.points_in(e.target_product())) {
    auto c = v.verify(x);
    if (c.valid) out.push_back(std::move(c));
  }
  return out;
}

OpennessResult w_openness(const AbstractEconomy& e, std::size_t i, const Grid& grid,
                          double delta) {
  PiecewiseMap h = constraint_preference(e, i);
  OpennessResult o;
  o.w = nonempty_set(h);
  if (o.w) {
    BoxSet boundary = intersect(*o.w, closure(difference(e.space(), *o.w)));
    o.open = boundary.empty();
    o.grid_points = grid.points_in(*o.w);
    o.detail = "W = " + to_string(*o.w);
    if (!o.open) o.detail += "; meets the closure of its complement at " + to_string(boundary);
    return o;
  }
  std::set<Point> in_w;
  for (const auto& x : grid.points_in(e.space())) {
    if (!h.evaluate(x).empty()) in_w.insert(x);
  }
  o.grid_points.assign(in_w.begin(), in_w.end());
  o.open = true;
  for (const auto& x : o.grid_points) {
    for (const auto& y : grid.points_in(e.space())) {
      if (sup_norm_distance(x, y) <= delta + 1e-12 && !in_w.count(y)) {
        o.open = false;
        o.detail = "grid surrogate: " + format_point(x) + " in W has neighbour " +
                   format_point(y) + " outside";
        return o;
      }
    }
  }
  o.detail = "grid surrogate over " + std::to_string(o.grid_points.size()) + " point(s) of W";
  return o;
}

ProductMap selection_product(const AbstractEconomy& e) {
  std::vector<PiecewiseMap> factors;
  std::vector<BoxSet> targets;
  for (std::size_t i = 0; i < e.size(); ++i) {
    PiecewiseMap h = constraint_preference(e, i);
    auto w = nonempty_set(h);
    if (!w) throw std::invalid_argument("W is not determined exactly by the piece structure");
    factors.push_back(select(*w, h, e.agent(i).b));
    targets.push_back(e.agent(i).target);
  }
  return ProductMap(std::move(factors), std::move(targets));
}

CheckReport check_theorem_4_1_hypotheses(const AbstractEconomy& e,
                                         const std::vector<double>& eps_list, const Grid& grid,
                                         double delta, double tol) {
  validate_eps_chain(eps_list);
  CheckReport r;
  r.property = "theorem-4.1";
  add_params(r, eps_list, grid, delta, tol);
  const auto pts = grid.points_in(e.space());
  for (std::size_t i = 0; i < e.size(); ++i) {
    const Agent& ag = e.agent(i);
    const std::string n = idx(i);
    PiecewiseMap h = constraint_preference(e, i);
    r.add(condition_1(e, i, false));

    r.add(convex_verdict(ag.a, grid, "(2) A" + n + " convex"));
    r.add(convex_verdict(ag.p, grid, "(2) P" + n + " convex"));
    r.add(nonempty_verdict(ag.b, grid, "(2) B" + n + " nonempty"));
    r.add(convex_verdict(ag.b, grid, "(2) B" + n + " convex"));
    r.add(scan("(2) A" + n + "∩P" + n + " ⊆ B" + n, pts,
               [&](const Point& x) -> std::optional<std::string> {
                 if (subset(h.evaluate(x), ag.b.evaluate(x))) return std::nullopt;
                 return "A∩P not inside B";
               }));

    OpennessResult o = w_openness(e, i, grid, delta);
    r.add(openness_verdict(o, i, "(3)"));

    if (o.w) {
      almost_w_usc(r, "(4) H" + n, restrict_to(h, *o.w), ag.target, eps_list, grid, delta, tol);
    } else {
      r.add(unverified("(4) H" + n, "W is not determined exactly; cannot restrict H to W"));
    }
    almost_w_usc(r, "(5) B" + n, ag.b, ag.target, eps_list, grid, delta, tol);
    r.add(irreflexive(e, i, adherence(h), pts, "(6) x" + n + " ∉ adherence(A" + n + "∩P" + n + ")"));
  }
  r.finish();
  return r;
}

CheckReport check_theorem_4_2_hypotheses(const AbstractEconomy& e,
                                         const std::vector<double>& eps_list, const Grid& grid,
                                         double delta, double tol) {
  validate_eps_chain(eps_list);
  CheckReport r;
  r.property = "theorem-4.2";
  add_params(r, eps_list, grid, delta, tol);
  const auto pts = grid.points_in(e.space());
  for (std::size_t i = 0; i < e.size(); ++i) {
    const Agent& ag = e.agent(i);
    const std::string n = idx(i);
    PiecewiseMap h = constraint_preference(e, i);
    r.add(condition_1(e, i, false));

    r.add(scan("(2) P" + n + " ⊆ D" + n, pts, [&](const Point& x) -> std::optional<std::string> {
      if (subset(ag.p.evaluate(x), ag.target)) return std::nullopt;
      return "P not inside D";
    }));
    r.add(scan("(2) A" + n + "∩P" + n + " ⊆ B" + n, pts,
               [&](const Point& x) -> std::optional<std::string> {
                 if (subset(h.evaluate(x), ag.b.evaluate(x))) return std::nullopt;
                 return "A∩P not inside B";
               }));
    r.add(nonempty_verdict(ag.b, grid, "(2) B" + n + " nonempty"));

    OpennessResult o = w_openness(e, i, grid, delta);
    r.add(openness_verdict(o, i, "(3)"));

    if (o.w) {
      BoxSet cl_w = closure(*o.w);
      CheckReport dual = check_dual_w_usc(restrict_to(ag.a, cl_w), restrict_to(ag.p, cl_w),
                                          ag.target, eps_list, grid, delta, tol);
      r.absorb(dual, "(4) (A" + n + ",P" + n + ") ");
    } else {
      r.add(unverified("(4) (A" + n + ",P" + n + ")", "W is not determined exactly"));
    }
    for (double eps : eps_list) {
      PiecewiseMap adh = adherence(t_upper(ag.b, eps, ag.target));
      r.add(usc_verdict(adh, grid, delta, tol, "(4) B" + n + " almost-w-usc" + eps_tag(eps)));
    }

    for (double eps : eps_list) {
      PiecewiseMap tv = adherence(intersect_maps(t_upper(ag.a, eps, ag.target), ag.p));
      PiecewiseMap bv = adherence(t_upper(ag.b, eps, ag.target));
      std::string tag = eps_tag(eps);
      r.add(nonempty_verdict(tv, grid, "(5) T" + n + " nonempty" + tag));
      r.add(convex_verdict(tv, grid, "(5) T" + n + " convex" + tag));
      r.add(nonempty_verdict(bv, grid, "(5) B" + n + " nonempty" + tag));
      r.add(convex_verdict(bv, grid, "(5) B" + n + " convex" + tag));
    }
    r.add(irreflexive(e, i, adherence(ag.p), pts, "(6) x" + n + " ∉ adherence(P" + n + ")"));
  }
  r.finish();
  return r;
}

CheckReport check_theorem_4_3_hypotheses(const AbstractEconomy& e,
                                         const std::vector<double>& eps_list,
                                         const std::vector<std::optional<PiecewiseMap>>& candidates,
                                         const Grid& grid, double delta, double tol) {
  validate_eps_chain(eps_list);
  if (!candidates.empty() && candidates.size() != e.size()) {
    throw std::invalid_argument("one candidate selection per agent required");
  }
  CheckReport r;
  r.property = "theorem-4.3";
  add_params(r, eps_list, grid, delta, tol);
  for (std::size_t i = 0; i < e.size(); ++i) {
    const Agent& ag = e.agent(i);
    const std::string n = idx(i);
    r.add(condition_1(e, i, true));

    PiecewiseMap cl_b = closure_values(ag.b);
    r.add(usc_verdict(cl_b, grid, delta, tol, "(2) cl B" + n + " usc"));
    r.add(nonempty_verdict(cl_b, grid, "(2) cl B" + n + " nonempty"));
    r.add(convex_verdict(cl_b, grid, "(2) cl B" + n + " convex"));

    OpennessResult o = w_openness(e, i, grid, delta);
    r.add(openness_verdict(o, i, "(3)"));

    PiecewiseMap cl_h = closure_values(constraint_preference(e, i));
    for (double eps : eps_list) {
      const std::string label = "(4) e-uscs" + n + eps_tag(eps);
      if (!o.w) {
        r.add(unverified(label, "W is not determined exactly"));
        continue;
      }
      std::optional<PiecewiseMap> cand;
      if (!candidates.empty() && candidates[i]) {
        cand = candidates[i];
      } else if (auto box = constant_selection(cl_h, *o.w, eps, e.offset(i), grid)) {
        cand = constant_map(e.space(), BoxSet::of(*box));
        r.notes.push_back(label + ": constant selection " + to_string(*box));
      }
      if (!cand) {
        r.add(unverified(label, "no candidate selection supplied and the heuristic found none"));
        continue;
      }
      CheckReport sub = check_e_uscs(cl_h, *o.w, *cand, eps, e.offset(i), grid, delta, tol);
      r.absorb(sub, label + " ");
    }
  }
  r.finish();
  return r;
}

}  // namespace setval
