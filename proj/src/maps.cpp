#include "setval/maps.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace setval {

AffineForm AffineForm::coordinate(double c0, double s, std::size_t index, std::size_t xdim) {
  AffineForm f = constant_form(c0, xdim);
  f.coef.at(index) = s;
  return f;
}

double AffineForm::operator()(std::span<const double> x) const {
  if (x.size() != coef.size()) throw DimensionError("affine form: dimension mismatch");
  double v = constant;
  for (std::size_t j = 0; j < coef.size(); ++j) {
    if (coef[j] != 0.0) v += coef[j] * x[j];
  }
  return v;
}

AffineForm AffineForm::negated() const {
  AffineForm f{-constant, coef};
  for (double& c : f.coef) c = -c;
  return f;
}

AffineForm AffineForm::minus(const AffineForm& other) const {
  AffineForm f{constant - other.constant, coef};
  for (std::size_t j = 0; j < coef.size(); ++j) f.coef[j] -= other.coef[j];
  return f;
}

double AffineForm::slope() const {
  double s = 0;
  for (double c : coef) s += std::abs(c);
  return s;
}

bool AffineForm::is_constant() const {
  return std::all_of(coef.begin(), coef.end(), [](double c) { return c == 0.0; });
}

bool Guard::holds(std::span<const double> x) const {
  double v = form(x);
  return strict ? v > 0 : v >= 0;
}

AffineBox::AffineBox(std::size_t xdim, std::vector<DimBounds> dims, std::vector<Guard> guards)
    : xdim_(xdim), dims_(std::move(dims)), guards_(std::move(guards)) {
  if (dims_.empty()) throw DimensionError("AffineBox needs at least one output dimension");
  for (const auto& d : dims_) {
    if (d.lower.empty() || d.upper.empty()) {
      throw std::invalid_argument("AffineBox: every dimension needs lower and upper bounds");
    }
    for (const auto* side : {&d.lower, &d.upper}) {
      for (const auto& b : *side) {
        if (b.form.coef.size() != xdim) throw DimensionError("AffineBox: bound of wrong arity");
      }
    }
  }
  for (const auto& g : guards_) {
    if (g.form.coef.size() != xdim) throw DimensionError("AffineBox: guard of wrong arity");
  }
}

AffineBox AffineBox::constant(const Box& value, std::size_t xdim) {
  std::vector<DimBounds> dims;
  for (const auto& iv : value) {
    dims.push_back({{{AffineForm::constant_form(iv.lo(), xdim), iv.lo_closed()}},
                    {{AffineForm::constant_form(iv.hi(), xdim), iv.hi_closed()}}});
  }
  return AffineBox(xdim, std::move(dims));
}

AffineBox AffineBox::interval(AffineForm lo, AffineForm hi, bool lo_closed, bool hi_closed) {
  std::size_t xdim = lo.coef.size();
  return AffineBox(xdim, {{{{std::move(lo), lo_closed}}, {{std::move(hi), hi_closed}}}});
}

std::optional<Box> AffineBox::at(std::span<const double> x) const {
  for (const auto& g : guards_) {
    if (!g.holds(x)) return std::nullopt;
  }
  Box out;
  out.reserve(dims_.size());
  for (const auto& d : dims_) {
    double lo = d.lower.front().form(x);
    bool lo_closed = d.lower.front().closed;
    for (std::size_t j = 1; j < d.lower.size(); ++j) {
      double v = d.lower[j].form(x);
      if (v > lo) {
        lo = v;
        lo_closed = d.lower[j].closed;
      } else if (v == lo) {
        lo_closed = lo_closed && d.lower[j].closed;
      }
    }
    double hi = d.upper.front().form(x);
    bool hi_closed = d.upper.front().closed;
    for (std::size_t j = 1; j < d.upper.size(); ++j) {
      double v = d.upper[j].form(x);
      if (v < hi) {
        hi = v;
        hi_closed = d.upper[j].closed;
      } else if (v == hi) {
        hi_closed = hi_closed && d.upper[j].closed;
      }
    }
    auto iv = FlaggedInterval::make(lo, hi, lo_closed, hi_closed);
    if (!iv) return std::nullopt;
    out.push_back(*iv);
  }
  return out;
}

std::vector<Guard> AffineBox::nonempty_conditions() const {
  std::vector<Guard> out = guards_;
  for (const auto& d : dims_) {
    for (const auto& l : d.lower) {
      for (const auto& u : d.upper) {
        Guard g{u.form.minus(l.form), !(l.closed && u.closed)};
        if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(std::move(g));
      }
    }
  }
  return out;
}

AffineBox AffineBox::plus(const Box& c) const {
  if (c.size() != dims_.size()) throw DimensionError("AffineBox::plus: dimension mismatch");
  std::vector<DimBounds> dims = dims_;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    for (auto& b : dims[k].lower) {
      b.form = b.form.shifted(c[k].lo());
      b.closed = b.closed && c[k].lo_closed();
    }
    for (auto& b : dims[k].upper) {
      b.form = b.form.shifted(c[k].hi());
      b.closed = b.closed && c[k].hi_closed();
    }
  }
  return AffineBox(xdim_, std::move(dims), nonempty_conditions());
}

AffineBox AffineBox::clipped(const Box& d) const {
  if (d.size() != dims_.size()) throw DimensionError("AffineBox::clipped: dimension mismatch");
  std::vector<DimBounds> dims = dims_;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    dims[k].lower.push_back({AffineForm::constant_form(d[k].lo(), xdim_), d[k].lo_closed()});
    dims[k].upper.push_back({AffineForm::constant_form(d[k].hi(), xdim_), d[k].hi_closed()});
  }
  return AffineBox(xdim_, std::move(dims), guards_);
}

AffineBox AffineBox::relaxed() const {
  std::vector<DimBounds> dims = dims_;
  for (auto& d : dims) {
    for (auto& b : d.lower) b.closed = true;
    for (auto& b : d.upper) b.closed = true;
  }
  std::vector<Guard> guards = guards_;
  for (auto& g : guards) g.strict = false;
  return AffineBox(xdim_, std::move(dims), std::move(guards));
}

AffineBox AffineBox::closed_values() const {
  std::vector<DimBounds> dims = dims_;
  for (auto& d : dims) {
    for (auto& b : d.lower) b.closed = true;
    for (auto& b : d.upper) b.closed = true;
  }
  return AffineBox(xdim_, std::move(dims), nonempty_conditions());
}

AffineBox AffineBox::meet(const AffineBox& a, const AffineBox& b) {
  if (a.xdim_ != b.xdim_ || a.ydim() != b.ydim()) {
    throw DimensionError("AffineBox::meet: dimension mismatch");
  }
  std::vector<DimBounds> dims = a.dims_;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    dims[k].lower.insert(dims[k].lower.end(), b.dims_[k].lower.begin(), b.dims_[k].lower.end());
    dims[k].upper.insert(dims[k].upper.end(), b.dims_[k].upper.begin(), b.dims_[k].upper.end());
  }
  std::vector<Guard> guards = a.guards_;
  guards.insert(guards.end(), b.guards_.begin(), b.guards_.end());
  return AffineBox(a.xdim_, std::move(dims), std::move(guards));
}

double AffineBox::slope() const {
  double s = 0;
  for (const auto& d : dims_) {
    for (const auto& b : d.lower) s = std::max(s, b.form.slope());
    for (const auto& b : d.upper) s = std::max(s, b.form.slope());
  }
  return s;
}

bool AffineBox::is_simple() const {
  return guards_.empty() && std::all_of(dims_.begin(), dims_.end(), [](const DimBounds& d) {
           return d.lower.size() == 1 && d.upper.size() == 1;
         });
}

namespace {

std::vector<LinearConstraint> region_constraints(const Box& region) {
  std::vector<LinearConstraint> rows;
  const std::size_t n = region.size();
  for (std::size_t k = 0; k < n; ++k) {
    LinearConstraint lo{std::vector<double>(n, 0.0), -region[k].lo(), !region[k].lo_closed()};
    lo.coef[k] = 1.0;
    LinearConstraint hi{std::vector<double>(n, 0.0), region[k].hi(), !region[k].hi_closed()};
    hi.coef[k] = -1.0;
    rows.push_back(std::move(lo));
    rows.push_back(std::move(hi));
  }
  return rows;
}

LinearConstraint as_row(const Guard& g) { return {g.form.coef, g.form.constant, g.strict}; }

std::vector<Point> closed_corners(const Box& region) {
  std::vector<Point> out;
  const std::size_t n = region.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Point p(n);
    for (std::size_t k = 0; k < n; ++k) p[k] = (mask >> k) & 1 ? region[k].hi() : region[k].lo();
    out.push_back(std::move(p));
  }
  return out;
}

// Value boxes whose graph over the region is nonempty, relaxed to their
// graph closure.
PieceValue closed_graph_boxes(const Piece& p) {
  PieceValue out;
  for (const auto& b : p.value) {
    if (graph_nonempty(p.region, b)) out.push_back(b.relaxed());
  }
  return out;
}

}  // namespace

bool graph_nonempty(const Box& region, const AffineBox& value) {
  auto rows = region_constraints(region);
  for (const auto& g : value.nonempty_conditions()) rows.push_back(as_row(g));
  return feasible(std::move(rows));
}

PiecewiseMap::PiecewiseMap(BoxSet domain, std::size_t codim, std::vector<Piece> pieces)
    : domain_(std::move(domain)), codim_(codim), pieces_(std::move(pieces)) {
  if (codim_ == 0) throw DimensionError("PiecewiseMap: codomain dimension must be positive");
  const std::size_t n = domain_.dim();
  std::vector<Box> regions;
  for (const auto& p : pieces_) {
    if (p.region.size() != n) throw DimensionError("PiecewiseMap: region of wrong dimension");
    for (const auto& v : p.value) {
      if (v.xdim() != n || v.ydim() != codim_) {
        throw DimensionError("PiecewiseMap: value of wrong dimension");
      }
      if (v.is_simple()) {
        for (const auto& c : closed_corners(p.region)) {
          for (const auto& d : v.dims()) {
            if (d.lower.front().form(c) > d.upper.front().form(c)) {
              throw std::invalid_argument("PiecewiseMap: lower endpoint exceeds upper at " +
                                          to_string(p.region));
            }
          }
        }
      }
    }
    if (!subset(BoxSet::of(p.region), domain_)) {
      throw std::invalid_argument("PiecewiseMap: region " + to_string(p.region) +
                                  " leaves the domain");
    }
    regions.push_back(p.region);
  }
  for (std::size_t i = 0; i < regions.size(); ++i) {
    for (std::size_t j = i + 1; j < regions.size(); ++j) {
      if (box_intersect(regions[i], regions[j])) {
        throw std::invalid_argument("PiecewiseMap: regions " + to_string(regions[i]) + " and " +
                                    to_string(regions[j]) + " overlap");
      }
    }
  }
  if (!domain_.empty() && (regions.empty() || !subset(domain_, BoxSet(n, regions)))) {
    throw std::invalid_argument("PiecewiseMap: regions do not cover the domain");
  }
}

std::size_t PiecewiseMap::locate(std::span<const double> x) const {
  if (x.size() != xdim()) throw DimensionError("evaluate: point of wrong dimension");
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (box_contains(pieces_[i].region, x)) return i;
  }
  throw DomainError("point outside the domain of the map");
}

BoxSet PiecewiseMap::evaluate(std::span<const double> x) const {
  const auto& piece = pieces_[locate(x)];
  std::vector<Box> boxes;
  for (const auto& v : piece.value) {
    if (auto b = v.at(x)) boxes.push_back(std::move(*b));
  }
  return BoxSet(codim_, std::move(boxes));
}

double PiecewiseMap::slope_modulus() const {
  double s = 0;
  for (const auto& p : pieces_) {
    for (const auto& v : p.value) s = std::max(s, v.slope());
  }
  return s;
}

PiecewiseMap constant_map(const BoxSet& domain, const BoxSet& value) {
  PieceValue v;
  for (const auto& b : value.boxes()) v.push_back(AffineBox::constant(b, domain.dim()));
  std::vector<Piece> pieces;
  for (const auto& r : domain.boxes()) pieces.push_back({r, v});
  return PiecewiseMap(domain, value.dim(), std::move(pieces));
}

PiecewiseMap from_cases(const BoxSet& domain, std::size_t codim,
                        const std::vector<std::pair<BoxSet, PieceValue>>& cases,
                        const std::optional<PieceValue>& otherwise) {
  std::vector<Piece> pieces;
  BoxSet covered(domain.dim());
  for (const auto& [set, value] : cases) {
    for (const auto& b : set.boxes()) pieces.push_back({b, value});
    covered = unite(covered, set);
  }
  BoxSet rest = difference(domain, covered);
  if (!rest.empty()) {
    if (!otherwise) throw std::invalid_argument("from_cases: cases do not cover the domain");
    for (const auto& b : rest.boxes()) pieces.push_back({b, *otherwise});
  }
  return PiecewiseMap(domain, codim, std::move(pieces));
}

namespace {

template <class F>
PiecewiseMap map_values(const PiecewiseMap& t, F f) {
  std::vector<Piece> pieces;
  for (const auto& p : t.pieces()) {
    PieceValue v;
    for (const auto& b : p.value) f(b, v);
    pieces.push_back({p.region, std::move(v)});
  }
  return PiecewiseMap(t.domain(), t.codim(), std::move(pieces));
}

}  // namespace

PiecewiseMap minkowski_sum(const PiecewiseMap& t, const Box& c) {
  if (c.size() != t.codim()) throw DimensionError("minkowski_sum: dimension mismatch");
  return map_values(t, [&](const AffineBox& b, PieceValue& out) { out.push_back(b.plus(c)); });
}

PiecewiseMap clip(const PiecewiseMap& t, const BoxSet& k) {
  if (k.dim() != t.codim()) throw DimensionError("clip: dimension mismatch");
  return map_values(t, [&](const AffineBox& b, PieceValue& out) {
    for (const auto& kb : k.boxes()) out.push_back(b.clipped(kb));
  });
}

PiecewiseMap t_upper(const PiecewiseMap& t, double eps, const BoxSet& d) {
  if (!(eps > 0)) throw std::invalid_argument("t_upper: eps must be positive");
  if (d.dim() != t.codim()) throw DimensionError("t_upper: D has the wrong dimension");
  if (!d.is_closed()) throw std::invalid_argument("D must be compact");
  return clip(minkowski_sum(t, Box(t.codim(), FlaggedInterval::open(-eps, eps))), d);
}

PiecewiseMap adherence(const PiecewiseMap& t) {
  const std::size_t n = t.xdim();
  std::vector<Box> sources = t.domain().boxes();
  std::vector<PieceValue> closed_values;
  std::vector<Box> closed_regions;
  for (const auto& p : t.pieces()) {
    sources.push_back(p.region);
    closed_values.push_back(closed_graph_boxes(p));
    closed_regions.push_back(box_closure(p.region));
  }
  std::map<std::vector<std::size_t>, std::vector<Box>> groups;
  for (auto& cell : elementary_cells(n, sources)) {
    Point rep = box_center(cell);
    if (!t.domain().contains(rep)) continue;
    std::vector<std::size_t> signature;
    for (std::size_t i = 0; i < closed_regions.size(); ++i) {
      if (!closed_values[i].empty() && box_contains(closed_regions[i], rep)) {
        signature.push_back(i);
      }
    }
    groups[signature].push_back(std::move(cell));
  }
  std::vector<Piece> pieces;
  for (auto& [signature, cells] : groups) {
    PieceValue value;
    for (auto i : signature) {
      value.insert(value.end(), closed_values[i].begin(), closed_values[i].end());
    }
    BoxSet merged(n, std::move(cells));
    for (const auto& b : merged.boxes()) pieces.push_back({b, value});
  }
  return PiecewiseMap(t.domain(), t.codim(), std::move(pieces));
}

std::optional<std::size_t> adherence_witness(const PiecewiseMap& t, std::span<const double> x,
                                             std::span<const double> y) {
  if (!t.domain().contains(x)) throw DomainError("adherence: point outside the domain");
  if (y.size() != t.codim()) throw DimensionError("adherence: value of wrong dimension");
  for (std::size_t i = 0; i < t.pieces().size(); ++i) {
    const auto& p = t.pieces()[i];
    if (!box_contains(box_closure(p.region), x)) continue;
    for (const auto& b : p.value) {
      auto v = b.relaxed().at(x);
      if (v && box_contains(*v, y) && graph_nonempty(p.region, b)) return i;
    }
  }
  return std::nullopt;
}

bool adherence_contains(const PiecewiseMap& t, std::span<const double> x,
                        std::span<const double> y) {
  return adherence_witness(t, x, y).has_value();
}

PiecewiseMap intersect_maps(const PiecewiseMap& a, const PiecewiseMap& b) {
  if (!(a.domain() == b.domain())) throw DomainError("intersect_maps: domains differ");
  if (a.codim() != b.codim()) throw DimensionError("intersect_maps: codomains differ");
  std::vector<Piece> pieces;
  for (const auto& pa : a.pieces()) {
    for (const auto& pb : b.pieces()) {
      auto region = box_intersect(pa.region, pb.region);
      if (!region) continue;
      PieceValue v;
      for (const auto& va : pa.value) {
        for (const auto& vb : pb.value) v.push_back(AffineBox::meet(va, vb));
      }
      pieces.push_back({std::move(*region), std::move(v)});
    }
  }
  return PiecewiseMap(a.domain(), a.codim(), std::move(pieces));
}

PiecewiseMap closure_values(const PiecewiseMap& t) {
  return map_values(t, [](const AffineBox& b, PieceValue& out) {
    out.push_back(b.closed_values());
  });
}

PiecewiseMap restrict_to(const PiecewiseMap& t, const BoxSet& w) {
  BoxSet dom = intersect(t.domain(), w);
  std::vector<Piece> pieces;
  for (const auto& p : t.pieces()) {
    for (const auto& b : dom.boxes()) {
      if (auto r = box_intersect(p.region, b)) pieces.push_back({std::move(*r), p.value});
    }
  }
  return PiecewiseMap(dom, t.codim(), std::move(pieces));
}

PiecewiseMap select(const BoxSet& w, const PiecewiseMap& on, const PiecewiseMap& off) {
  if (!(on.domain() == off.domain())) throw DomainError("select: domains differ");
  if (on.codim() != off.codim()) throw DimensionError("select: codomains differ");
  BoxSet inside = intersect(on.domain(), w);
  BoxSet outside = difference(on.domain(), inside);
  std::vector<Piece> pieces;
  if (!inside.empty()) {
    auto a = restrict_to(on, inside);
    pieces.insert(pieces.end(), a.pieces().begin(), a.pieces().end());
  }
  if (!outside.empty()) {
    auto b = restrict_to(off, outside);
    pieces.insert(pieces.end(), b.pieces().begin(), b.pieces().end());
  }
  return PiecewiseMap(on.domain(), on.codim(), std::move(pieces));
}

std::optional<BoxSet> nonempty_set(const PiecewiseMap& t) {
  std::vector<Box> full;
  for (const auto& p : t.pieces()) {
    bool any = false;
    bool everywhere = false;
    for (const auto& b : p.value) {
      if (!graph_nonempty(p.region, b)) continue;
      any = true;
      bool box_full = true;
      for (const auto& g : b.nonempty_conditions()) {
        auto rows = region_constraints(p.region);
        rows.push_back({g.form.negated().coef, -g.form.constant, !g.strict});
        if (feasible(std::move(rows))) {
          box_full = false;
          break;
        }
      }
      if (box_full) {
        everywhere = true;
        break;
      }
    }
    if (any && !everywhere) return std::nullopt;
    if (everywhere) full.push_back(p.region);
  }
  return BoxSet(t.xdim(), std::move(full));
}

}  // namespace setval
