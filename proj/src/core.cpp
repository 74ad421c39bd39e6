#include "setval/core.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

namespace setval {

FlaggedInterval::FlaggedInterval(double lo, double hi, bool lo_closed, bool hi_closed)
    : lo_(lo), hi_(hi), lo_closed_(lo_closed), hi_closed_(hi_closed) {
  if (!(lo <= hi) || (lo == hi && !(lo_closed && hi_closed)) || !std::isfinite(lo) ||
      !std::isfinite(hi)) {
    throw std::invalid_argument("empty or non-finite interval " + std::to_string(lo) + ", " +
                                std::to_string(hi));
  }
}

std::optional<FlaggedInterval> FlaggedInterval::make(double lo, double hi, bool lo_closed,
                                                     bool hi_closed) {
  if (lo < hi || (lo == hi && lo_closed && hi_closed)) {
    return FlaggedInterval(lo, hi, lo_closed, hi_closed);
  }
  return std::nullopt;
}

bool FlaggedInterval::contains(double v) const {
  bool above = lo_closed_ ? v >= lo_ : v > lo_;
  bool below = hi_closed_ ? v <= hi_ : v < hi_;
  return above && below;
}

std::optional<FlaggedInterval> intersect(const FlaggedInterval& a, const FlaggedInterval& b) {
  double lo = std::max(a.lo(), b.lo());
  double hi = std::min(a.hi(), b.hi());
  // A shared endpoint survives only if every side that attains it includes it.
  bool lo_closed = (a.lo() != lo || a.lo_closed()) && (b.lo() != lo || b.lo_closed());
  bool hi_closed = (a.hi() != hi || a.hi_closed()) && (b.hi() != hi || b.hi_closed());
  return FlaggedInterval::make(lo, hi, lo_closed, hi_closed);
}

bool box_contains(const Box& b, std::span<const double> p) {
  if (p.size() != b.size()) throw DimensionError("box_contains: dimension mismatch");
  for (std::size_t k = 0; k < b.size(); ++k) {
    if (!b[k].contains(p[k])) return false;
  }
  return true;
}

std::optional<Box> box_intersect(const Box& a, const Box& b) {
  if (a.size() != b.size()) throw DimensionError("box_intersect: dimension mismatch");
  Box out;
  out.reserve(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    auto iv = intersect(a[k], b[k]);
    if (!iv) return std::nullopt;
    out.push_back(*iv);
  }
  return out;
}

Box box_closure(const Box& b) {
  Box out;
  out.reserve(b.size());
  for (const auto& iv : b) out.push_back(iv.closure());
  return out;
}

bool box_is_closed(const Box& b) {
  return std::all_of(b.begin(), b.end(), [](const auto& iv) { return iv.is_closed(); });
}

Point box_center(const Box& b) {
  Point p;
  for (const auto& iv : b) p.push_back(0.5 * (iv.lo() + iv.hi()));
  return p;
}

namespace {

bool any_contains(const std::vector<Box>& boxes, std::span<const double> p) {
  return std::any_of(boxes.begin(), boxes.end(),
                     [&](const Box& b) { return box_contains(b, p); });
}

// One axis of a cell decomposition.  Slab 2j+1 is the singleton {breaks[j]},
// slab 2j is the open gap below it, slab 2k the open ray above the last break.
struct Axis {
  std::vector<double> breaks;

  std::size_t slabs() const { return 2 * breaks.size() + 1; }

  double representative(std::size_t s) const {
    std::size_t k = breaks.size();
    if (s % 2 == 1) return breaks[s / 2];
    if (s == 0) return breaks.front() - 1.0;
    if (s == 2 * k) return breaks.back() + 1.0;
    return 0.5 * (breaks[s / 2 - 1] + breaks[s / 2]);
  }
};

struct Decomposition {
  std::vector<Axis> axes;

  std::size_t cell_count() const {
    std::size_t n = 1;
    for (const auto& a : axes) n *= a.slabs();
    return n;
  }

  // Row-major, last axis fastest.
  std::vector<std::size_t> unflatten(std::size_t flat) const {
    std::vector<std::size_t> idx(axes.size());
    for (std::size_t k = axes.size(); k-- > 0;) {
      idx[k] = flat % axes[k].slabs();
      flat /= axes[k].slabs();
    }
    return idx;
  }

  std::size_t flatten(const std::vector<std::size_t>& idx) const {
    std::size_t flat = 0;
    for (std::size_t k = 0; k < axes.size(); ++k) flat = flat * axes[k].slabs() + idx[k];
    return flat;
  }

  Point representative(const std::vector<std::size_t>& idx) const {
    Point p(axes.size());
    for (std::size_t k = 0; k < axes.size(); ++k) p[k] = axes[k].representative(idx[k]);
    return p;
  }
};

Decomposition decompose(std::size_t dim, const std::vector<const std::vector<Box>*>& sources) {
  Decomposition d;
  d.axes.resize(dim);
  for (const auto* boxes : sources) {
    for (const auto& b : *boxes) {
      for (std::size_t k = 0; k < dim; ++k) {
        d.axes[k].breaks.push_back(b[k].lo());
        d.axes[k].breaks.push_back(b[k].hi());
      }
    }
  }
  for (auto& a : d.axes) {
    std::sort(a.breaks.begin(), a.breaks.end());
    a.breaks.erase(std::unique(a.breaks.begin(), a.breaks.end()), a.breaks.end());
  }
  return d;
}

// Drops every break across which the set is locally constant.  Redundancy is
// a property of the point set, so the surviving breaks are unique to it.
void prune_breaks(Decomposition& d, const std::vector<Box>& boxes) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t axis = 0; axis < d.axes.size(); ++axis) {
      auto& breaks = d.axes[axis].breaks;
      std::vector<char> redundant(breaks.size(), 0);
      Decomposition other = d;
      // Iterate over all cells with the pruned axis collapsed to one slab.
      other.axes[axis].breaks = {0.0};
      std::size_t n_other = other.cell_count() / 3;
      for (std::size_t j = 0; j < breaks.size(); ++j) {
        bool same = true;
        for (std::size_t c = 0; c < n_other && same; ++c) {
          std::vector<std::size_t> idx(d.axes.size());
          std::size_t flat = c;
          for (std::size_t k = d.axes.size(); k-- > 0;) {
            if (k == axis) continue;
            idx[k] = flat % d.axes[k].slabs();
            flat /= d.axes[k].slabs();
          }
          Point p = d.representative(idx);
          p[axis] = d.axes[axis].representative(2 * j);
          bool below = any_contains(boxes, p);
          p[axis] = d.axes[axis].representative(2 * j + 1);
          bool at = any_contains(boxes, p);
          p[axis] = d.axes[axis].representative(2 * j + 2);
          bool above = any_contains(boxes, p);
          same = below == at && at == above;
        }
        redundant[j] = same ? 1 : 0;
      }
      std::vector<double> kept;
      for (std::size_t j = 0; j < breaks.size(); ++j) {
        if (!redundant[j]) kept.push_back(breaks[j]);
      }
      if (kept.size() != breaks.size()) {
        // A fully redundant axis can only happen for the empty set.
        if (kept.empty()) kept.push_back(breaks.front());
        if (kept.size() != breaks.size()) {
          breaks = std::move(kept);
          changed = true;
        }
      }
    }
  }
}

FlaggedInterval slab_range(const Axis& a, std::size_t from, std::size_t to) {
  double lo = from % 2 == 1 ? a.breaks[from / 2] : a.breaks[from / 2 - 1];
  bool lo_closed = from % 2 == 1;
  double hi = to % 2 == 1 ? a.breaks[to / 2] : a.breaks[to / 2];
  bool hi_closed = to % 2 == 1;
  return FlaggedInterval(lo, hi, lo_closed, hi_closed);
}

std::vector<Box> merge_cells(const Decomposition& d, const std::vector<char>& covered) {
  const std::size_t dim = d.axes.size();
  std::vector<char> used(covered.size(), 0);
  std::vector<Box> out;
  for (std::size_t flat = 0; flat < covered.size(); ++flat) {
    if (!covered[flat] || used[flat]) continue;
    std::vector<std::size_t> start = d.unflatten(flat);
    std::vector<std::size_t> end = start;  // inclusive
    auto block_free = [&](std::size_t axis, std::size_t slab) {
      // Every cell of the current block with `axis` fixed at `slab`.
      std::vector<std::size_t> idx = start;
      idx[axis] = slab;
      while (true) {
        std::size_t f = d.flatten(idx);
        if (!covered[f] || used[f]) return false;
        std::size_t k = dim;
        while (k-- > 0) {
          if (k == axis) continue;
          if (idx[k] < end[k]) {
            ++idx[k];
            break;
          }
          idx[k] = start[k];
        }
        if (k == static_cast<std::size_t>(-1)) return true;
      }
    };
    for (std::size_t axis = dim; axis-- > 0;) {
      while (end[axis] + 1 < d.axes[axis].slabs() && block_free(axis, end[axis] + 1)) {
        ++end[axis];
      }
    }
    std::vector<std::size_t> idx = start;
    while (true) {
      used[d.flatten(idx)] = 1;
      std::size_t k = dim;
      while (k-- > 0) {
        if (idx[k] < end[k]) {
          ++idx[k];
          break;
        }
        idx[k] = start[k];
      }
      if (k == static_cast<std::size_t>(-1)) break;
    }
    Box b;
    for (std::size_t k = 0; k < dim; ++k) b.push_back(slab_range(d.axes[k], start[k], end[k]));
    out.push_back(std::move(b));
  }
  return out;
}

template <class Pred>
std::vector<Box> cells_where(std::size_t dim, const std::vector<const std::vector<Box>*>& sources,
                             Pred pred) {
  Decomposition d = decompose(dim, sources);
  std::vector<char> covered(d.cell_count(), 0);
  for (std::size_t f = 0; f < covered.size(); ++f) {
    Point p = d.representative(d.unflatten(f));
    if (pred(p)) {
      covered[f] = 1;
    }
  }
  return merge_cells(d, covered);
}

std::vector<Box> canonicalize(std::size_t dim, std::vector<Box> boxes) {
  if (boxes.empty()) return boxes;
  Decomposition d = decompose(dim, {&boxes});
  prune_breaks(d, boxes);
  std::vector<char> covered(d.cell_count(), 0);
  for (std::size_t f = 0; f < covered.size(); ++f) {
    covered[f] = any_contains(boxes, d.representative(d.unflatten(f))) ? 1 : 0;
  }
  return merge_cells(d, covered);
}

}  // namespace

BoxSet::BoxSet(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw DimensionError("BoxSet dimension must be positive");
}

BoxSet::BoxSet(std::size_t dim, std::vector<Box> boxes) : dim_(dim) {
  if (dim == 0) throw DimensionError("BoxSet dimension must be positive");
  for (const auto& b : boxes) {
    if (b.size() != dim) throw DimensionError("BoxSet: box of wrong dimension");
  }
  boxes_ = canonicalize(dim, std::move(boxes));
}

bool BoxSet::is_closed() const {
  return std::all_of(boxes_.begin(), boxes_.end(), box_is_closed);
}

bool BoxSet::contains(std::span<const double> p) const {
  if (p.size() != dim_) throw DimensionError("BoxSet::contains: dimension mismatch");
  return any_contains(boxes_, p);
}

std::string to_string(const FlaggedInterval& iv) {
  std::ostringstream os;
  if (iv.lo() == iv.hi()) {
    os << '{' << iv.lo() << '}';
  } else {
    os << (iv.lo_closed() ? '[' : '(') << iv.lo() << ", " << iv.hi()
       << (iv.hi_closed() ? ']' : ')');
  }
  return os.str();
}

std::string to_string(const Box& b) {
  std::string s;
  for (std::size_t k = 0; k < b.size(); ++k) {
    if (k) s += " x ";
    s += to_string(b[k]);
  }
  return s;
}

std::string to_string(const BoxSet& s) {
  if (s.empty()) return "{}";
  std::string out;
  for (std::size_t i = 0; i < s.boxes().size(); ++i) {
    if (i) out += " U ";
    out += to_string(s.boxes()[i]);
  }
  return out;
}

BoxSet minkowski_sum(const BoxSet& s, const Box& c) {
  if (c.size() != s.dim()) throw DimensionError("minkowski_sum: dimension mismatch");
  std::vector<Box> out;
  for (const auto& b : s.boxes()) {
    Box nb;
    for (std::size_t k = 0; k < b.size(); ++k) {
      nb.emplace_back(b[k].lo() + c[k].lo(), b[k].hi() + c[k].hi(),
                      b[k].lo_closed() && c[k].lo_closed(), b[k].hi_closed() && c[k].hi_closed());
    }
    out.push_back(std::move(nb));
  }
  return BoxSet(s.dim(), std::move(out));
}

BoxSet dilate(const BoxSet& s, double eps) {
  if (!(eps > 0)) throw std::invalid_argument("dilate: eps must be positive");
  return minkowski_sum(s, Box(s.dim(), FlaggedInterval::open(-eps, eps)));
}

BoxSet intersect(const BoxSet& a, const BoxSet& b) {
  if (a.dim() != b.dim()) throw DimensionError("intersect: dimension mismatch");
  std::vector<Box> out;
  for (const auto& x : a.boxes()) {
    for (const auto& y : b.boxes()) {
      if (auto z = box_intersect(x, y)) out.push_back(std::move(*z));
    }
  }
  return BoxSet(a.dim(), std::move(out));
}

BoxSet unite(const BoxSet& a, const BoxSet& b) {
  if (a.dim() != b.dim()) throw DimensionError("unite: dimension mismatch");
  std::vector<Box> all = a.boxes();
  all.insert(all.end(), b.boxes().begin(), b.boxes().end());
  return BoxSet(a.dim(), std::move(all));
}

BoxSet difference(const BoxSet& a, const BoxSet& b) {
  if (a.dim() != b.dim()) throw DimensionError("difference: dimension mismatch");
  if (a.empty() || b.empty()) return a;
  auto cells = cells_where(a.dim(), {&a.boxes(), &b.boxes()}, [&](const Point& p) {
    return any_contains(a.boxes(), p) && !any_contains(b.boxes(), p);
  });
  return BoxSet(a.dim(), std::move(cells));
}

BoxSet closure(const BoxSet& s) {
  std::vector<Box> out;
  for (const auto& b : s.boxes()) out.push_back(box_closure(b));
  return BoxSet(s.dim(), std::move(out));
}

BoxSet product(const std::vector<BoxSet>& factors) {
  if (factors.empty()) throw DimensionError("product of no factors");
  std::vector<Box> acc{Box{}};
  std::size_t dim = 0;
  for (const auto& f : factors) {
    dim += f.dim();
    std::vector<Box> next;
    for (const auto& head : acc) {
      for (const auto& b : f.boxes()) {
        Box c = head;
        c.insert(c.end(), b.begin(), b.end());
        next.push_back(std::move(c));
      }
    }
    acc = std::move(next);
  }
  return BoxSet(dim, std::move(acc));
}

bool subset(const BoxSet& a, const BoxSet& b) {
  if (a.dim() != b.dim()) throw DimensionError("subset: dimension mismatch");
  if (a.empty()) return true;
  if (b.empty()) return false;
  Decomposition d = decompose(a.dim(), {&a.boxes(), &b.boxes()});
  for (std::size_t f = 0; f < d.cell_count(); ++f) {
    Point p = d.representative(d.unflatten(f));
    if (any_contains(a.boxes(), p) && !any_contains(b.boxes(), p)) return false;
  }
  return true;
}

bool subset_within(const BoxSet& a, const BoxSet& b, double tol) {
  if (tol < 0) throw std::invalid_argument("subset_within: tol must be >= 0");
  if (tol == 0) return subset(a, b);
  if (b.empty()) return a.empty();
  return subset(a, closure(dilate(b, tol)));
}

double distance(std::span<const double> p, const BoxSet& s) {
  if (s.empty()) throw std::invalid_argument("distance to empty set is undefined");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& b : s.boxes()) {
    double sq = 0;
    for (std::size_t k = 0; k < b.size(); ++k) {
      double d = 0;
      if (p[k] < b[k].lo()) d = b[k].lo() - p[k];
      if (p[k] > b[k].hi()) d = p[k] - b[k].hi();
      sq += d * d;
    }
    best = std::min(best, std::sqrt(sq));
  }
  return best;
}

double hausdorff_upper(const BoxSet& a, const BoxSet& b) {
  if (a.dim() != b.dim()) throw DimensionError("hausdorff_upper: dimension mismatch");
  if (a.empty()) return 0.0;
  if (b.empty()) throw std::invalid_argument("hausdorff_upper: undefined excess over empty set");
  BoxSet ca = closure(a);
  BoxSet cb = closure(b);
  if (subset(ca, cb)) return 0.0;

  const std::size_t dim = a.dim();
  std::vector<std::vector<double>> coords(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    std::vector<double> bk;
    for (const auto& box : cb.boxes()) {
      bk.push_back(box[k].lo());
      bk.push_back(box[k].hi());
    }
    std::sort(bk.begin(), bk.end());
    std::vector<double> all = bk;
    for (std::size_t j = 1; j < bk.size(); ++j) all.push_back(0.5 * (bk[j - 1] + bk[j]));
    for (const auto& box : ca.boxes()) {
      all.push_back(box[k].lo());
      all.push_back(box[k].hi());
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    std::vector<double> with_mid = all;
    for (std::size_t j = 1; j < all.size(); ++j) with_mid.push_back(0.5 * (all[j - 1] + all[j]));
    std::sort(with_mid.begin(), with_mid.end());
    coords[k] = std::move(with_mid);
  }
  double best = 0.0;
  std::vector<std::size_t> idx(dim, 0);
  Point p(dim);
  while (true) {
    for (std::size_t k = 0; k < dim; ++k) p[k] = coords[k][idx[k]];
    if (ca.contains(p)) best = std::max(best, distance(p, cb));
    std::size_t k = dim;
    while (k-- > 0) {
      if (++idx[k] < coords[k].size()) break;
      idx[k] = 0;
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
  return best;
}

std::vector<Box> elementary_cells(std::size_t dim, const std::vector<Box>& sources) {
  std::vector<Box> out;
  if (sources.empty()) return out;
  Decomposition d = decompose(dim, {&sources});
  for (std::size_t f = 0; f < d.cell_count(); ++f) {
    auto idx = d.unflatten(f);
    bool bounded = true;
    for (std::size_t k = 0; k < dim; ++k) {
      bounded = bounded && idx[k] != 0 && idx[k] + 1 != d.axes[k].slabs();
    }
    if (!bounded) continue;
    Box b;
    for (std::size_t k = 0; k < dim; ++k) b.push_back(slab_range(d.axes[k], idx[k], idx[k]));
    out.push_back(std::move(b));
  }
  return out;
}

double sup_norm_distance(std::span<const double> a, std::span<const double> b) {
  double m = 0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

Grid::Grid(Point lo, Point hi, double step) : lo_(std::move(lo)), hi_(std::move(hi)), step_(step) {
  if (!(step > 0)) throw std::invalid_argument("grid step must be positive");
  if (lo_.empty() || lo_.size() != hi_.size()) throw DimensionError("grid: bad dimensions");
  for (std::size_t k = 0; k < lo_.size(); ++k) {
    if (!(lo_[k] <= hi_[k])) throw std::invalid_argument("grid: lo > hi");
    counts_.push_back(static_cast<std::size_t>(std::floor((hi_[k] - lo_[k]) / step_ + 1e-9)) + 1);
  }
}

Grid Grid::covering(const BoxSet& s, double step) {
  if (s.empty()) throw std::invalid_argument("grid: cannot cover the empty set");
  Point lo(s.dim(), std::numeric_limits<double>::infinity());
  Point hi(s.dim(), -std::numeric_limits<double>::infinity());
  for (const auto& b : s.boxes()) {
    for (std::size_t k = 0; k < s.dim(); ++k) {
      lo[k] = std::min(lo[k], b[k].lo());
      hi[k] = std::max(hi[k], b[k].hi());
    }
  }
  return Grid(lo, hi, step);
}

std::size_t Grid::size() const {
  std::size_t n = 1;
  for (auto c : counts_) n *= c;
  return n;
}

std::vector<Point> Grid::points() const {
  std::vector<Point> out;
  out.reserve(size());
  std::vector<std::size_t> idx(dim(), 0);
  while (true) {
    Point p(dim());
    for (std::size_t k = 0; k < dim(); ++k) p[k] = lo_[k] + static_cast<double>(idx[k]) * step_;
    out.push_back(std::move(p));
    std::size_t k = dim();
    while (k-- > 0) {
      if (++idx[k] < counts_[k]) break;
      idx[k] = 0;
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

std::vector<Point> Grid::points_in(const BoxSet& s) const {
  if (s.dim() != dim()) throw DimensionError("grid: dimension mismatch");
  std::vector<Point> out;
  for (auto& p : points()) {
    if (s.contains(p)) out.push_back(std::move(p));
  }
  return out;
}

bool Grid::covers(const BoxSet& s) const {
  if (s.dim() != dim()) return false;
  for (const auto& b : s.boxes()) {
    for (std::size_t k = 0; k < dim(); ++k) {
      if (b[k].lo() < lo_[k] || b[k].hi() > hi_[k]) return false;
    }
  }
  return true;
}

std::string Grid::describe() const {
  auto num = [](double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
  };
  std::string out = "grid step " + num(step_) + " over";
  for (std::size_t k = 0; k < dim(); ++k) out += " [" + num(lo_[k]) + ", " + num(hi_[k]) + "]";
  return out;
}

}  // namespace setval
