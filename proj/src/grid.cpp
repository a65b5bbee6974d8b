// SPDX-License-Identifier: Apache-2.0
#include "skelmax/grid.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace skelmax {

namespace {

constexpr double kLayoutTol = 1e-9;

std::int64_t cells_along(double extent, double delta) {
  const double ratio = extent / delta;
  const auto cells = static_cast<std::int64_t>(std::llround(ratio));
  if (cells < 1 || std::abs(ratio - static_cast<double>(cells)) > kLayoutTol) {
    throw std::invalid_argument(
        "grid extent " + std::to_string(extent) +
        " is not a positive integer multiple of delta = " + std::to_string(delta));
  }
  return cells;
}

}  // namespace

Grid Grid::unit_cube(int n, double delta) {
  if (n < 1 || n > kMaxDim) {
    throw std::invalid_argument("grid dimension out of range");
  }
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw std::invalid_argument("unit grid requires 0 < delta < 1");
  }
  const double inv = 1.0 / delta;
  if (std::abs(inv - std::llround(inv)) > kLayoutTol) {
    throw std::invalid_argument("unit grid requires 1/delta to be an integer");
  }
  return Grid(Box(Vec::Zero(n), Vec::Ones(n)), delta);
}

Grid::Grid(Box domain, double delta) : domain_(std::move(domain)), delta_(delta) {
  if (!(delta > 0.0)) {
    throw std::invalid_argument("grid delta must be positive");
  }
  const int n = domain_.dim();
  if (n < 1 || n > kMaxDim) {
    throw std::invalid_argument("grid dimension out of range");
  }
  shape_.resize(n);
  size_ = 1;
  for (int a = 0; a < n; ++a) {
    shape_[a] = cells_along(domain_.hi[a] - domain_.lo[a], delta);
    if (size_ > std::numeric_limits<std::int64_t>::max() / shape_[a]) {
      throw std::invalid_argument("grid too large");
    }
    size_ *= shape_[a];
  }
}

double Grid::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < dim(); ++a) v *= delta_;
  return v;
}

std::int64_t Grid::index_of(const Vec& x) const {
  const int n = dim();
  if (x.size() != n) {
    throw std::invalid_argument("point dimension does not match grid");
  }
  std::int64_t idx = 0;
  for (int a = 0; a < n; ++a) {
    const double t = (x[a] - domain_.lo[a]) / delta_;
    const auto m = static_cast<std::int64_t>(std::floor(t));
    if (t < 0.0 || m >= shape_[a]) {
      throw std::invalid_argument("point lies outside the grid domain");
    }
    idx = idx * shape_[a] + m;
  }
  return idx;
}

void Grid::center_into(std::int64_t i, double* x) const {
  const int n = dim();
  for (int a = n - 1; a >= 0; --a) {
    const std::int64_t m = i % shape_[a];
    i /= shape_[a];
    x[a] = domain_.lo[a] + (static_cast<double>(m) + 0.5) * delta_;
  }
}

Vec Grid::center(std::int64_t i) const {
  if (i < 0 || i >= size_) {
    throw std::invalid_argument("cell index out of range");
  }
  Vec x(dim());
  center_into(i, x.data());
  return x;
}

Box Grid::cell(std::int64_t i) const {
  Vec c = center(i);
  return Box(c - 0.5 * delta_, c + 0.5 * delta_);
}

std::vector<Vec> Grid::centers() const {
  std::vector<Vec> out;
  out.reserve(static_cast<std::size_t>(size_));
  for (std::int64_t i = 0; i < size_; ++i) out.push_back(center(i));
  return out;
}

bool Grid::same_layout(const Grid& other) const {
  if (dim() != other.dim() || shape_ != other.shape_) return false;
  if (std::abs(delta_ - other.delta_) > kLayoutTol) return false;
  return (domain_.lo - other.domain_.lo).abs().maxCoeff() <= kLayoutTol &&
         (domain_.hi - other.domain_.hi).abs().maxCoeff() <= kLayoutTol;
}

GridFunction::GridFunction(Grid g, Eigen::ArrayXd v)
    : grid(std::move(g)), values(std::move(v)) {
  if (values.size() != grid.size()) {
    throw std::invalid_argument("grid function needs one value per cell");
  }
  if ((values < 0.0).any()) {
    throw std::invalid_argument("grid function values must be non-negative");
  }
}

double lp_norm(const GridFunction& f, double p) {
  if (std::isinf(p)) {
    return f.values.size() > 0 ? f.values.maxCoeff() : 0.0;
  }
  if (!(p >= 1.0)) {
    throw std::invalid_argument("Lp norm requires p >= 1");
  }
  const double mass = (f.values.pow(p)).sum() * f.grid.cell_volume();
  return std::pow(mass, 1.0 / p);
}

BoxUnionIndicator::BoxUnionIndicator(std::vector<Box> parts)
    : boxes(std::move(parts)) {
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    if (boxes[i].dim() != boxes[0].dim()) {
      throw std::invalid_argument("box union: mixed dimensions");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (intersection_volume(boxes[i], boxes[j]) > 0.0) {
        throw std::invalid_argument(
            "box union requires pairwise-disjoint boxes (overlap between parts " +
            std::to_string(j) + " and " + std::to_string(i) + ")");
      }
    }
  }
}

double indicator_measure(const BoxUnionIndicator& e) {
  double m = 0.0;
  for (const Box& b : e.boxes) m += b.volume();
  return m;
}

double integral_over(const BoxUnionIndicator& e, const Box& b) {
  double m = 0.0;
  for (const Box& part : e.boxes) m += intersection_volume(part, b);
  return m;
}

bool contains(const BoxUnionIndicator& e, const Vec& x) {
  for (const Box& part : e.boxes) {
    if (part.contains(x)) return true;
  }
  return false;
}

//---------------------------------------------------------------------------
// Density
//---------------------------------------------------------------------------

Density::Density(BoxUnionIndicator e) : impl_(std::move(e)) {
  const auto& u = std::get<BoxUnionIndicator>(impl_);
  if (u.boxes.empty()) {
    support_ = Box(Vec::Zero(0), Vec::Zero(0));
    sup_ = 0.0;
  } else {
    support_ = bounding_box(u.boxes);
    sup_ = indicator_measure(u) > 0.0 ? 1.0 : 0.0;
  }
}

Density::Density(GridFunction f) : impl_(std::move(f)) {
  const auto& g = std::get<GridFunction>(impl_);
  support_ = g.grid.domain();
  sup_ = g.values.size() > 0 ? g.values.maxCoeff() : 0.0;
}

int Density::dim() const {
  return support_.dim();
}

const BoxUnionIndicator* Density::as_box_union() const {
  return std::get_if<BoxUnionIndicator>(&impl_);
}

const GridFunction* Density::as_grid_function() const {
  return std::get_if<GridFunction>(&impl_);
}

double Density::integral_over_box(const double* lo, const double* hi,
                                  int n) const {
  if (sup_ == 0.0) return 0.0;
  if (const auto* u = std::get_if<BoxUnionIndicator>(&impl_)) {
    double m = 0.0;
    for (const Box& part : u->boxes) {
      m += intersection_volume(part.lo.data(), part.hi.data(), lo, hi, n);
    }
    return m;
  }
  const auto& f = std::get<GridFunction>(impl_);
  const Grid& g = f.grid;
  const double delta = g.delta();

  // Per-axis cell ranges overlapping [lo, hi].
  std::int64_t first[kMaxDim];
  std::int64_t last[kMaxDim];  // exclusive
  for (int a = 0; a < n; ++a) {
    const double blo = std::max(lo[a], g.domain().lo[a]);
    const double bhi = std::min(hi[a], g.domain().hi[a]);
    if (bhi <= blo) return 0.0;
    auto i0 = static_cast<std::int64_t>(std::floor((blo - g.domain().lo[a]) / delta));
    auto i1 = static_cast<std::int64_t>(std::ceil((bhi - g.domain().lo[a]) / delta));
    first[a] = std::max<std::int64_t>(0, i0);
    last[a] = std::min(g.shape()[a], i1);
    if (first[a] >= last[a]) return 0.0;
  }

  std::int64_t idx[kMaxDim];
  double axis_overlap[kMaxDim];
  for (int a = 0; a < n; ++a) idx[a] = first[a];

  const auto overlap = [&](int a) {
    const double clo = g.domain().lo[a] + static_cast<double>(idx[a]) * delta;
    return std::min(hi[a], clo + delta) - std::max(lo[a], clo);
  };
  for (int a = 0; a < n; ++a) axis_overlap[a] = overlap(a);

  double sum = 0.0;
  while (true) {
    std::int64_t flat = 0;
    double w = 1.0;
    for (int a = 0; a < n; ++a) {
      flat = flat * g.shape()[a] + idx[a];
      w *= axis_overlap[a];
    }
    sum += w * f.values[flat];

    int a = n - 1;
    while (a >= 0) {
      if (++idx[a] < last[a]) {
        axis_overlap[a] = overlap(a);
        break;
      }
      idx[a] = first[a];
      axis_overlap[a] = overlap(a);
      --a;
    }
    if (a < 0) break;
  }
  return sum;
}

double Density::integral_over_box(const Box& b) const {
  return integral_over_box(b.lo.data(), b.hi.data(), b.dim());
}

double Density::value_at(const double* x, int n) const {
  if (sup_ == 0.0) return 0.0;
  if (const auto* u = std::get_if<BoxUnionIndicator>(&impl_)) {
    for (const Box& part : u->boxes) {
      bool inside = true;
      for (int a = 0; a < n; ++a) {
        if (x[a] < part.lo[a] || x[a] > part.hi[a]) {
          inside = false;
          break;
        }
      }
      if (inside) return 1.0;
    }
    return 0.0;
  }
  const auto& f = std::get<GridFunction>(impl_);
  const Grid& g = f.grid;
  std::int64_t flat = 0;
  for (int a = 0; a < n; ++a) {
    const double t = (x[a] - g.domain().lo[a]) / g.delta();
    const auto m = static_cast<std::int64_t>(std::floor(t));
    if (t < 0.0 || m >= g.shape()[a]) return 0.0;
    flat = flat * g.shape()[a] + m;
  }
  return f.values[flat];
}

double Density::value_at(const Vec& x) const {
  return value_at(x.data(), static_cast<int>(x.size()));
}

double Density::sup() const { return sup_; }

double Density::lp_norm(double p) const {
  if (const auto* u = std::get_if<BoxUnionIndicator>(&impl_)) {
    const double m = indicator_measure(*u);
    if (std::isinf(p)) return m > 0.0 ? 1.0 : 0.0;
    if (!(p >= 1.0)) throw std::invalid_argument("Lp norm requires p >= 1");
    return std::pow(m, 1.0 / p);
  }
  return skelmax::lp_norm(std::get<GridFunction>(impl_), p);
}

Density Density::clipped_to(const Box& domain, bool* changed) const {
  if (changed) *changed = false;
  if (const auto* u = std::get_if<BoxUnionIndicator>(&impl_)) {
    std::vector<Box> kept;
    for (const Box& part : u->boxes) {
      Box clipped;
      if (!intersect_boxes(part, domain, &clipped)) {
        if (changed && part.volume() > 0.0) *changed = true;
        continue;
      }
      if (changed && clipped.volume() < part.volume()) *changed = true;
      kept.push_back(std::move(clipped));
    }
    return Density(BoxUnionIndicator(std::move(kept)));
  }
  const auto& f = std::get<GridFunction>(impl_);
  Eigen::ArrayXd values = f.values;
  for (std::int64_t i = 0; i < f.grid.size(); ++i) {
    if (values[i] == 0.0) continue;
    const Box c = f.grid.cell(i);
    if (!((c.lo >= domain.lo).all() && (c.hi <= domain.hi).all())) {
      values[i] = 0.0;
      if (changed) *changed = true;
    }
  }
  return Density(GridFunction(f.grid, std::move(values)));
}

}  // namespace skelmax
