// SPDX-License-Identifier: Apache-2.0
//! \file grid.hpp
//! Uniform delta-grids on boxes, piecewise-constant grid functions, exact
//! box-union indicator test functions and Lp norms.
#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "skelmax/geometry.hpp"

namespace skelmax {

//---------------------------------------------------------------------------
// Grid
//---------------------------------------------------------------------------

/// Uniform lattice of half-open delta-cells partitioning a box domain.
/// Cells are indexed lexicographically by center coordinates (axis 0 most
/// significant). Every extent must be an integer multiple of delta.
class Grid {
 public:
  /// Q0 = [0,1)^n. Requires 1/delta to be an integer.
  static Grid unit_cube(int n, double delta);

  Grid(Box domain, double delta);

  int dim() const { return static_cast<int>(shape_.size()); }
  double delta() const { return delta_; }
  const Box& domain() const { return domain_; }
  const std::vector<std::int64_t>& shape() const { return shape_; }
  std::int64_t size() const { return size_; }
  double cell_volume() const;

  /// Index of the half-open cell containing x; throws std::invalid_argument
  /// if x lies outside the domain.
  std::int64_t index_of(const Vec& x) const;

  /// Center of cell i.
  Vec center(std::int64_t i) const;
  /// Raw-buffer variant of center() for evaluation loops.
  void center_into(std::int64_t i, double* x) const;

  /// Cell i as a box [lo, lo+delta]^n (closure of the half-open cell).
  Box cell(std::int64_t i) const;

  /// psi: maps x to the center of its cell; constant on each cell.
  Vec psi(const Vec& x) const { return center(index_of(x)); }

  /// All cell centers in lexicographic order.
  std::vector<Vec> centers() const;

  bool same_layout(const Grid& other) const;

 private:
  Box domain_;
  double delta_ = 0.0;
  std::vector<std::int64_t> shape_;
  std::int64_t size_ = 0;
};

//---------------------------------------------------------------------------
// GridFunction
//---------------------------------------------------------------------------

/// Non-negative function constant on each grid cell, stored as a flat array
/// in lexicographic cell order (the on-disk layout, see io.hpp).
struct GridFunction {
  Grid grid;
  Eigen::ArrayXd values;

  GridFunction(Grid g, Eigen::ArrayXd v);
};

/// Exact Lp norm of the piecewise-constant function, p >= 1 or infinity.
double lp_norm(const GridFunction& f, double p);

//---------------------------------------------------------------------------
// BoxUnionIndicator
//---------------------------------------------------------------------------

/// Indicator of a finite union of pairwise-disjoint boxes; integrals against
/// it reduce to exact intersection-volume sums. Boxes overlapping with
/// positive volume are rejected (shared facets are fine).
struct BoxUnionIndicator {
  std::vector<Box> boxes;

  BoxUnionIndicator() = default;
  explicit BoxUnionIndicator(std::vector<Box> parts);
};

/// Lebesgue measure of the union.
double indicator_measure(const BoxUnionIndicator& e);

/// Exact integral of the indicator over a box.
double integral_over(const BoxUnionIndicator& e, const Box& b);

/// Closed membership test.
bool contains(const BoxUnionIndicator& e, const Vec& x);

//---------------------------------------------------------------------------
// Density
//---------------------------------------------------------------------------

/// Non-negative input field for the maximal operators: either an exact
/// box-union indicator or a grid-sampled function, behind one interface for
/// exact box integrals and pointwise evaluation.
class Density {
 public:
  explicit Density(BoxUnionIndicator e);
  explicit Density(GridFunction f);

  /// Exact integral over [lo, hi] (length n buffers). Exact for indicators
  /// and for the piecewise-constant reading of grid functions; zero
  /// extension outside the support/domain.
  double integral_over_box(const double* lo, const double* hi, int n) const;
  double integral_over_box(const Box& b) const;

  /// Pointwise value, zero outside the support/domain.
  double value_at(const double* x, int n) const;
  double value_at(const Vec& x) const;

  /// Essential supremum.
  double sup() const;

  /// A box outside of which the density vanishes.
  const Box& support_bound() const { return support_; }

  int dim() const;
  bool is_zero() const { return sup() <= 0.0; }

  /// Exact Lp norm (p >= 1 or infinity).
  double lp_norm(double p) const;

  /// Restriction to `domain` (zero outside). For grid functions, cells not
  /// fully contained in `domain` are zeroed. Sets *changed when mass was
  /// dropped.
  Density clipped_to(const Box& domain, bool* changed) const;

  const BoxUnionIndicator* as_box_union() const;
  const GridFunction* as_grid_function() const;

 private:
  std::variant<BoxUnionIndicator, GridFunction> impl_;
  Box support_;
  double sup_ = 0.0;
};

}  // namespace skelmax
