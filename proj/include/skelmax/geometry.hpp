// SPDX-License-Identifier: Apache-2.0
//! \file geometry.hpp
//! Axis-aligned geometry kernel: boxes, k-faces of cubes, coordinate
//! k-plane keys and exact intersection volumes.
#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace skelmax {

/// Points and per-axis extents in R^n.
using Vec = Eigen::ArrayXd;

/// Hard cap on the ambient dimension; lets hot paths use stack buffers
/// and axis bitmasks.
inline constexpr int kMaxDim = 16;

/// Absolute tolerance for comparing fixed-axis offsets of coplanar faces.
/// Grid coordinates are multiples of delta, so comparisons are exact in
/// practice; the tolerance only guards against round-off in derived values.
inline constexpr double kCoplanarTol = 1e-9;

//---------------------------------------------------------------------------
// Box
//---------------------------------------------------------------------------

/// Axis-aligned product of closed intervals [lo[i], hi[i]].
/// Degenerate boxes (zero extent on some axis) are allowed.
struct Box {
  Vec lo;
  Vec hi;

  Box() = default;
  Box(Vec lower, Vec upper);

  int dim() const { return static_cast<int>(lo.size()); }
  double volume() const { return (hi - lo).prod(); }

  /// Closed containment test.
  bool contains(const Vec& x) const;

  /// Smallest box containing both operands.
  Box merged(const Box& other) const;
};

/// prod_i max(0, min(a.hi,b.hi) - max(a.lo,b.lo)); symmetric and bounded
/// by either volume.
double intersection_volume(const Box& a, const Box& b);

/// Raw-buffer variant used by the operator evaluation loops.
double intersection_volume(const double* alo, const double* ahi,
                           const double* blo, const double* bhi, int n);

/// a ∩ b if it has a nonempty interior representation, clamped to a valid
/// box; boxes touching only along a facet yield a degenerate box.
bool intersect_boxes(const Box& a, const Box& b, Box* out);

/// Bounding box of a nonempty list.
Box bounding_box(const std::vector<Box>& boxes);

/// Rewrites a (possibly overlapping) list of boxes as a pairwise-disjoint
/// list with the same union, by splitting along the coordinate grid induced
/// by all box boundaries and merging runs along the last axis.
std::vector<Box> disjoint_union(const std::vector<Box>& boxes);

//---------------------------------------------------------------------------
// k-faces
//---------------------------------------------------------------------------

/// Combinatorial type of one k-face of an n-cube: which k axes vary over
/// the face and the +/- side chosen on each of the n-k fixed axes.
/// Bit a of `sign_bits` is meaningful only when bit a of `free_mask` is 0;
/// set means the +r side.
struct FaceMask {
  std::uint32_t free_mask = 0;
  std::uint32_t sign_bits = 0;
};

/// All N = 2^{n-k} C(n,k) face types in canonical order: free-axis subsets
/// lexicographically, sign patterns in binary counting order (all-minus
/// first) over the fixed axes in increasing order.
std::vector<FaceMask> face_combinatorics(int n, int k);

/// One k-dimensional face of the axis-parallel cube with center `center`
/// and half side `half_side`: the point set
///   { y : y[i] in [c[i]-r, c[i]+r] for free i,  y[j] = c[j] + sign[j]*r }.
struct KFace {
  int n = 0;
  int k = 0;
  std::vector<int> free_axes;  // sorted, |free_axes| = k
  std::vector<int> sign;       // length n; 0 on free axes, else -1/+1
  Vec center;
  double half_side = 0.0;

  /// k-dimensional measure (2r)^k.
  double measure() const;
  FaceMask mask() const;
};

KFace face_from_mask(int n, int k, const FaceMask& m, const Vec& center,
                     double r);

/// Enumerates the N = 2^{n-k} C(n,k) faces of the k-skeleton of the cube
/// with center `center` and half side `r`, in the face_combinatorics order.
/// Throws std::invalid_argument unless 0 <= k < n <= kMaxDim and r > 0.
std::vector<KFace> enumerate_faces(int n, int k, const Vec& center, double r);

/// Closed delta-neighborhood of a face in the sup norm: the box
///   prod_{free i} [c_i-r-delta, c_i+r+delta]
/// x prod_{fixed j} [c_j+sign_j r-delta, c_j+sign_j r+delta],
/// of volume (2r+2delta)^k (2delta)^{n-k}.
Box face_neighborhood(const KFace& face, double delta);

/// Raw-buffer variant: writes the neighborhood bounds of the face type `m`
/// for the cube (center, r) into lo/hi (length n).
void face_neighborhood_bounds(const double* center, double r,
                              const FaceMask& m, int n, double delta,
                              double* lo, double* hi);

//---------------------------------------------------------------------------
// Coordinate k-plane keys
//---------------------------------------------------------------------------

/// Identifies the affine coordinate k-plane V = pi_omega + v containing a
/// face: the free-axis set of pi_omega plus the fixed coordinate values of
/// v, in axis order. Two faces are coplanar iff their keys compare equal.
struct PlaneKey {
  std::vector<int> free_axes;
  Vec offsets;  // length n - k, fixed axes in increasing order
};

PlaneKey plane_key(const KFace& face);

bool operator==(const PlaneKey& a, const PlaneKey& b);

/// Strict weak order for map keys: free axes first, then offsets compared
/// lexicographically with tolerance kCoplanarTol.
struct PlaneKeyLess {
  bool operator()(const PlaneKey& a, const PlaneKey& b) const;
};

/// N = 2^{n-k} C(n,k).
std::int64_t face_count(int n, int k);

}  // namespace skelmax
