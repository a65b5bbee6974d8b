// SPDX-License-Identifier: Apache-2.0
#include "skelmax/geometry.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace skelmax {

namespace {

void check_dims(int n, int k) {
  if (n < 1 || n > kMaxDim) {
    throw std::invalid_argument("dimension n must be in [1, " +
                                std::to_string(kMaxDim) + "], got " +
                                std::to_string(n));
  }
  if (k < 0 || k >= n) {
    throw std::invalid_argument("face dimension k must satisfy 0 <= k < n, got k=" +
                                std::to_string(k) + ", n=" + std::to_string(n));
  }
}

}  // namespace

Box::Box(Vec lower, Vec upper) : lo(std::move(lower)), hi(std::move(upper)) {
  if (lo.size() != hi.size()) {
    throw std::invalid_argument("box corners must have equal dimension");
  }
  if ((hi < lo).any()) {
    throw std::invalid_argument("box requires lo[i] <= hi[i] on every axis");
  }
}

bool Box::contains(const Vec& x) const {
  return (x >= lo).all() && (x <= hi).all();
}

Box Box::merged(const Box& other) const {
  return Box(lo.min(other.lo), hi.max(other.hi));
}

double intersection_volume(const Box& a, const Box& b) {
  return (a.hi.min(b.hi) - a.lo.max(b.lo)).max(0.0).prod();
}

double intersection_volume(const double* alo, const double* ahi,
                           const double* blo, const double* bhi, int n) {
  double v = 1.0;
  for (int i = 0; i < n; ++i) {
    const double w = std::min(ahi[i], bhi[i]) - std::max(alo[i], blo[i]);
    if (w <= 0.0) return 0.0;
    v *= w;
  }
  return v;
}

bool intersect_boxes(const Box& a, const Box& b, Box* out) {
  Vec lo = a.lo.max(b.lo);
  Vec hi = a.hi.min(b.hi);
  if ((hi < lo).any()) return false;
  *out = Box(std::move(lo), std::move(hi));
  return true;
}

Box bounding_box(const std::vector<Box>& boxes) {
  if (boxes.empty()) {
    throw std::invalid_argument("bounding_box of an empty list");
  }
  Box acc = boxes.front();
  for (std::size_t i = 1; i < boxes.size(); ++i) acc = acc.merged(boxes[i]);
  return acc;
}

std::vector<Box> disjoint_union(const std::vector<Box>& boxes) {
  if (boxes.empty()) return {};
  const int n = boxes.front().dim();
  for (const Box& b : boxes) {
    if (b.dim() != n) {
      throw std::invalid_argument("disjoint_union: mixed dimensions");
    }
  }

  // Coordinate sweep: cut space along every box boundary, keep the covered
  // cells, then merge consecutive cells along the last axis.
  std::vector<std::vector<double>> cuts(n);
  for (int a = 0; a < n; ++a) {
    for (const Box& b : boxes) {
      cuts[a].push_back(b.lo[a]);
      cuts[a].push_back(b.hi[a]);
    }
    std::sort(cuts[a].begin(), cuts[a].end());
    cuts[a].erase(std::unique(cuts[a].begin(), cuts[a].end()), cuts[a].end());
  }

  std::vector<Box> out;
  std::vector<int> idx(n, 0);
  Vec lo(n), hi(n), mid(n);
  bool open_run = false;
  Vec run_lo(n), run_hi(n);

  const auto covered = [&](const Vec& m) {
    for (const Box& b : boxes) {
      if (b.contains(m)) return true;
    }
    return false;
  };

  // Odometer over arrangement cells; axis n-1 varies fastest so covered
  // runs along it can be merged into single boxes.
  while (true) {
    bool cell_ok = true;
    for (int a = 0; a < n; ++a) {
      if (idx[a] + 1 >= static_cast<int>(cuts[a].size())) {
        cell_ok = false;
        break;
      }
      lo[a] = cuts[a][idx[a]];
      hi[a] = cuts[a][idx[a] + 1];
      mid[a] = 0.5 * (lo[a] + hi[a]);
    }
    if (cell_ok && (hi > lo).all() && covered(mid)) {
      if (open_run && run_hi[n - 1] == lo[n - 1]) {
        run_hi[n - 1] = hi[n - 1];
      } else {
        if (open_run) out.emplace_back(run_lo, run_hi);
        run_lo = lo;
        run_hi = hi;
        open_run = true;
      }
    } else if (open_run) {
      out.emplace_back(run_lo, run_hi);
      open_run = false;
    }

    int a = n - 1;
    while (a >= 0) {
      if (++idx[a] + 1 < static_cast<int>(cuts[a].size())) break;
      idx[a] = 0;
      --a;
    }
    if (a < 0) break;
    if (a != n - 1 && open_run) {
      out.emplace_back(run_lo, run_hi);
      open_run = false;
    }
  }
  if (open_run) out.emplace_back(run_lo, run_hi);
  return out;
}

std::int64_t face_count(int n, int k) {
  check_dims(n, k);
  std::int64_t binom = 1;
  for (int i = 0; i < k; ++i) binom = binom * (n - i) / (i + 1);
  return binom << (n - k);
}

std::vector<FaceMask> face_combinatorics(int n, int k) {
  check_dims(n, k);
  std::vector<FaceMask> out;
  out.reserve(static_cast<std::size_t>(face_count(n, k)));

  // k-subsets of {0..n-1} in lexicographic order.
  std::vector<int> subset(k);
  for (int i = 0; i < k; ++i) subset[i] = i;
  const int patterns = 1 << (n - k);
  while (true) {
    std::uint32_t free_mask = 0;
    for (int a : subset) free_mask |= 1u << a;
    for (int s = 0; s < patterns; ++s) {
      FaceMask m;
      m.free_mask = free_mask;
      std::uint32_t bits = 0;
      int t = 0;
      for (int a = 0; a < n; ++a) {
        if (free_mask & (1u << a)) continue;
        if (s & (1 << t)) bits |= 1u << a;
        ++t;
      }
      m.sign_bits = bits;
      out.push_back(m);
    }
    // next combination
    int i = k - 1;
    while (i >= 0 && subset[i] == n - k + i) --i;
    if (i < 0) break;
    ++subset[i];
    for (int j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
  }
  return out;
}

double KFace::measure() const {
  double m = 1.0;
  for (int i = 0; i < k; ++i) m *= 2.0 * half_side;
  return m;
}

FaceMask KFace::mask() const {
  FaceMask m;
  for (int a : free_axes) m.free_mask |= 1u << a;
  for (int a = 0; a < n; ++a) {
    if (sign[a] > 0) m.sign_bits |= 1u << a;
  }
  return m;
}

KFace face_from_mask(int n, int k, const FaceMask& m, const Vec& center,
                     double r) {
  KFace f;
  f.n = n;
  f.k = k;
  f.center = center;
  f.half_side = r;
  f.sign.assign(n, 0);
  for (int a = 0; a < n; ++a) {
    if (m.free_mask & (1u << a)) {
      f.free_axes.push_back(a);
    } else {
      f.sign[a] = (m.sign_bits & (1u << a)) ? 1 : -1;
    }
  }
  return f;
}

std::vector<KFace> enumerate_faces(int n, int k, const Vec& center, double r) {
  check_dims(n, k);
  if (center.size() != n) {
    throw std::invalid_argument("face center has wrong dimension");
  }
  if (!(r > 0.0)) {
    throw std::invalid_argument("face half side must be positive");
  }
  std::vector<KFace> faces;
  const auto masks = face_combinatorics(n, k);
  faces.reserve(masks.size());
  for (const FaceMask& m : masks) {
    faces.push_back(face_from_mask(n, k, m, center, r));
  }
  return faces;
}

void face_neighborhood_bounds(const double* center, double r,
                              const FaceMask& m, int n, double delta,
                              double* lo, double* hi) {
  for (int a = 0; a < n; ++a) {
    if (m.free_mask & (1u << a)) {
      lo[a] = center[a] - r - delta;
      hi[a] = center[a] + r + delta;
    } else {
      const double c = (m.sign_bits & (1u << a)) ? center[a] + r : center[a] - r;
      lo[a] = c - delta;
      hi[a] = c + delta;
    }
  }
}

Box face_neighborhood(const KFace& face, double delta) {
  if (!(delta > 0.0)) {
    throw std::invalid_argument("neighborhood width must be positive");
  }
  Vec lo(face.n), hi(face.n);
  const FaceMask m = face.mask();
  face_neighborhood_bounds(face.center.data(), face.half_side, m, face.n,
                           delta, lo.data(), hi.data());
  return Box(std::move(lo), std::move(hi));
}

PlaneKey plane_key(const KFace& face) {
  PlaneKey key;
  key.free_axes = face.free_axes;
  key.offsets.resize(face.n - face.k);
  int t = 0;
  for (int a = 0; a < face.n; ++a) {
    if (face.sign[a] != 0) {
      key.offsets[t++] = face.center[a] + face.sign[a] * face.half_side;
    }
  }
  return key;
}

bool operator==(const PlaneKey& a, const PlaneKey& b) {
  if (a.free_axes != b.free_axes) return false;
  if (a.offsets.size() != b.offsets.size()) return false;
  for (Eigen::Index i = 0; i < a.offsets.size(); ++i) {
    if (std::abs(a.offsets[i] - b.offsets[i]) > kCoplanarTol) return false;
  }
  return true;
}

bool PlaneKeyLess::operator()(const PlaneKey& a, const PlaneKey& b) const {
  if (a.free_axes != b.free_axes) return a.free_axes < b.free_axes;
  const Eigen::Index m = std::min(a.offsets.size(), b.offsets.size());
  for (Eigen::Index i = 0; i < m; ++i) {
    if (a.offsets[i] < b.offsets[i] - kCoplanarTol) return true;
    if (b.offsets[i] < a.offsets[i] - kCoplanarTol) return false;
  }
  return a.offsets.size() < b.offsets.size();
}

}  // namespace skelmax
