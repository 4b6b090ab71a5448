#pragma once

// Small dense linear algebra over Scalar, internal to the library.

#include <cmath>
#include <optional>
#include <vector>

#include "rohull/scalar.hpp"

namespace rohull::detail {

/// Zero test: exact in exact mode, |v| <= eps * scale for floats.
inline bool near_zero(const Scalar& v, double scale, double eps = 1e-12) {
  if (v.is_exact()) return v.is_zero();
  return std::abs(v.to_double()) <= eps * std::max(scale, 1.0);
}

/// Solution set of A w = h: w = particular + sum_i tau_i * nullspace[i].
struct AffineSolution {
  std::vector<Scalar> particular;
  std::vector<std::vector<Scalar>> nullspace;
};

/// Gauss-Jordan elimination with largest-magnitude pivoting. `a` is
/// row-major rows x cols. Returns nullopt when the system is inconsistent.
inline std::optional<AffineSolution> solve_affine(std::vector<std::vector<Scalar>> a, std::vector<Scalar> h,
                                                  Mode mode, double scale = 1.0) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<int> pivot_col_of_row;
  std::vector<bool> is_pivot(cols, false);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t best = r;
    for (std::size_t i = r + 1; i < rows; ++i)
      if (a[i][c].abs() > a[best][c].abs()) best = i;
    if (near_zero(a[best][c], scale)) continue;
    std::swap(a[best], a[r]);
    std::swap(h[best], h[r]);
    Scalar inv = Scalar::of(mode, 1) / a[r][c];
    for (std::size_t j = 0; j < cols; ++j) a[r][j] *= inv;
    h[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      Scalar f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
      h[i] -= f * h[r];
    }
    pivot_col_of_row.push_back(static_cast<int>(c));
    is_pivot[c] = true;
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (!near_zero(h[i], scale)) return std::nullopt;

  AffineSolution sol;
  sol.particular.assign(cols, Scalar::of(mode, 0));
  for (std::size_t i = 0; i < r; ++i) sol.particular[pivot_col_of_row[i]] = h[i];
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> n(cols, Scalar::of(mode, 0));
    n[free] = Scalar::of(mode, 1);
    for (std::size_t i = 0; i < r; ++i) n[pivot_col_of_row[i]] = -a[i][free];
    sol.nullspace.push_back(std::move(n));
  }
  return sol;
}

}  // namespace rohull::detail
