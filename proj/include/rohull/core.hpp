#pragma once

#include <array>

#include "rohull/scalar.hpp"

namespace rohull {

/// Relative tolerance for float rank-one tests: |det D| <= tau * |D|_F^2.
inline constexpr double kRankTolerance = 1e-9;

/// A 2x2 real matrix [[a11, a12], [a21, a22]].
struct Mat2 {
  Scalar a11, a12, a21, a22;

  static Mat2 zero(Mode mode);
  static Mat2 identity(Mode mode);
  static Mat2 diag(const Scalar& x, const Scalar& y);

  /// Mode of the entries; throws ModeError if they disagree.
  Mode mode() const;

  Mat2 operator-() const { return {-a11, -a12, -a21, -a22}; }
  Mat2& operator+=(const Mat2& o);
  Mat2& operator-=(const Mat2& o);
  Mat2& operator*=(const Scalar& s);
  friend Mat2 operator+(Mat2 a, const Mat2& b) { return a += b; }
  friend Mat2 operator-(Mat2 a, const Mat2& b) { return a -= b; }
  friend Mat2 operator*(Mat2 a, const Scalar& s) { return a *= s; }
  friend Mat2 operator*(const Scalar& s, Mat2 a) { return a *= s; }
  friend Mat2 operator/(const Mat2& a, const Scalar& s);
  friend bool operator==(const Mat2& a, const Mat2& b);
  friend bool operator!=(const Mat2& a, const Mat2& b) { return !(a == b); }

  bool is_zero() const;
  std::array<Scalar, 4> entries() const { return {a11, a12, a21, a22}; }
};

Scalar det(const Mat2& m);
/// Mixed term of the determinant: det(A + tB) = det A + t*mixed_det(A, B) + t^2 det B.
Scalar mixed_det(const Mat2& a, const Mat2& b);
/// Frobenius inner product.
Scalar dot(const Mat2& a, const Mat2& b);
inline Scalar frobenius_sq(const Mat2& m) { return dot(m, m); }
Scalar max_abs(const Mat2& m);
/// (1 - t) a + t b
Mat2 lerp(const Mat2& a, const Mat2& b, const Scalar& t);

/// True when |det m| <= tol * |m|_F^2 (exact mode: det m == 0).
bool det_vanishes(const Mat2& m, double tol = kRankTolerance);

/// 0 for the zero matrix, 1 for a nonzero matrix with vanishing determinant,
/// 2 otherwise.
int rank(const Mat2& m, double tol = kRankTolerance);

/// Whether rank(x - y) == 1. Throws if x == y: a zero difference has rank 0
/// and the caller decides whether that counts.
bool rank_one_connected(const Mat2& x, const Mat2& y, double tol = kRankTolerance);

/// Parameter t in (0,1) at which (1 - t) a + t b meets the rank-one cone of
/// `a_next`, i.e. det((1 - t) a + t b - a_next) = 0. Requires b - a of rank
/// at most one, so the determinant is affine along the segment.
Scalar crossing_parameter(const Mat2& a, const Mat2& a_next, const Mat2& b, double tol = kRankTolerance);

/// (x, y) <-> diag(x, y)
struct DiagPt {
  Scalar x, y;
  friend bool operator==(const DiagPt&, const DiagPt&) = default;
};
/// (x, y, z) <-> [[x, z], [0, y]]
struct TriPt {
  Scalar x, y, z;
  friend bool operator==(const TriPt&, const TriPt&) = default;
};
/// (x, y, z) <-> [[x, z], [z, y]]
struct SymPt {
  Scalar x, y, z;
  friend bool operator==(const SymPt&, const SymPt&) = default;
};

enum class Subspace { diagonal, upper_triangular, symmetric };
std::string_view to_string(Subspace s);

Mat2 embed(const DiagPt& p);
Mat2 embed(const TriPt& p);
Mat2 embed(const SymPt& p);

/// Projections; throw when `m` is not in the subspace.
DiagPt to_diag(const Mat2& m);
TriPt to_tri(const Mat2& m);
SymPt to_sym(const Mat2& m);

/// Coordinates of `m` in `s` as (x, y, z); z = 0 for the diagonal.
std::array<Scalar, 3> coordinates(const Mat2& m, Subspace s);

}  // namespace rohull
