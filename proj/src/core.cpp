#include "rohull/core.hpp"

#include <cmath>

namespace rohull {

Mat2 Mat2::zero(Mode mode) {
  Scalar z = Scalar::of(mode, 0);
  return {z, z, z, z};
}

Mat2 Mat2::identity(Mode mode) {
  Scalar z = Scalar::of(mode, 0), o = Scalar::of(mode, 1);
  return {o, z, z, o};
}

Mat2 Mat2::diag(const Scalar& x, const Scalar& y) {
  Scalar z = like(x, 0);
  return {x, z, z, y};
}

Mode Mat2::mode() const {
  Mode m = a11.mode();
  if (a12.mode() != m || a21.mode() != m || a22.mode() != m)
    throw ModeError("matrix has mixed exact/float entries");
  return m;
}

Mat2& Mat2::operator+=(const Mat2& o) {
  a11 += o.a11;
  a12 += o.a12;
  a21 += o.a21;
  a22 += o.a22;
  return *this;
}

Mat2& Mat2::operator-=(const Mat2& o) {
  a11 -= o.a11;
  a12 -= o.a12;
  a21 -= o.a21;
  a22 -= o.a22;
  return *this;
}

Mat2& Mat2::operator*=(const Scalar& s) {
  a11 *= s;
  a12 *= s;
  a21 *= s;
  a22 *= s;
  return *this;
}

Mat2 operator/(const Mat2& a, const Scalar& s) { return {a.a11 / s, a.a12 / s, a.a21 / s, a.a22 / s}; }

bool operator==(const Mat2& a, const Mat2& b) {
  return a.a11 == b.a11 && a.a12 == b.a12 && a.a21 == b.a21 && a.a22 == b.a22;
}

bool Mat2::is_zero() const { return a11.is_zero() && a12.is_zero() && a21.is_zero() && a22.is_zero(); }

Scalar det(const Mat2& m) { return m.a11 * m.a22 - m.a12 * m.a21; }

Scalar mixed_det(const Mat2& a, const Mat2& b) {
  return a.a11 * b.a22 + b.a11 * a.a22 - a.a12 * b.a21 - b.a12 * a.a21;
}

Scalar dot(const Mat2& a, const Mat2& b) {
  return a.a11 * b.a11 + a.a12 * b.a12 + a.a21 * b.a21 + a.a22 * b.a22;
}

Scalar max_abs(const Mat2& m) { return max(max(m.a11.abs(), m.a12.abs()), max(m.a21.abs(), m.a22.abs())); }

Mat2 lerp(const Mat2& a, const Mat2& b, const Scalar& t) { return a + (b - a) * t; }

bool det_vanishes(const Mat2& m, double tol) {
  Scalar d = det(m);
  if (d.is_exact()) return d.is_zero();
  return std::abs(d.to_double()) <= tol * frobenius_sq(m).to_double();
}

int rank(const Mat2& m, double tol) {
  if (m.is_zero()) return 0;
  return det_vanishes(m, tol) ? 1 : 2;
}

bool rank_one_connected(const Mat2& x, const Mat2& y, double tol) {
  Mat2 d = x - y;
  if (d.is_zero()) throw Error("identical matrices have rank-0 difference");
  return det_vanishes(d, tol);
}

Scalar crossing_parameter(const Mat2& a, const Mat2& a_next, const Mat2& b, double tol) {
  Scalar pivot = det(a - a_next);
  if (pivot.is_zero() || det_vanishes(a - a_next, tol)) throw Error("degenerate pivot pair");
  Scalar end = det(b - a_next);
  if (end.is_zero() || end.sign() == pivot.sign()) throw Error("no sign change");
  if (a != b && !det_vanishes(b - a, tol))
    throw Error("crossing segment is not rank-one: det is not affine along it");
  return pivot / (pivot - end);
}

std::string_view to_string(Subspace s) {
  switch (s) {
    case Subspace::diagonal:
      return "diag";
    case Subspace::upper_triangular:
      return "tri";
    case Subspace::symmetric:
      return "sym";
  }
  return "?";
}

Mat2 embed(const DiagPt& p) { return Mat2::diag(p.x, p.y); }
Mat2 embed(const TriPt& p) { return {p.x, p.z, like(p.x, 0), p.y}; }
Mat2 embed(const SymPt& p) { return {p.x, p.z, p.z, p.y}; }

namespace {

bool negligible(const Scalar& v, const Mat2& m) {
  if (v.is_exact()) return v.is_zero();
  return std::abs(v.to_double()) <= 1e-12 * std::max(1.0, max_abs(m).to_double());
}

}  // namespace

DiagPt to_diag(const Mat2& m) {
  if (!negligible(m.a12, m) || !negligible(m.a21, m)) throw Error("matrix is not diagonal");
  return {m.a11, m.a22};
}

TriPt to_tri(const Mat2& m) {
  if (!negligible(m.a21, m)) throw Error("matrix is not upper triangular");
  return {m.a11, m.a22, m.a12};
}

SymPt to_sym(const Mat2& m) {
  Scalar skew = m.a12 - m.a21;
  if (!negligible(skew, m)) throw Error("matrix is not symmetric");
  if (m.a12.is_exact()) return {m.a11, m.a22, m.a12};
  return {m.a11, m.a22, (m.a12 + m.a21) * Scalar::from_double(0.5)};
}

std::array<Scalar, 3> coordinates(const Mat2& m, Subspace s) {
  switch (s) {
    case Subspace::diagonal: {
      DiagPt p = to_diag(m);
      return {p.x, p.y, like(p.x, 0)};
    }
    case Subspace::upper_triangular: {
      TriPt p = to_tri(m);
      return {p.x, p.y, p.z};
    }
    case Subspace::symmetric: {
      SymPt p = to_sym(m);
      return {p.x, p.y, p.z};
    }
  }
  throw Error("unknown subspace");
}

}  // namespace rohull
