#pragma once

// Reference computations on raw GMP rationals, written without the library
// so that tests compare two independent evaluations.

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <random>
#include <vector>

#include "rohull/core.hpp"

#ifdef DOCTEST_LIBRARY_INCLUDED
namespace doctest {
template <>
struct StringMaker<rohull::Scalar> {
  static String convert(const rohull::Scalar& s) { return s.to_string().c_str(); }
};
template <>
struct StringMaker<rohull::Mat2> {
  static String convert(const rohull::Mat2& m) {
    return ("[[" + m.a11.to_string() + ", " + m.a12.to_string() + "], [" + m.a21.to_string() + ", " +
            m.a22.to_string() + "]]")
        .c_str();
  }
};
}  // namespace doctest
#endif

namespace oracle {

using Q = mpq_class;

struct QMat {
  Q a, b, c, d;  // [[a, b], [c, d]]
};

inline Q q(long n, long den = 1) {
  Q v(n, den);
  v.canonicalize();
  return v;
}

inline QMat sub(const QMat& x, const QMat& y) { return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d}; }
inline QMat add(const QMat& x, const QMat& y) { return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d}; }
inline QMat scale(const QMat& x, const Q& s) { return {x.a * s, x.b * s, x.c * s, x.d * s}; }
inline Q det(const QMat& x) { return x.a * x.d - x.b * x.c; }
inline Q inner(const QMat& x, const QMat& y) { return x.a * y.a + x.b * y.b + x.c * y.c + x.d * y.d; }
inline Q norm_sq(const QMat& x) { return inner(x, x); }
inline bool same(const QMat& x, const QMat& y) {
  return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
}

inline QMat from(const rohull::Mat2& m) {
  return {m.a11.rational(), m.a12.rational(), m.a21.rational(), m.a22.rational()};
}
inline rohull::Mat2 to_mat(const QMat& m) {
  return {rohull::Scalar(m.a), rohull::Scalar(m.b), rohull::Scalar(m.c), rohull::Scalar(m.d)};
}

/// Squared distance from p to the closed segment [a, b] by projection.
inline Q point_segment_sq(const QMat& p, const QMat& a, const QMat& b) {
  QMat d = sub(b, a);
  Q len = norm_sq(d);
  if (len == 0) return norm_sq(sub(p, a));
  Q t = inner(sub(p, a), d) / len;
  t = std::clamp(t, Q(0), Q(1));
  return norm_sq(sub(p, add(a, scale(d, t))));
}

inline Q min_point_sq(const QMat& p, const std::vector<QMat>& pts) {
  Q best = norm_sq(sub(p, pts.front()));
  for (const auto& x : pts) best = std::min(best, norm_sq(sub(p, x)));
  return best;
}

/// Five-point data straight from the defining formulas.
struct FivePoint {
  std::array<QMat, 4> X, P;
  std::array<Q, 4> mu;
};

inline FivePoint five_point(const Q& e) {
  FivePoint f;
  const Q e2 = e * e;
  f.X = {QMat{1, 0, 0, 0}, QMat{0, 0, 0, 1}, QMat{-e, -1, -e2, -e}, QMat{-e, e2, 1, -e}};
  f.mu[0] = (1 + 2 * e) / (e * (1 - e2));
  f.mu[1] = 1 + e2 * f.mu[0];
  f.mu[2] = 1 + ((1 + e2) / e) * f.mu[1];
  f.mu[3] = 1 + e2 * f.mu[2];
  f.P[0] = scale(QMat{-e, 0, 1, 0}, 1 / (e * (f.mu[0] - 1)));
  f.P[1] = scale(QMat{0, 0, 1, 0}, 1 / (f.mu[0] * e));
  f.P[2] = scale(QMat{0, 0, e, 1}, 1 / f.mu[1]);
  f.P[3] = scale(QMat{-e2, -e, e, 1}, 1 / (f.mu[2] * e));
  return f;
}

/// Small random rationals for property tests.
class RationalGen {
 public:
  explicit RationalGen(unsigned seed, int num_max = 9, int den_max = 6)
      : rng_(seed), num_(-num_max, num_max), den_(1, den_max) {}
  Q next() { return q(num_(rng_), den_(rng_)); }
  rohull::Scalar scalar() { return rohull::Scalar(next()); }
  rohull::Mat2 mat() { return {scalar(), scalar(), scalar(), scalar()}; }
  /// Outer product a b^T of random rational vectors (rank <= 1).
  rohull::Mat2 rank_deficient() {
    Q a1 = next(), a2 = next(), b1 = next(), b2 = next();
    return to_mat({a1 * b1, a1 * b2, a2 * b1, a2 * b2});
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  std::mt19937& engine() { return rng_; }

 private:
  std::mt19937 rng_;
  std::uniform_int_distribution<int> num_, den_;
};

}  // namespace oracle
