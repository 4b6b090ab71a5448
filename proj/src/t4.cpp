#include "rohull/t4.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rohull {

Mat2 T4Witness::corner(int k) const {
  Mat2 q = P;
  for (int j = 0; j < (k % 4); ++j) q += C[j];
  return q;
}

namespace {

std::vector<Mat2> ordered_points(std::span<const Mat2> x, const Ordering& o, Mode mode) {
  if (x.size() != 4) throw Error("a T4 configuration needs exactly four matrices");
  std::vector<Mat2> out;
  for (int idx : o) {
    if (idx < 0 || idx > 3) throw Error("ordering index out of range");
    const Mat2& m = x[idx];
    out.push_back(m.mode() == mode ? m
                                   : Mat2{Scalar::convert(m.a11, mode), Scalar::convert(m.a12, mode),
                                          Scalar::convert(m.a21, mode), Scalar::convert(m.a22, mode)});
  }
  return out;
}

std::string cyclic_class_of(const Ordering& o) {
  int start = static_cast<int>(std::min_element(o.begin(), o.end()) - o.begin());
  std::string s;
  for (int k = 0; k < 4; ++k) {
    if (k) s += '-';
    s += std::to_string(o[(start + k) % 4]);
  }
  return s;
}

// Plain double scaffold used inside the Newton iteration.
using M2d = std::array<double, 4>;

double det(const M2d& m) { return m[0] * m[3] - m[1] * m[2]; }

bool scaffold_dets(const std::array<M2d, 4>& x, const std::array<double, 4>& mu, double scale_sq,
                   std::array<double, 4>& f) {
  // Q_k = X_k / mu_k + (1 - 1/mu_k) Q_{k-1};  Q_4 = c + pi * Q_0.
  M2d c{0, 0, 0, 0};
  double pi = 1;
  for (int k = 0; k < 4; ++k) {
    double inv = 1 / mu[k];
    for (int e = 0; e < 4; ++e) c[e] = x[k][e] * inv + (1 - inv) * c[e];
    pi *= 1 - inv;
  }
  if (std::abs(1 - pi) < 1e-14) return false;
  M2d q;
  for (int e = 0; e < 4; ++e) q[e] = c[e] / (1 - pi);
  for (int k = 0; k < 4; ++k) {
    double inv = 1 / mu[k];
    M2d next, ck;
    for (int e = 0; e < 4; ++e) {
      next[e] = x[k][e] * inv + (1 - inv) * q[e];
      ck[e] = next[e] - q[e];
    }
    f[k] = det(ck) / scale_sq;
    q = next;
  }
  return true;
}

double norm(const std::array<double, 4>& v) {
  return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
}

// Solves j * d = rhs in place with partial pivoting.
bool solve4(std::array<std::array<double, 4>, 4> j, std::array<double, 4> rhs, std::array<double, 4>& d) {
  for (int c = 0; c < 4; ++c) {
    int p = c;
    for (int r = c + 1; r < 4; ++r)
      if (std::abs(j[r][c]) > std::abs(j[p][c])) p = r;
    if (std::abs(j[p][c]) < 1e-300) return false;
    std::swap(j[p], j[c]);
    std::swap(rhs[p], rhs[c]);
    for (int r = c + 1; r < 4; ++r) {
      double f = j[r][c] / j[c][c];
      for (int k = c; k < 4; ++k) j[r][k] -= f * j[c][k];
      rhs[r] -= f * rhs[c];
    }
  }
  for (int c = 3; c >= 0; --c) {
    double s = rhs[c];
    for (int k = c + 1; k < 4; ++k) s -= j[c][k] * d[k];
    d[c] = s / j[c][c];
  }
  return std::all_of(d.begin(), d.end(), [](double v) { return std::isfinite(v); });
}

constexpr double kMuCap = 1e3;
constexpr int kMaxNewton = 60;

std::optional<std::array<double, 4>> newton(const std::array<M2d, 4>& x, std::array<double, 4> mu,
                                            double scale_sq, double tol) {
  std::array<double, 4> f;
  if (!scaffold_dets(x, mu, scale_sq, f)) return std::nullopt;
  double nf = norm(f);
  const double initial = nf;
  for (int it = 0; it < kMaxNewton && nf > 1e-15; ++it) {
    std::array<std::array<double, 4>, 4> jac;
    for (int i = 0; i < 4; ++i) {
      auto shifted = mu;
      double h = 1e-6 * mu[i];
      shifted[i] += h;
      std::array<double, 4> fs;
      if (!scaffold_dets(x, shifted, scale_sq, fs)) return std::nullopt;
      for (int r = 0; r < 4; ++r) jac[r][i] = (fs[r] - f[r]) / h;
    }
    std::array<double, 4> step, rhs = {-f[0], -f[1], -f[2], -f[3]};
    if (!solve4(jac, rhs, step)) return std::nullopt;
    double lambda = 1;
    bool improved = false;
    for (int bt = 0; bt < 30; ++bt, lambda *= 0.5) {
      std::array<double, 4> trial;
      bool admissible = true;
      for (int i = 0; i < 4; ++i) {
        trial[i] = mu[i] + lambda * step[i];
        if (!(trial[i] > 1)) admissible = false;
      }
      if (!admissible) continue;
      std::array<double, 4> ft;
      if (!scaffold_dets(x, trial, scale_sq, ft)) continue;
      double nt = norm(ft);
      if (nt < nf) {
        mu = trial;
        f = ft;
        nf = nt;
        improved = true;
        break;
      }
    }
    if (!improved) break;
    if (*std::max_element(mu.begin(), mu.end()) > kMuCap) return std::nullopt;
    // Seeds that have not made real progress early are abandoned.
    if (it == 15 && nf > 1e-3 * initial) return std::nullopt;
  }
  if (nf > tol) return std::nullopt;
  if (*std::min_element(mu.begin(), mu.end()) <= 1 + tol) return std::nullopt;
  return mu;
}

// Smallest-denominator continued-fraction convergent within rel_tol of v.
std::optional<mpq_class> rationalize(double v, double rel_tol = 1e-9) {
  if (!std::isfinite(v)) return std::nullopt;
  mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = v;
  for (int i = 0; i < 40; ++i) {
    double a = std::floor(r);
    mpz_class ai(a);
    mpz_class h2 = ai * h1 + h0, k2 = ai * k1 + k0;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    mpq_class q(h1, k1);
    q.canonicalize();
    if (std::abs(q.get_d() - v) <= rel_tol * std::max(1.0, std::abs(v))) return q;
    if (k1 > 10000000) return std::nullopt;
    double frac = r - a;
    if (frac < 1e-15) return std::nullopt;
    r = 1 / frac;
  }
  return std::nullopt;
}

Scalar residual_norm(const Mat2& m) { return max_abs(m); }

}  // namespace

SeedGrid SeedGrid::standard() {
  SeedGrid g;
  for (int j = 0; j <= 9; ++j) g.values.push_back(1 + std::ldexp(1.0, j) / 8);
  return g;
}

std::optional<T4Witness> scaffold_for(std::span<const Mat2> ordered, const std::array<Scalar, 4>& mu) {
  if (ordered.size() != 4) throw Error("a T4 configuration needs exactly four matrices");
  const Mode mode = mu[0].mode();
  const Scalar one = Scalar::of(mode, 1);
  Mat2 c = Mat2::zero(mode);
  Scalar pi = one;
  for (int k = 0; k < 4; ++k) {
    Scalar inv = one / mu[k];
    c = ordered[k] * inv + c * (one - inv);
    pi *= one - inv;
  }
  if ((one - pi).is_zero()) return std::nullopt;
  T4Witness w;
  w.P = c / (one - pi);
  w.mu = mu;
  Mat2 q = w.P;
  for (int k = 0; k < 4; ++k) {
    Scalar inv = one / mu[k];
    Mat2 next = ordered[k] * inv + q * (one - inv);
    w.C[k] = next - q;
    q = next;
  }
  w.exact = mode == Mode::exact;
  return w;
}

T4Residuals check_t4_witness(std::span<const Mat2> x, const T4Witness& w, double tol) {
  const Mode mode = w.P.mode();
  auto ordered = ordered_points(x, w.ordering, mode);
  T4Residuals r;
  r.equation_residual = Scalar::of(mode, 0);
  Mat2 sum = Mat2::zero(mode);
  for (int k = 0; k < 4; ++k) {
    Mat2 predicted = w.corner(k) + w.C[k] * w.mu[k];
    r.equation_residual = max(r.equation_residual, residual_norm(ordered[k] - predicted));
    r.det_C[k] = det(w.C[k]);
    sum += w.C[k];
    if (w.C[k].is_zero()) r.nonzero_increments = false;
  }
  r.sum_residual = residual_norm(sum);
  r.margin = min(min(w.mu[0], w.mu[1]), min(w.mu[2], w.mu[3])) - Scalar::of(mode, 1);
  if (mode == Mode::exact) {
    r.accepted = r.equation_residual.is_zero() && r.sum_residual.is_zero() &&
                 std::all_of(r.det_C.begin(), r.det_C.end(), [](const Scalar& d) { return d.is_zero(); }) &&
                 r.margin.sign() > 0 && r.nonzero_increments;
    return r;
  }
  double scale = 1;
  for (const auto& m : ordered) scale = std::max(scale, max_abs(m).to_double());
  bool dets_ok = std::all_of(r.det_C.begin(), r.det_C.end(),
                             [&](const Scalar& d) { return std::abs(d.to_double()) <= tol * scale * scale; });
  r.accepted = r.equation_residual.to_double() <= tol * scale && r.sum_residual.to_double() <= tol * scale &&
               dets_ok && r.margin.to_double() > tol && r.nonzero_increments;
  return r;
}

T4Attempt solve_t4_ordering(std::span<const Mat2> x, const SeedGrid& seeds, double tol) {
  if (x.size() != 4) throw Error("a T4 configuration needs exactly four matrices");
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      if ((x[i] - x[j]).is_zero()) return {std::nullopt, "points not distinct"};
      if (det_vanishes(x[i] - x[j])) return {std::nullopt, "rank-one connection present"};
    }
  const Mode mode = x[0].mode();
  std::array<M2d, 4> xd;
  double scale = 0;
  for (int k = 0; k < 4; ++k) {
    auto e = x[k].entries();
    for (int i = 0; i < 4; ++i) xd[k][i] = e[i].to_double();
  }
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (int e = 0; e < 4; ++e) scale = std::max(scale, std::abs(xd[i][e] - xd[j][e]));
  const double scale_sq = scale * scale;

  const std::size_t n = seeds.values.size();
  std::size_t total = n * n * n * n;
  for (std::size_t s = 0; s < total; ++s) {
    std::array<double, 4> mu0;
    std::size_t rest = s;
    for (int i = 3; i >= 0; --i) {
      mu0[i] = seeds.values[rest % n];
      rest /= n;
    }
    auto mu = newton(xd, mu0, scale_sq, tol);
    if (!mu) continue;

    std::optional<T4Witness> w;
    if (mode == Mode::exact) {
      std::array<Scalar, 4> q;
      bool ok = true;
      for (int i = 0; i < 4 && ok; ++i) {
        auto r = rationalize((*mu)[i]);
        ok = r.has_value();
        if (ok) q[i] = Scalar(*r);
      }
      if (ok) {
        std::vector<Mat2> ordered(x.begin(), x.end());
        auto exact = scaffold_for(ordered, q);
        if (exact && check_t4_witness(x, *exact, 0).accepted) w = exact;
      }
    }
    if (!w) {
      auto ordered = ordered_points(x, {0, 1, 2, 3}, Mode::floating);
      std::array<Scalar, 4> mf;
      for (int i = 0; i < 4; ++i) mf[i] = Scalar::from_double((*mu)[i]);
      w = scaffold_for(ordered, mf);
      if (!w) continue;
      w->exact = false;
      if (!check_t4_witness(x, *w, std::max(tol, 1e-8)).accepted) continue;
    }
    w->seed_index = static_cast<int>(s);
    return {w, ""};
  }
  return {std::nullopt, "no seed converged"};
}

T4Witness rotate(const T4Witness& w, int shift) {
  shift = ((shift % 4) + 4) % 4;
  T4Witness r = w;
  r.P = w.corner(shift);
  for (int k = 0; k < 4; ++k) {
    r.ordering[k] = w.ordering[(k + shift) % 4];
    r.C[k] = w.C[(k + shift) % 4];
    r.mu[k] = w.mu[(k + shift) % 4];
  }
  r.cyclic_class = cyclic_class_of(r.ordering);
  return r;
}

T4Detection detect_t4(std::span<const Mat2> x, double tol, const SeedGrid& seeds) {
  if (x.size() != 4) throw Error("a T4 configuration needs exactly four matrices");
  T4Detection out;
  Ordering perm{0, 1, 2, 3};
  do {
    std::vector<Mat2> ordered;
    for (int idx : perm) ordered.push_back(x[idx]);
    T4Attempt a = solve_t4_ordering(ordered, seeds, tol);
    if (!a.witness) {
      out.failures.push_back({perm, a.reason});
      continue;
    }
    T4Witness w = *a.witness;
    w.ordering = perm;
    w.cyclic_class = cyclic_class_of(perm);
    w.rotation_duplicate = std::any_of(out.witnesses.begin(), out.witnesses.end(),
                                       [&](const T4Witness& o) { return o.cyclic_class == w.cyclic_class; });
    out.witnesses.push_back(std::move(w));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

DiscreteLaminate laminate_unroll(std::span<const Mat2> x, const T4Witness& w, int target_corner, int rounds) {
  if (target_corner < 0 || target_corner > 3) throw Error("target corner must be in 0..3");
  if (rounds < 0) throw Error("rounds must be nonnegative");
  if (!check_t4_witness(x, w, 1e-8).accepted) throw Error("invalid T4 witness");
  const Mode mode = w.P.mode();
  const auto ordered = ordered_points(x, w.ordering, mode);
  const Scalar one = Scalar::of(mode, 1);
  const Mat2 target = w.corner(target_corner);

  std::array<Scalar, 4> on_points;
  on_points.fill(Scalar::of(mode, 0));
  Scalar off_weight = one;
  Mat2 off_atom = target;
  int k = target_corner == 0 ? 4 : target_corner;  // Q_k is split using X_k
  DiscreteLaminate out;

  auto barycenter = [&] {
    Mat2 b = off_atom * off_weight;
    for (int i = 0; i < 4; ++i) b += ordered[i] * on_points[i];
    return b;
  };
  for (int step = 0; step < 4 * rounds; ++step) {
    const Scalar frac = one / w.mu[k - 1];
    const Mat2 previous = w.corner(k - 1);
    out.history.push_back({off_atom, ordered[k - 1], previous, frac});
    on_points[k - 1] += off_weight * frac;
    off_weight *= one - frac;
    off_atom = previous;
    k = k - 1 == 0 ? 4 : k - 1;
    if (mode == Mode::exact && barycenter() != target) throw Error("laminate split moved the barycenter");
  }
  for (int i = 0; i < 4; ++i)
    if (on_points[i].sign() > 0) out.atoms.push_back({ordered[i], on_points[i]});
  out.atoms.push_back({off_atom, off_weight});
  out.barycenter = barycenter();
  out.off_support_mass = off_weight;
  return out;
}

}  // namespace rohull
