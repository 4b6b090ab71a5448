#include "rohull/constructions.hpp"

#include <cmath>

namespace rohull {

namespace {

Scalar pow2(int n, Mode mode) {
  if (mode == Mode::floating) return Scalar::from_double(std::ldexp(1.0, n));
  mpq_class q(1);
  if (n >= 0)
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(n));
  else
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(-n));
  return Scalar(q);
}

Scalar half(Mode mode) { return mode == Mode::exact ? Scalar::ratio(1, 2) : Scalar::from_double(0.5); }

DiagPt midpoint(const DiagPt& a, const DiagPt& b) {
  Scalar h = half(a.x.mode());
  return {(a.x + b.x) * h, (a.y + b.y) * h};
}

bool vanishes(const Scalar& v, const Scalar& scale, double tol) {
  if (v.is_exact()) return v.is_zero();
  return std::abs(v.to_double()) <= tol * std::max(1.0, scale.to_double());
}

}  // namespace

DiagPt staircase_lower(int n, Mode mode) {
  Scalar one = Scalar::of(mode, 1);
  Scalar p = pow2(-(n + 1), mode);
  return {one - Scalar::of(mode, 3) * p, p};
}

DiagPt staircase_upper(int n, Mode mode) {
  Scalar one = Scalar::of(mode, 1);
  return {one - pow2(-n, mode), Scalar::of(mode, 3) * pow2(-(n + 1), mode)};
}

DiagPt staircase_corner(int n, Mode mode) {
  if (n < -1) throw Error("staircase corner index must be >= -1");
  Scalar p = pow2(-(n + 1), mode);
  return {Scalar::of(mode, 1) - p, p};
}

LaminateSet staircase_points(const StaircaseConfig& cfg) {
  if (cfg.n_max < 0) throw Error("n_max must be nonnegative");
  std::vector<DiagPt> pts = {{Scalar::of(cfg.mode, 1), Scalar::of(cfg.mode, 0)}};
  for (int n = 0; n <= cfg.n_max; ++n) {
    pts.push_back(staircase_lower(n, cfg.mode));
    pts.push_back(staircase_upper(n, cfg.mode));
  }
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (pts[i].x == pts[j].x || pts[i].y == pts[j].y) throw Error("staircase has a rank-one connection");
  LaminateSet s;
  for (const auto& p : pts) s.points.push_back(embed(p));
  return s;
}

StaircaseChain staircase_iterate(const StaircaseConfig& cfg) {
  if (cfg.N < 1 || cfg.N > cfg.n_max) throw Error("staircase needs 1 <= N <= n_max");
  StaircaseChain chain;
  chain.perturbation = staircase_corner(cfg.N, cfg.mode);
  DiagPt current = chain.perturbation;
  for (int n = cfg.N; n >= 0; --n) {
    DiagPt lower = staircase_lower(n, cfg.mode);
    if (lower.y != current.y) throw Error("staircase step is not rank-one (y differs)");
    DiagPt m = midpoint(lower, current);
    chain.steps.push_back({lower, current, m, 'y'});
    DiagPt upper = staircase_upper(n, cfg.mode);
    if (upper.x != m.x) throw Error("staircase step is not rank-one (x differs)");
    current = midpoint(m, upper);
    chain.steps.push_back({m, upper, current, 'x'});
    if (current != staircase_corner(n - 1, cfg.mode)) throw Error("staircase chain left the corner sequence");
  }
  chain.final_point = current;
  return chain;
}

// ---------------------------------------------------------------------------

std::array<DiagPt, 4> DiagonalData::corners() const { return {{{x1, y2}, {x1, y1}, {x2, y1}, {x2, y2}}}; }

std::array<DiagPt, 4> DiagonalData::outer() const {
  return {{{x1, y1 + alpha[0]}, {x2 + alpha[1], y1}, {x2, y2 - alpha[2]}, {x1 - alpha[3], y2}}};
}

void DiagonalData::validate() const {
  if (!(x1 < x2)) throw Error("spiral configuration needs x1 < x2");
  if (!(y2 < y1)) throw Error("spiral configuration needs y2 < y1");
  for (const auto& a : alpha)
    if (a.sign() <= 0) throw Error("spiral configuration needs every alpha_i > 0");
}

DiagonalData DiagonalData::standard(Mode mode) {
  auto s = [&](long v) { return Scalar::of(mode, v); };
  return {s(-1), s(1), s(1), s(-1), {s(2), s(2), s(2), s(2)}};
}

std::array<Scalar, 4> spiral_lambdas(const DiagonalData& d) {
  auto p = d.corners();
  auto a = d.outer();
  std::array<Scalar, 4> lambda;
  for (int i = 0; i < 4; ++i) {
    lambda[i] = crossing_parameter(embed(a[i]), embed(a[(i + 1) % 4]), embed(p[i]));
    if (lambda[i].sign() <= 0 || lambda[i] >= like(lambda[i], 1))
      throw Error("configuration not spiral-admissible");
  }
  return lambda;
}

TriSpiralConfig TriSpiralConfig::standard(Mode mode) {
  return {DiagonalData::standard(mode), Scalar::of(mode, 1)};
}

TriSpiralResult tri_spiral(const TriSpiralConfig& cfg, int n_steps) {
  if (n_steps < 0) throw Error("n_steps must be nonnegative");
  cfg.diag.validate();
  if (cfg.z0.sign() <= 0) throw Error("spiral configuration needs z0 > 0");
  const Mode mode = cfg.z0.mode();
  const Scalar zero = Scalar::of(mode, 0), one = Scalar::of(mode, 1);
  TriSpiralResult out;
  out.lambda = spiral_lambdas(cfg.diag);
  auto corners = cfg.diag.corners();
  auto outer = cfg.diag.outer();
  std::array<Mat2, 4> a;
  for (int i = 0; i < 4; ++i) a[i] = embed(TriPt{outer[i].x, outer[i].y, zero});

  TriPt x{corners[0].x, corners[0].y, cfg.z0};
  out.iterates.push_back(x);
  for (int i = 0; i < n_steps; ++i) {
    const int k = i % 4;
    Mat2 xm = embed(x);
    Scalar cert = det(xm - a[k]);
    if (!vanishes(cert, frobenius_sq(xm - a[k]), kRankTolerance))
      throw Error("spiral iterate is not rank-one connected to its pivot");
    out.certificates.push_back(cert);
    x = to_tri(lerp(a[k], xm, out.lambda[k]));
    out.iterates.push_back(x);
  }

  Scalar cycle = out.lambda[0] * out.lambda[1] * out.lambda[2] * out.lambda[3];
  out.closed_form_matches = true;
  Scalar cycle_pow = one;
  for (std::size_t n = 0; n < out.iterates.size(); ++n) {
    const int k = static_cast<int>(n % 4);
    if (k == 0 && n > 0) cycle_pow *= cycle;
    Scalar partial = one;
    for (int j = 0; j < k; ++j) partial *= out.lambda[j];
    TriPt expected{corners[k].x, corners[k].y, cycle_pow * partial * cfg.z0};
    const TriPt& got = out.iterates[n];
    bool same = mode == Mode::exact
                    ? got == expected
                    : std::abs((got.x - expected.x).to_double()) <= 1e-12 &&
                          std::abs((got.y - expected.y).to_double()) <= 1e-12 &&
                          std::abs((got.z - expected.z).to_double()) <= 1e-12 * cfg.z0.to_double();
    out.closed_form_matches = out.closed_form_matches && same;
  }
  out.separator = separator_check(a, Subspace::upper_triangular);
  return out;
}

// ---------------------------------------------------------------------------

SymSpiralConfig SymSpiralConfig::standard(double xi3) {
  return {DiagonalData::standard(Mode::floating), Scalar::from_double(xi3)};
}

std::pair<Scalar, Scalar> sym_offsets(const DiagonalData& d, const Scalar& xi3, bool plus) {
  const Mode mode = xi3.mode();
  const Scalar& a3 = d.alpha[3];
  Scalar h = d.y1 + d.alpha[0] - d.y2;
  Scalar disc = a3 * a3 - Scalar::of(mode, 4) * a3 * xi3 * xi3 / h;
  if (disc.sign() < 0) throw Error("xi3 too large: xi1 is not real");
  Scalar root = sqrt(disc);
  Scalar xi1 = (plus ? -a3 + root : -a3 - root) / Scalar::of(mode, 2);
  Scalar xi2 = -xi1 * h / a3;
  return {xi1, xi2};
}

SymSpiralResult sym_spiral(const SymSpiralConfig& cfg, int n_iters) {
  if (cfg.xi3.is_exact() || cfg.diag.x1.is_exact())
    throw Error("symmetric spiral requires float mode (square roots appear in xi1)");
  if (n_iters < 0) throw Error("n_iters must be nonnegative");
  cfg.diag.validate();
  if (cfg.xi3.sign() <= 0) throw Error("symmetric spiral needs xi3 > 0");
  const Scalar zero = Scalar::from_double(0), one = Scalar::from_double(1);

  SymSpiralResult out;
  out.lambda = spiral_lambdas(cfg.diag);
  out.xi3 = cfg.xi3;
  std::tie(out.xi1, out.xi2) = sym_offsets(cfg.diag, cfg.xi3, true);

  auto corners = cfg.diag.corners();
  auto outer = cfg.diag.outer();
  std::array<Mat2, 4> a;
  for (int i = 0; i < 4; ++i) a[i] = embed(SymPt{outer[i].x, outer[i].y, zero});
  const Scalar bound =
      (one + out.lambda[0] * out.lambda[1] * out.lambda[2] * out.lambda[3]) * Scalar::from_double(0.5);

  SymPt y{corners[0].x + out.xi1, corners[0].y + out.xi2, cfg.xi3};
  for (int idx : {0, 3}) {
    Mat2 d = embed(y) - a[idx];
    if (std::abs(det(d).to_double()) > cfg.tol * frobenius_sq(d).to_double())
      throw Error("starting point is not rank-one connected to A_0 and A_3");
  }
  out.iterates.push_back(y);

  for (int n = 0; n < n_iters; ++n) {
    SymCycle cycle;
    cycle.start = y;
    Mat2 b = embed(y);
    for (int i = 0; i < 4; ++i) {
      const Mat2& ai = a[i];
      const Mat2& next = a[(i + 1) % 4];
      Scalar pivot = det(ai - next), end = det(b - next);
      if (end.is_zero() || end.sign() == pivot.sign()) throw Error("xi3 too large (epsilon_1 exceeded)");
      Scalar t = crossing_parameter(ai, next, b, 1e-8);
      b = lerp(ai, b, t);
      Mat2 gap = b - next;
      SymQuarterStep q{t, to_sym(b), det(gap), frobenius_sq(gap)};
      if (std::abs(q.det_residual.to_double()) > cfg.tol * q.det_scale.to_double())
        throw Error("quarter step left the rank-one cone of its pivot");
      cycle.quarters[i] = q;
    }
    SymPt b4 = to_sym(b);
    cycle.eta = {b4.x - corners[0].x, b4.y - corners[0].y, b4.z};
    cycle.ratio = cycle.eta.z / y.z;
    cycle.bound = bound;
    if (!(cycle.ratio < bound)) throw Error("xi3 too large (epsilon_2 exceeded)");
    std::tie(cycle.branch_plus, std::ignore) = sym_offsets(cfg.diag, cycle.eta.z, true);
    std::tie(cycle.branch_minus, std::ignore) = sym_offsets(cfg.diag, cycle.eta.z, false);
    cycle.positive_branch =
        (cycle.eta.x - cycle.branch_plus).abs() < (cycle.eta.x - cycle.branch_minus).abs();
    if (!cycle.positive_branch) throw Error("xi3 too large (epsilon_3 exceeded)");
    y = b4;
    out.iterates.push_back(y);
    out.cycles.push_back(cycle);
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<Mat2> FivePointConfig::K() const { return {Mat2::zero(epsilon.mode()), X[0], X[1], X[2], X[3]}; }

T4Witness FivePointConfig::witness() const {
  T4Witness w;
  w.ordering = {0, 1, 2, 3};
  w.P = P[0];
  w.C = C;
  w.mu = mu;
  w.exact = epsilon.is_exact();
  w.cyclic_class = "0-1-2-3";
  return w;
}

LaminateSet FivePointConfig::hull() const {
  LaminateSet s = LaminateSet::from_points(K());
  Mat2 z = Mat2::zero(epsilon.mode());
  for (const auto& x : X) s.segments.push_back({z, x, 1, false});
  s.order = 1;
  return s;
}

FivePointConfig five_point_build(const Scalar& eps) {
  const Mode mode = eps.mode();
  const Scalar zero = Scalar::of(mode, 0), one = Scalar::of(mode, 1), two = Scalar::of(mode, 2);
  if (!(eps > zero && eps < one)) throw Error("epsilon must lie in (0, 1)");
  FivePointConfig c;
  c.epsilon = eps;
  const Scalar e2 = eps * eps;
  c.X = {Mat2{one, zero, zero, zero}, Mat2{zero, zero, zero, one}, Mat2{-eps, -one, -e2, -eps},
         Mat2{-eps, e2, one, -eps}};
  c.mu[0] = (one + two * eps) / (eps * (one - e2));
  c.mu[1] = one + e2 * c.mu[0];
  c.mu[2] = one + ((one + e2) / eps) * c.mu[1];
  c.mu[3] = one + e2 * c.mu[2];
  c.P[0] = Mat2{-eps, zero, one, zero} * (one / (eps * (c.mu[0] - one)));
  c.P[1] = Mat2{zero, zero, one, zero} * (one / (c.mu[0] * eps));
  c.P[2] = Mat2{zero, zero, eps, one} * (one / c.mu[1]);
  c.P[3] = Mat2{-e2, -eps, eps, one} * (one / (c.mu[2] * eps));
  for (int i = 0; i < 4; ++i) c.C[i] = c.P[(i + 1) % 4] - c.P[i];

  FivePointChecks& ch = c.checks;
  ch.mu_consistency = c.mu[0] - (one + c.mu[3] / (eps * (one + e2)));
  const double tol = 1e-10;
  ch.t4 = check_t4_witness(c.X, c.witness(), tol);
  ch.increments_rank_one = true;
  for (const auto& ci : c.C) ch.increments_rank_one = ch.increments_rank_one && rank(ci, tol) == 1;
  bool dets_vanish = true, pairs_separate = true;
  for (int i = 0; i < 4; ++i) {
    ch.det_X[i] = det(c.X[i]);
    dets_vanish = dets_vanish && vanishes(ch.det_X[i], frobenius_sq(c.X[i]), tol);
  }
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      ch.pairwise_det.push_back(det(c.X[i] - c.X[j]));
      pairs_separate = pairs_separate && rank(c.X[i] - c.X[j], tol) == 2;
    }
  // det(s X_i - t X_j) = s^2 det X_i + t^2 det X_j + s t (det(X_i - X_j) - det X_i - det X_j),
  // which is s t det(X_i - X_j) != 0 on (0,1]^2 once det X_i = det X_j = 0.
  ch.lamination_convex = dets_vanish && pairs_separate;

  if (!vanishes(ch.mu_consistency, c.mu[0], tol)) throw Error("mu cascade is inconsistent");
  if (!ch.t4.accepted) throw Error("five-point scaffold fails the T4 equations");
  if (!ch.increments_rank_one) throw Error("five-point increment is not rank-one");
  if (!ch.lamination_convex) throw Error("union of [0, X_i] is not lamination convex");
  return c;
}

Distance five_point_gap(const FivePointConfig& cfg) { return distance_to_set(cfg.P[0], cfg.hull()); }

}  // namespace rohull
