#include "rohull/hulls.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "linalg.hpp"

namespace rohull {

using detail::near_zero;

namespace {

double magnitude(const Mat2& m) { return max_abs(m).to_double(); }

bool same_point(const Mat2& a, const Mat2& b) {
  if (a.a11.is_exact()) return a == b;
  return magnitude(a - b) <= 1e-12 * std::max({1.0, magnitude(a), magnitude(b)});
}

struct UnitRoots {
  bool identically_zero = false;
  std::vector<Scalar> roots;
  int irrational = 0;
};

// Roots in [0, 1] of c0 + c1 t + c2 t^2. `scale` is the magnitude the
// coefficients are compared against in float mode.
UnitRoots unit_interval_roots(const Scalar& c0, const Scalar& c1, const Scalar& c2, double scale,
                              double tol) {
  UnitRoots out;
  const Mode mode = c0.mode();
  const Scalar zero = Scalar::of(mode, 0), one = Scalar::of(mode, 1);
  auto keep = [&](Scalar t) {
    if (!t.is_exact()) {
      double d = t.to_double();
      if (d < -1e-12 || d > 1 + 1e-12) return;
      t = Scalar::from_double(std::clamp(d, 0.0, 1.0));
    } else if (t < zero || t > one) {
      return;
    }
    for (const auto& r : out.roots)
      if (r == t) return;
    out.roots.push_back(t);
  };
  auto small = [&](const Scalar& v) { return near_zero(v, scale, tol); };

  if (small(c2)) {
    if (small(c1)) {
      out.identically_zero = small(c0);
      return out;
    }
    keep(-c0 / c1);
    return out;
  }
  Scalar disc = c1 * c1 - Scalar::of(mode, 4) * c2 * c0;
  if (mode == Mode::exact) {
    if (disc.sign() < 0) return out;
    if (auto sq = exact_sqrt(disc)) {
      keep((-c1 - *sq) / (Scalar(2) * c2));
      keep((-c1 + *sq) / (Scalar(2) * c2));
      return out;
    }
    double s = std::sqrt(disc.to_double());
    double b = c1.to_double(), a = c2.to_double();
    for (double t : {(-b - s) / (2 * a), (-b + s) / (2 * a)})
      if (t >= 0 && t <= 1) ++out.irrational;
    return out;
  }
  double d = disc.to_double();
  double a = c2.to_double(), b = c1.to_double();
  if (d < 0) {
    if (d < -tol * scale * scale) return out;
    d = 0;
  }
  double s = std::sqrt(d);
  // Stable pair of roots.
  double q = -0.5 * (b + std::copysign(s, b));
  std::vector<double> ts;
  if (q != 0)
    ts = {q / a, c0.to_double() / q};
  else
    ts = {0.0};
  for (double t : ts) keep(Scalar::from_double(t));
  return out;
}

Scalar unit_sample(Mode mode, int k, int n) {
  if (mode == Mode::exact) return Scalar::ratio(k, n - 1);
  return Scalar::from_double(static_cast<double>(k) / static_cast<double>(n - 1));
}

bool segment_within(const RankOneSegment& inner, const RankOneSegment& outer, double tol) {
  return on_segment(inner.a, outer.a, outer.b, tol) && on_segment(inner.b, outer.a, outer.b, tol);
}

// Appends `seg` unless an existing segment already covers it; drops existing
// segments that `seg` covers.
void add_segment(std::vector<RankOneSegment>& segments, RankOneSegment seg, double tol) {
  if (same_point(seg.a, seg.b)) return;
  for (const auto& s : segments)
    if (segment_within(seg, s, tol)) return;
  std::erase_if(segments, [&](const RankOneSegment& s) { return segment_within(s, seg, tol); });
  segments.push_back(std::move(seg));
}

// Rank-one connections between point c and segment [a, b].
void connect_point_segment(const Mat2& c, const RankOneSegment& seg, int generation, bool sampled_source,
                           int samples, double tol, std::vector<RankOneSegment>& found, int& irrational) {
  Mat2 d0 = seg.a - c, d1 = seg.b - seg.a;
  double scale = frobenius_sq(d0).to_double() + frobenius_sq(d1).to_double();
  UnitRoots roots = unit_interval_roots(det(d0), mixed_det(d0, d1), det(d1), scale, tol);
  irrational += roots.irrational;
  const Mode mode = c.a11.mode();
  if (roots.identically_zero) {
    if (sampled_source) {
      // The whole segment is rank-one connected to c; its two end rays span the fan.
      found.push_back({c, seg.a, generation, true});
      found.push_back({c, seg.b, generation, true});
      return;
    }
    for (int k = 0; k < samples; ++k) {
      bool end = k == 0 || k == samples - 1;
      found.push_back({c, lerp(seg.a, seg.b, unit_sample(mode, k, samples)), generation, !end});
    }
    return;
  }
  for (const auto& t : roots.roots) found.push_back({c, lerp(seg.a, seg.b, t), generation, sampled_source});
}

}  // namespace

LaminateSet LaminateSet::from_points(std::vector<Mat2> pts) {
  LaminateSet s;
  for (auto& p : pts) {
    bool dup = std::any_of(s.points.begin(), s.points.end(), [&](const Mat2& q) { return same_point(p, q); });
    if (!dup) s.points.push_back(std::move(p));
  }
  return s;
}

Mode LaminateSet::mode() const {
  if (!points.empty()) return points.front().mode();
  if (!segments.empty()) return segments.front().a.mode();
  return Mode::exact;
}

bool on_segment(const Mat2& x, const Mat2& a, const Mat2& b, double tol) {
  (void)tol;
  if (same_point(a, b)) return same_point(x, a);
  Mat2 d = b - a;
  Scalar len = frobenius_sq(d);
  Scalar t = dot(x - a, d) / len;
  Mat2 off = x - a - d * t;
  if (t.is_exact()) return t.sign() >= 0 && t <= Scalar(1) && off.is_zero();
  double td = t.to_double();
  double scale = std::max({1.0, magnitude(a), magnitude(b)});
  return td >= -1e-12 && td <= 1 + 1e-12 && magnitude(off) <= 1e-12 * scale;
}

bool LaminateSet::contains(const Mat2& x, double tol) const {
  for (const auto& p : points)
    if (same_point(x, p)) return true;
  for (const auto& s : segments)
    if (on_segment(x, s.a, s.b, tol)) return true;
  return false;
}

LaminateSet lamination_step(const LaminateSet& s, double tol, int samples) {
  if (samples < 2) throw Error("samples_per_segment must be at least 2");
  LaminateSet out;
  out.points = s.points;
  out.order = s.order + 1;
  out.irrational_roots_skipped = s.irrational_roots_skipped;
  for (const auto& seg : s.segments) add_segment(out.segments, seg, tol);
  const int gen = s.order + 1;
  const Mode mode = s.mode();

  std::vector<RankOneSegment> found;
  int irrational = 0;
  for (std::size_t i = 0; i < s.points.size(); ++i)
    for (std::size_t j = i + 1; j < s.points.size(); ++j) {
      Mat2 d = s.points[i] - s.points[j];
      if (!same_point(s.points[i], s.points[j]) && det_vanishes(d, tol))
        found.push_back({s.points[i], s.points[j], gen, false});
    }
  for (const auto& c : s.points)
    for (const auto& seg : s.segments)
      connect_point_segment(c, seg, gen, seg.approximate, samples, tol, found, irrational);
  for (std::size_t i = 0; i < s.segments.size(); ++i)
    for (std::size_t j = 0; j < s.segments.size(); ++j) {
      if (i == j) continue;
      const auto& slice_axis = s.segments[i];
      for (int k = 0; k < samples; ++k) {
        Mat2 u = lerp(slice_axis.a, slice_axis.b, unit_sample(mode, k, samples));
        connect_point_segment(u, s.segments[j], gen, true, samples, tol, found, irrational);
      }
    }
  // Sampled slices of exact segments remain approximate even when both ends are exact.
  for (auto& f : found) add_segment(out.segments, std::move(f), tol);
  if (mode == Mode::exact) out.irrational_roots_skipped += irrational;
  return out;
}

LaminateSet l1_hull(std::span<const Mat2> k, double tol) {
  LaminateSet s = LaminateSet::from_points({k.begin(), k.end()});
  LaminateSet out = s;
  out.order = 1;
  for (std::size_t i = 0; i < s.points.size(); ++i)
    for (std::size_t j = i + 1; j < s.points.size(); ++j)
      if (det_vanishes(s.points[i] - s.points[j], tol))
        add_segment(out.segments, {s.points[i], s.points[j], 1, false}, tol);
  return out;
}

LaminateSet l2_hull(std::span<const Mat2> k, double tol, int samples) {
  LaminateSet s = LaminateSet::from_points({k.begin(), k.end()});
  return lamination_step(lamination_step(s, tol, samples), tol, samples);
}

namespace {

// An element of a laminate set: base + [0,1] * dir (dir = 0 for a point).
struct Element {
  Mat2 base, dir;
  Mat2 end() const { return base + dir; }
};

std::vector<Element> elements_of(const LaminateSet& s) {
  std::vector<Element> out;
  for (const auto& p : s.points) out.push_back({p, p - p});
  for (const auto& g : s.segments) out.push_back({g.a, g.b - g.a});
  return out;
}

// Lower/upper bounds on a scalar parameter, either possibly unbounded.
struct Interval {
  std::optional<Scalar> lo, hi;
  bool empty = false;
};

// Restricts `iv` by alpha + beta * tau >= 0.
void restrict(Interval& iv, const Scalar& alpha, const Scalar& beta, double scale) {
  if (iv.empty) return;
  if (near_zero(beta, scale)) {
    if (alpha.sign() < 0 && !near_zero(alpha, scale)) iv.empty = true;
    return;
  }
  Scalar bound = -alpha / beta;
  if (beta.sign() > 0) {
    if (!iv.lo || bound > *iv.lo) iv.lo = bound;
  } else {
    if (!iv.hi || bound < *iv.hi) iv.hi = bound;
  }
  if (iv.lo && iv.hi && *iv.lo > *iv.hi) {
    if (iv.lo->is_exact() || *iv.lo - *iv.hi > Scalar::from_double(1e-12 * std::max(scale, 1.0)))
      iv.empty = true;
    else
      iv.hi = iv.lo;
  }
}

// Whether q0 + q1 t + q2 t^2 vanishes somewhere on the interval.
bool has_root(const Scalar& q0, const Scalar& q1, const Scalar& q2, const Interval& iv, double scale,
              double eps) {
  if (iv.empty) return false;
  const Mode mode = q0.mode();
  auto value = [&](const Scalar& t) { return q0 + t * (q1 + t * q2); };
  bool nonpos = false, nonneg = false;
  auto small = [&](const Scalar& v) { return near_zero(v, scale, eps); };
  auto note = [&](const Scalar& v) {
    if (small(v)) nonpos = nonneg = true;
    if (v.sign() <= 0) nonpos = true;
    if (v.sign() >= 0) nonneg = true;
  };
  auto note_limit = [&](int direction) {  // sign as t -> direction * infinity
    int s = 0;
    if (!small(q2))
      s = q2.sign();
    else if (!small(q1))
      s = q1.sign() * direction;
    else
      s = q0.sign();
    if (s <= 0) nonpos = true;
    if (s >= 0) nonneg = true;
  };
  if (small(q0) && small(q1) && small(q2)) return true;
  iv.lo ? note(value(*iv.lo)) : note_limit(-1);
  iv.hi ? note(value(*iv.hi)) : note_limit(+1);
  if (!small(q2)) {
    Scalar vertex = -q1 / (Scalar::of(mode, 2) * q2);
    bool inside = (!iv.lo || vertex >= *iv.lo) && (!iv.hi || vertex <= *iv.hi);
    if (inside) note(value(vertex));
  }
  return nonpos && nonneg;
}

bool inside_box(const Mat2& x, const Element& e1, const Element& e2) {
  auto ex = x.entries();
  std::array<std::array<Scalar, 4>, 4> corners = {e1.base.entries(), e1.end().entries(), e2.base.entries(),
                                                  e2.end().entries()};
  for (int i = 0; i < 4; ++i) {
    Scalar lo = corners[0][i], hi = corners[0][i];
    for (int c = 1; c < 4; ++c) {
      if (corners[c][i] < lo) lo = corners[c][i];
      if (corners[c][i] > hi) hi = corners[c][i];
    }
    if (ex[i].is_exact()) {
      if (ex[i] < lo || ex[i] > hi) return false;
    } else {
      double pad = 1e-12 * std::max({1.0, std::abs(lo.to_double()), std::abs(hi.to_double())});
      if (ex[i].to_double() < lo.to_double() - pad || ex[i].to_double() > hi.to_double() + pad) return false;
    }
  }
  return true;
}

// x in [u, v] with u in e1, v in e2, rank(u - v) <= 1, given x not in e1 or e2.
bool joins(const Mat2& x, const Element& e1, const Element& e2, double tol) {
  if (!inside_box(x, e1, e2)) return false;
  const Mode mode = x.a11.mode();
  const Scalar zero = Scalar::of(mode, 0);
  const Mat2 w = x - e1.base;  // x - U0
  const bool has_c = !e1.dir.is_zero(), has_b = !e2.dir.is_zero();
  // Unknowns in order: r, [c], [b].  x - V0 = -r w + c D1 + b D2.
  std::vector<Mat2> columns = {-w};
  if (has_c) columns.push_back(e1.dir);
  if (has_b) columns.push_back(e2.dir);
  const Mat2 rhs = x - e2.base;
  double scale = std::max({magnitude(w), magnitude(e1.dir), magnitude(e2.dir), magnitude(rhs)});

  std::vector<std::vector<Scalar>> a(4, std::vector<Scalar>(columns.size()));
  std::vector<Scalar> h(4);
  auto rhs_e = rhs.entries();
  for (int i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < columns.size(); ++j) a[i][j] = columns[j].entries()[i];
    h[i] = rhs_e[i];
  }
  auto sol = detail::solve_affine(a, h, mode, scale);
  if (!sol) return false;

  if (sol->nullspace.size() >= 2) {
    // Everything lies on the line through x with direction w.
    if (!det_vanishes(w, tol)) return false;
    Scalar len = frobenius_sq(w);
    bool below = false, above = false;
    for (const Mat2& p : {e1.base, e1.end(), e2.base, e2.end()}) {
      Scalar alpha = dot(p - x, w) / len;
      if (alpha.sign() <= 0) below = true;
      if (alpha.sign() >= 0) above = true;
    }
    return below && above;
  }

  // Variables affine in tau: var = p + tau * n.
  const std::size_t nvars = columns.size();
  std::vector<Scalar> p = sol->particular;
  std::vector<Scalar> n(nvars, zero);
  if (!sol->nullspace.empty()) n = sol->nullspace[0];
  auto pick = [&](std::size_t idx) -> std::pair<Scalar, Scalar> { return {p[idx], n[idx]}; };
  auto [r0, r1] = pick(0);
  Scalar c0 = zero, c1 = zero, b0 = zero, b1 = zero;
  std::size_t next = 1;
  if (has_c) std::tie(c0, c1) = pick(next++);
  if (has_b) std::tie(b0, b1) = pick(next++);
  const Scalar one = Scalar::of(mode, 1);

  Interval iv;
  restrict(iv, r0, r1, 1.0);            // r >= 0
  restrict(iv, c0, c1, 1.0);            // c >= 0
  restrict(iv, r0 - c0, r1 - c1, 1.0);  // c <= r
  restrict(iv, b0, b1, 1.0);            // b >= 0
  restrict(iv, one - b0, -b1, 1.0);     // b <= 1
  if (iv.empty) return false;

  // det(r w - c D1) along tau: quadratic with coefficients from the
  // bilinear expansion of det.
  Mat2 m0 = w * r0 - e1.dir * c0;
  Mat2 m1 = w * r1 - e1.dir * c1;
  Scalar q0 = det(m0), q1 = mixed_det(m0, m1), q2 = det(m1);
  double qscale = frobenius_sq(m0).to_double() + frobenius_sq(m1).to_double();
  if (sol->nullspace.empty()) {
    if (mode == Mode::exact) return q0.is_zero();
    return std::abs(q0.to_double()) <= tol * std::max(qscale, 1e-300);
  }
  return has_root(q0, q1, q2, iv, qscale, tol);
}

}  // namespace

bool step_contains(const LaminateSet& s, const Mat2& x, double tol) {
  if (s.contains(x, tol)) return true;
  auto elems = elements_of(s);
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = 0; j < elems.size(); ++j)
      if (i != j && joins(x, elems[i], elems[j], tol)) return true;
  return false;
}

bool l2_contains(std::span<const Mat2> k, const Mat2& x, double tol) {
  return step_contains(l1_hull(k, tol), x, tol);
}

// ---------------------------------------------------------------------------
// Distances

Scalar Distance::value() const {
  if (exact)
    if (auto r = exact_sqrt(squared)) return *r;
  return Scalar::from_double(std::sqrt(std::max(0.0, squared.to_double())));
}

bool Distance::value_is_exact() const { return exact && exact_sqrt(squared).has_value(); }

std::pair<double, double> Distance::enclosure() const {
  double v = std::sqrt(std::max(0.0, squared.to_double()));
  double pad = exact ? 0.0 : 1e-12 * std::max(v, 1.0);
  double lo = std::nextafter(std::nextafter(v - pad, 0.0), 0.0);
  double hi = std::nextafter(std::nextafter(v + pad, INFINITY), INFINITY);
  return {std::max(0.0, lo), hi};
}

Scalar point_segment_distance_sq(const Mat2& p, const Mat2& a, const Mat2& b) {
  Mat2 d = b - a;
  Scalar len = frobenius_sq(d);
  if (len.is_zero()) return frobenius_sq(p - a);
  Scalar t = dot(p - a, d) / len;
  Scalar zero = like(t, 0), one = like(t, 1);
  if (t < zero) t = zero;
  if (t > one) t = one;
  return frobenius_sq(p - a - d * t);
}

Scalar segment_segment_distance_sq(const Mat2& a, const Mat2& b, const Mat2& c, const Mat2& d) {
  Mat2 u = b - a, v = d - c, w = a - c;
  // Minimise |w + s u - t v|^2 over [0,1]^2; convex, so an interior
  // stationary point is the minimum, otherwise the minimum is on an edge.
  Scalar uu = dot(u, u), vv = dot(v, v), uv = dot(u, v), wu = dot(w, u), wv = dot(w, v);
  Scalar gram = uu * vv - uv * uv;
  const Scalar zero = like(uu, 0), one = like(uu, 1);
  if (!gram.is_zero() && (gram.is_exact() || gram.to_double() > 1e-14 * (uu * vv).to_double())) {
    Scalar s = (uv * wv - vv * wu) / gram;
    Scalar t = (uu * wv - uv * wu) / gram;
    if (s >= zero && s <= one && t >= zero && t <= one) return frobenius_sq(w + u * s - v * t);
  }
  Scalar best = point_segment_distance_sq(a, c, d);
  best = min(best, point_segment_distance_sq(b, c, d));
  best = min(best, point_segment_distance_sq(c, a, b));
  best = min(best, point_segment_distance_sq(d, a, b));
  return best;
}

namespace {

// q(t) = c0 + c1 t + c2 t^2 on [lo, hi].
struct Piece {
  Scalar lo, hi, c0, c1, c2;
  Scalar at(const Scalar& t) const { return c0 + t * (c1 + t * c2); }
};

// Squared distance from a + t d (t in [0,1]) to the point e, as a quadratic.
Piece point_piece(const Mat2& a, const Mat2& d, const Mat2& e, const Scalar& lo, const Scalar& hi) {
  Mat2 r = a - e;
  return {lo, hi, frobenius_sq(r), Scalar(like(lo, 2)) * dot(r, d), frobenius_sq(d)};
}

// Squared distance from a + t d to the segment [e, e + f] as <= 3 quadratic
// pieces over [0, 1].
std::vector<Piece> segment_pieces(const Mat2& a, const Mat2& d, const Mat2& e, const Mat2& f) {
  const Scalar zero = like(a.a11, 0), one = like(a.a11, 1);
  Scalar ff = frobenius_sq(f);
  if (ff.is_zero()) return {point_piece(a, d, e, zero, one)};
  Mat2 r = a - e;
  // projection parameter s*(t) = (rf + t df) / ff
  Scalar rf = dot(r, f), df = dot(d, f);
  std::vector<Scalar> cuts = {zero, one};
  if (!df.is_zero()) {
    for (const Scalar& target : {zero, ff}) {
      Scalar t = (target - rf) / df;
      if (t > zero && t < one) cuts.push_back(t);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<Piece> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Scalar &lo = cuts[i], &hi = cuts[i + 1];
    Scalar mid = (lo + hi) / like(lo, 2);
    Scalar s = (rf + mid * df) / ff;
    if (s <= zero) {
      out.push_back(point_piece(a, d, e, lo, hi));
    } else if (s >= one) {
      out.push_back(point_piece(a, d, e + f, lo, hi));
    } else {
      // |r + t d|^2 - (rf + t df)^2 / ff
      Piece p = point_piece(a, d, e, lo, hi);
      p.c0 -= rf * rf / ff;
      p.c1 -= like(lo, 2) * rf * df / ff;
      p.c2 -= df * df / ff;
      out.push_back(p);
    }
  }
  return out;
}

Scalar min_sq_to_set(const Mat2& x, const std::vector<Element>& targets) {
  std::optional<Scalar> best;
  for (const auto& e : targets) {
    Scalar d = e.dir.is_zero() ? frobenius_sq(x - e.base) : point_segment_distance_sq(x, e.base, e.end());
    if (!best || d < *best) best = d;
    if (best->is_zero()) break;
  }
  return *best;
}

double min_sq_to_set(double t, const std::vector<std::vector<Piece>>& pieces) {
  double best = INFINITY;
  for (const auto& elem : pieces)
    for (const auto& p : elem)
      if (t >= p.lo.to_double() - 1e-15 && t <= p.hi.to_double() + 1e-15) {
        double c0 = p.c0.to_double(), c1 = p.c1.to_double(), c2 = p.c2.to_double();
        best = std::min(best, c0 + t * (c1 + t * c2));
      }
  return best;
}

// sup over the segment a + t d (t in [0,1]) of the squared distance to the
// targets. The distance to each target is convex in t, so the sup of their
// minimum is attained at an end, a piece boundary, or where two pieces cross.
Distance segment_sup(const Mat2& a, const Mat2& d, const std::vector<Element>& targets) {
  std::vector<std::vector<Piece>> pieces;
  for (const auto& e : targets) pieces.push_back(segment_pieces(a, d, e.base, e.dir));
  const Scalar zero = like(a.a11, 0), one = like(a.a11, 1);
  std::vector<Scalar> candidates = {zero, one};
  std::vector<double> float_candidates;
  for (const auto& elem : pieces)
    for (const auto& p : elem) candidates.push_back(p.lo);
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (std::size_t j = i + 1; j < pieces.size(); ++j)
      for (const auto& p : pieces[i])
        for (const auto& q : pieces[j]) {
          Scalar lo = max(p.lo, q.lo), hi = min(p.hi, q.hi);
          if (lo > hi) continue;
          Scalar c0 = p.c0 - q.c0, c1 = p.c1 - q.c1, c2 = p.c2 - q.c2;
          auto in = [&](const Scalar& t) { return t >= lo && t <= hi; };
          if (c2.is_zero() || (!c2.is_exact() && std::abs(c2.to_double()) < 1e-15)) {
            if (!c1.is_zero()) {
              Scalar t = -c0 / c1;
              if (in(t)) candidates.push_back(t);
            }
            continue;
          }
          Scalar disc = c1 * c1 - like(c0, 4) * c0 * c2;
          if (disc.sign() < 0) continue;
          if (auto sq = disc.is_exact() ? exact_sqrt(disc) : std::optional<Scalar>(sqrt(disc))) {
            for (const Scalar& t : {(-c1 - *sq) / (like(c2, 2) * c2), (-c1 + *sq) / (like(c2, 2) * c2)})
              if (in(t)) candidates.push_back(t);
          } else {
            double s = std::sqrt(disc.to_double());
            for (double t :
                 {(-c1.to_double() - s) / (2 * c2.to_double()), (-c1.to_double() + s) / (2 * c2.to_double())})
              if (t >= lo.to_double() && t <= hi.to_double()) float_candidates.push_back(t);
          }
        }
  Scalar best = zero;
  for (const auto& t : candidates) best = max(best, min_sq_to_set(a + d * t, targets));
  Distance out{best, true};
  double best_float = best.to_double();
  for (double t : float_candidates) {
    double v = min_sq_to_set(t, pieces);
    if (v > best_float * (1 + 1e-12) + 1e-300) {
      best_float = v;
      out = {Scalar::from_double(v), false};
    }
  }
  return out;
}

Distance larger(const Distance& a, const Distance& b) {
  double x = a.squared.to_double(), y = b.squared.to_double();
  if (a.exact && b.exact && a.squared.mode() == b.squared.mode()) return a.squared < b.squared ? b : a;
  return x < y ? b : a;
}

}  // namespace

Distance distance_to_set(const Mat2& x, const LaminateSet& s2) {
  if (s2.empty()) throw Error("Hausdorff undefined for empty set");
  return {min_sq_to_set(x, elements_of(s2)), true};
}

Distance directed_hausdorff(const LaminateSet& s1, const LaminateSet& s2) {
  if (s1.empty() || s2.empty()) throw Error("Hausdorff undefined for empty set");
  auto targets = elements_of(s2);
  std::optional<Distance> best;
  for (const auto& e : elements_of(s1)) {
    Distance d = e.dir.is_zero() ? Distance{min_sq_to_set(e.base, targets), true}
                                 : segment_sup(e.base, e.dir, targets);
    best = best ? larger(*best, d) : d;
  }
  return *best;
}

Distance hausdorff(const LaminateSet& s1, const LaminateSet& s2) {
  return larger(directed_hausdorff(s1, s2), directed_hausdorff(s2, s1));
}

Distance set_distance(const LaminateSet& s1, const LaminateSet& s2) {
  if (s1.empty() || s2.empty()) throw Error("distance undefined for empty set");
  std::optional<Scalar> best;
  for (const auto& e : elements_of(s1))
    for (const auto& f : elements_of(s2)) {
      Scalar d = segment_segment_distance_sq(e.base, e.end(), f.base, f.end());
      if (!best || d < *best) best = d;
    }
  return {*best, true};
}

// ---------------------------------------------------------------------------

SeparatorWitness separator_check(std::span<const Mat2> boundary, Subspace subspace) {
  if (subspace == Subspace::diagonal)
    throw Error("separator_check needs a three-dimensional subspace (tri or sym)");
  SeparatorWitness w;
  w.subspace = subspace;
  for (const auto& f : boundary) {
    auto c = coordinates(f, subspace);
    if (!c[2].is_zero()) throw Error("separator boundary point has z != 0");
    w.boundary_points.push_back(f);
  }
  for (std::size_t i = 0; i < boundary.size(); ++i)
    for (std::size_t j = i + 1; j < boundary.size(); ++j) {
      Scalar d = det(boundary[i] - boundary[j]);
      if (d.is_zero() || det_vanishes(boundary[i] - boundary[j]))
        throw Error("separator fails: rank-one connection in boundary set (points " + std::to_string(i) +
                    ", " + std::to_string(j) + ")");
      w.pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
      w.pairwise_dets.push_back(d);
    }
  return w;
}

}  // namespace rohull
