#include "rohull/pchull.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace rohull {

std::string_view to_string(PlaneKind k) { return k == PlaneKind::left ? "left" : "right"; }

namespace {

Scalar norm_sq(const std::vector<Scalar>& v) {
  Scalar s = Scalar::of(v.front().mode(), 0);
  for (const auto& x : v) s += x * x;
  return s;
}

bool negligible(const Scalar& v, double scale, double tol) {
  if (v.is_exact()) return v.is_zero();
  return std::abs(v.to_double()) <= tol * std::max(1.0, scale);
}

using Pt2 = std::array<Scalar, 2>;

Scalar cross(const Pt2& o, const Pt2& a, const Pt2& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

int orientation(const Pt2& o, const Pt2& a, const Pt2& b, double tol) {
  Scalar c = cross(o, a, b);
  if (c.is_exact()) return c.sign();
  double scale = 0;
  for (const Pt2* p : {&o, &a, &b})
    scale = std::max({scale, std::abs((*p)[0].to_double()), std::abs((*p)[1].to_double())});
  return negligible(c, scale * scale, tol) ? 0 : c.sign();
}

bool same2(const Pt2& a, const Pt2& b, double tol) {
  if (a[0].is_exact()) return a == b;
  double scale = std::max({1.0, std::abs(a[0].to_double()), std::abs(a[1].to_double())});
  return std::abs((a[0] - b[0]).to_double()) <= tol * scale &&
         std::abs((a[1] - b[1]).to_double()) <= tol * scale;
}

bool lex_less(const Pt2& a, const Pt2& b) { return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]); }

// Whether p lies in the closed segment [a, b] of the plane.
bool in_segment2(const Pt2& p, const Pt2& a, const Pt2& b, double tol) {
  if (orientation(a, b, p, tol) != 0) return false;
  Scalar dot = (p[0] - a[0]) * (b[0] - a[0]) + (p[1] - a[1]) * (b[1] - a[1]);
  Scalar len = (b[0] - a[0]) * (b[0] - a[0]) + (b[1] - a[1]) * (b[1] - a[1]);
  if (dot.is_exact()) return dot.sign() >= 0 && dot <= len;
  return dot.to_double() >= -tol * len.to_double() && dot.to_double() <= (1 + tol) * len.to_double();
}

bool in_polygon(const Pt2& p, const std::vector<Pt2>& poly, double tol) {
  if (poly.size() == 1) return same2(p, poly[0], tol);
  if (poly.size() == 2) return in_segment2(p, poly[0], poly[1], tol);
  for (std::size_t i = 0; i < poly.size(); ++i)
    if (orientation(poly[i], poly[(i + 1) % poly.size()], p, tol) < 0) return false;
  return true;
}

Pt2 to_pt2(const std::vector<Scalar>& c) {
  if (c.size() != 2) throw Error("plane coordinates are not two-dimensional");
  return {c[0], c[1]};
}

}  // namespace

std::vector<Scalar> RankOnePlane::coordinates(const Matrix& m) const {
  Matrix d = m - basepoint;
  Scalar len = norm_sq(generator);
  std::vector<Scalar> out;
  if (kind == PlaneKind::left) {
    for (int i = 0; i < d.rows(); ++i) {
      Scalar s = like(len, 0);
      for (int j = 0; j < d.cols(); ++j) s += d(i, j) * generator[j];
      out.push_back(s / len);
    }
  } else {
    for (int j = 0; j < d.cols(); ++j) {
      Scalar s = like(len, 0);
      for (int i = 0; i < d.rows(); ++i) s += d(i, j) * generator[i];
      out.push_back(s / len);
    }
  }
  return out;
}

Matrix RankOnePlane::point(const std::vector<Scalar>& coords) const {
  if (static_cast<int>(coords.size()) != dimension()) throw Error("wrong number of plane coordinates");
  return basepoint + (kind == PlaneKind::left ? outer(coords, generator) : outer(generator, coords));
}

bool RankOnePlane::contains(const Matrix& m, double tol) const {
  Matrix off = m - point(coordinates(m));
  if (off.mode() == Mode::exact) return off.is_zero();
  double scale = std::max({1.0, m.max_abs().to_double(), basepoint.max_abs().to_double()});
  return off.max_abs().to_double() <= tol * scale;
}

PlanePair plane_pair(const Matrix& x0, const Matrix& y0, double tol) {
  Matrix d = x0 - y0;
  if (d.is_zero() || !rank_at_most_one(d, tol)) throw Error("difference not rank-one");
  int pi = 0, pj = 0;
  for (int i = 0; i < d.rows(); ++i)
    for (int j = 0; j < d.cols(); ++j)
      if (d(i, j).abs() > d(pi, pj).abs()) {
        pi = i;
        pj = j;
      }
  // d = v0 w0^T with v0 a column of d and w0 the matching row over the pivot.
  std::vector<Scalar> v0, w0;
  for (int i = 0; i < d.rows(); ++i) v0.push_back(d(i, pj));
  for (int j = 0; j < d.cols(); ++j) w0.push_back(d(pi, j) / d(pi, pj));
  // Sign convention: the first nonzero entry of v0 is positive.
  if (std::find_if(v0.begin(), v0.end(), [](const Scalar& v) { return !v.is_zero(); })->sign() < 0) {
    for (auto& v : v0) v = -v;
    for (auto& w : w0) w = -w;
  }
  PlanePair pp;
  pp.intersection_direction = outer(v0, w0);
  if (d.mode() == Mode::floating) {
    for (auto* v : {&v0, &w0}) {
      Scalar n = sqrt(norm_sq(*v));
      for (auto& x : *v) x /= n;
    }
  }
  pp.p1 = {y0, PlaneKind::left, w0};
  pp.p2 = {y0, PlaneKind::right, v0};
  return pp;
}

DetCheckReport pairwise_det_check(std::span<const Mat2> k, double tol) {
  DetCheckReport r;
  for (std::size_t i = 0; i < k.size(); ++i)
    for (std::size_t j = i + 1; j < k.size(); ++j) {
      Mat2 diff = k[i] - k[j];
      Scalar d = det(diff);
      r.pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
      r.dets.push_back(d);
      bool vanishes = det_vanishes(diff, tol);
      if (vanishes && !diff.is_zero())
        r.rank_one_pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
      if (!vanishes && d.sign() < 0 && r.pass) {
        r.pass = false;
        r.violating_pair = {{static_cast<int>(i), static_cast<int>(j)}};
      }
    }
  return r;
}

std::vector<int> convex_hull_2d(const std::vector<std::array<Scalar, 2>>& pts) {
  const double tol = 1e-12;
  std::vector<int> idx;
  for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
    bool dup = false;
    for (int j : idx) dup = dup || same2(pts[i], pts[j], tol);
    if (!dup) idx.push_back(i);
  }
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return lex_less(pts[a], pts[b]); });
  if (idx.size() <= 2) return idx;
  std::vector<int> hull(2 * idx.size());
  std::size_t h = 0;
  for (int i : idx) {  // lower chain
    while (h >= 2 && orientation(pts[hull[h - 2]], pts[hull[h - 1]], pts[i], tol) <= 0) --h;
    hull[h++] = i;
  }
  for (std::size_t t = idx.size() - 1, lower = h + 1; t-- > 0;) {  // upper chain
    int i = idx[t];
    while (h >= lower && orientation(pts[hull[h - 2]], pts[hull[h - 1]], pts[i], tol) <= 0) --h;
    hull[h++] = i;
  }
  hull.resize(h - 1);
  if (hull.size() == 1) hull.push_back(idx.back());  // all points coincide with the ends of a segment
  return hull;
}

bool PlaneHull::contains(const Mat2& x, double tol) const {
  if (!plane.contains(x, tol)) return false;
  std::vector<Pt2> poly(polygon_coords.begin(), polygon_coords.end());
  return in_polygon(to_pt2(plane.coordinates(x)), poly, tol);
}

bool PcHull::contains(const Mat2& x, double tol) const {
  for (const auto& p : planes)
    if (p.contains(x, tol)) return true;
  for (const auto& s : singletons) {
    if (s.a11.is_exact() ? s == x : max_abs(s - x).to_double() <= tol * std::max(1.0, max_abs(s).to_double()))
      return true;
  }
  return false;
}

PcHull pc_hull(std::span<const Mat2> k_in, double tol) {
  // Duplicates carry no information.
  std::vector<Mat2> k;
  for (const auto& m : k_in)
    if (std::none_of(k.begin(), k.end(), [&](const Mat2& o) { return o == m; })) k.push_back(m);
  auto check = pairwise_det_check(k, tol);
  if (!check.pass) throw Error("det sign condition violated");

  struct Clique {
    RankOnePlane plane;
    std::vector<int> members;
  };
  std::vector<Clique> cliques;
  for (auto [i, j] : check.rank_one_pairs) {
    PlanePair pp = plane_pair(Matrix(k[j]), Matrix(k[i]), tol);
    for (const RankOnePlane* plane : {&pp.p1, &pp.p2}) {
      Clique c{*plane, {}};
      for (int m = 0; m < static_cast<int>(k.size()); ++m)
        if (plane->contains(k[m], 1e-10)) c.members.push_back(m);
      bool seen = std::any_of(cliques.begin(), cliques.end(),
                              [&](const Clique& o) { return o.members == c.members; });
      if (!seen) cliques.push_back(std::move(c));
    }
  }
  auto subset = [](const std::vector<int>& a, const std::vector<int>& b) {
    return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
  };
  PcHull out;
  std::set<int> covered;
  for (const auto& c : cliques) {
    bool dominated = std::any_of(cliques.begin(), cliques.end(),
                                 [&](const Clique& o) { return subset(c.members, o.members); });
    if (dominated) continue;
    PlaneHull ph;
    ph.plane = c.plane;
    ph.members = c.members;
    std::vector<Pt2> coords;
    for (int m : c.members) coords.push_back(to_pt2(c.plane.coordinates(k[m])));
    for (int h : convex_hull_2d(coords)) {
      ph.polygon.push_back(k[c.members[h]]);
      ph.polygon_coords.push_back(coords[h]);
    }
    covered.insert(c.members.begin(), c.members.end());
    out.planes.push_back(std::move(ph));
  }
  for (int m = 0; m < static_cast<int>(k.size()); ++m)
    if (!covered.count(m)) out.singletons.push_back(k[m]);
  return out;
}

Caratheodory caratheodory_decompose(const RankOnePlane& plane, std::span<const Mat2> points,
                                    const Mat2& target, double tol) {
  if (points.empty()) throw Error("caratheodory_decompose needs at least one point");
  std::vector<Pt2> coords;
  for (const auto& p : points) {
    if (!plane.contains(p, tol)) throw Error("point is not in the rank-one plane");
    coords.push_back(to_pt2(plane.coordinates(p)));
  }
  const Mode mode = target.mode();
  const Scalar one = Scalar::of(mode, 1);
  auto direction_of = [&](const Pt2& v) { return (plane.point({v[0], v[1]}) - plane.basepoint).to_mat2(); };
  if (!plane.contains(target, tol))
    throw OutsideHullError("target is not in the rank-one plane",
                           (Matrix(target) - plane.point(plane.coordinates(target))).to_mat2());
  const Pt2 t = to_pt2(plane.coordinates(target));
  std::vector<int> hull = convex_hull_2d(coords);

  std::vector<std::pair<int, Scalar>> combo;
  if (hull.size() == 1) {
    if (!same2(t, coords[hull[0]], tol))
      throw OutsideHullError("target outside hull",
                             direction_of({t[0] - coords[hull[0]][0], t[1] - coords[hull[0]][1]}));
    combo = {{hull[0], one}};
  } else if (hull.size() == 2) {
    const Pt2 &a = coords[hull[0]], &b = coords[hull[1]];
    const Pt2 e{b[0] - a[0], b[1] - a[1]};
    if (!in_segment2(t, a, b, tol)) {
      int side = orientation(a, b, t, tol);
      Scalar along = (t[0] - a[0]) * e[0] + (t[1] - a[1]) * e[1];
      const Pt2& end = along.sign() < 0 ? a : b;
      Pt2 n = side == 0 ? Pt2{t[0] - end[0], t[1] - end[1]}
                        : Pt2{e[1] * like(e[1], -side), e[0] * like(e[0], side)};
      throw OutsideHullError("target outside hull", direction_of(n));
    }
    Scalar len = e[0] * e[0] + e[1] * e[1];
    Scalar s = ((t[0] - a[0]) * e[0] + (t[1] - a[1]) * e[1]) / len;
    combo = {{hull[0], one - s}, {hull[1], s}};
  } else {
    std::vector<Pt2> poly;
    for (int h : hull) poly.push_back(coords[h]);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Pt2 &a = poly[i], &b = poly[(i + 1) % poly.size()];
      if (orientation(a, b, t, tol) < 0)
        throw OutsideHullError("target outside hull", direction_of({b[1] - a[1], a[0] - b[0]}));
    }
    // Fan triangulation from the first hull vertex.
    for (std::size_t i = 1; i + 1 < poly.size(); ++i) {
      const Pt2 &a = poly[0], &b = poly[i], &c = poly[i + 1];
      Scalar area = cross(a, b, c);
      Scalar wa = cross(t, b, c) / area, wb = cross(a, t, c) / area, wc = cross(a, b, t) / area;
      auto nonneg = [&](const Scalar& w) { return w.is_exact() ? w.sign() >= 0 : w.to_double() >= -tol; };
      if (nonneg(wa) && nonneg(wb) && nonneg(wc)) {
        combo = {{hull[0], wa}, {hull[i], wb}, {hull[i + 1], wc}};
        break;
      }
    }
    if (combo.empty()) throw Error("target not located in the hull triangulation");
  }

  Caratheodory out;
  for (auto& [i, w] : combo) {
    bool zero_weight = w.is_exact() ? w.is_zero() : std::abs(w.to_double()) <= tol;
    if (zero_weight) continue;
    out.points.push_back(points[i]);
    out.weights.push_back(w);
  }
  out.intermediate_weight = out.weights[0];
  out.reconstruction = out.points[0];
  if (out.points.size() >= 2) {
    out.intermediate_weight = out.weights[0] + out.weights[1];
    out.intermediate =
        (out.points[0] * out.weights[0] + out.points[1] * out.weights[1]) / out.intermediate_weight;
    out.reconstruction = *out.intermediate * out.intermediate_weight;
    if (out.points.size() == 3) out.reconstruction += out.points[2] * out.weights[2];
  }
  if (mode == Mode::exact && out.reconstruction != target)
    throw Error("convex combination does not reproduce the target");
  return out;
}

}  // namespace rohull
