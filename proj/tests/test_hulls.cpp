#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rohull/constructions.hpp"
#include "rohull/hulls.hpp"

using namespace rohull;
using oracle::q;

namespace {

Scalar R(long n, long d = 1) { return Scalar::ratio(n, d); }
Mat2 diag(const Scalar& x, const Scalar& y) { return Mat2::diag(x, y); }
Mat2 zero() { return Mat2::zero(Mode::exact); }

bool has_segment(const LaminateSet& s, const Mat2& a, const Mat2& b) {
  for (const auto& seg : s.segments)
    if ((seg.a == a && seg.b == b) || (seg.a == b && seg.b == a)) return true;
  return false;
}

LaminateSet random_set(oracle::RationalGen& gen, int points, int segments) {
  LaminateSet s;
  for (int i = 0; i < points; ++i) s.points.push_back(gen.mat());
  for (int i = 0; i < segments; ++i) {
    Mat2 a = gen.mat(), d = gen.rank_deficient();
    if (d.is_zero()) continue;
    s.segments.push_back({a, a + d, 1, false});
  }
  if (s.empty()) s.points.push_back(gen.mat());
  s.order = s.segments.empty() ? 0 : 1;
  return s;
}

}  // namespace

TEST_SUITE("lamination step") {
  TEST_CASE("a single rank-one pair gives one segment") {
    LaminateSet k = LaminateSet::from_points({zero(), diag(R(1), R(0))});
    LaminateSet s = lamination_step(k);
    CHECK(s.order == 1);
    REQUIRE(s.segments.size() == 1);
    CHECK(has_segment(s, zero(), diag(R(1), R(0))));
    CHECK_FALSE(s.segments[0].approximate);
  }

  TEST_CASE("the four outer spiral points have no rank-one connections") {
    auto outer = DiagonalData::standard(Mode::exact).outer();
    std::vector<Mat2> k;
    for (const auto& a : outer) k.push_back(embed(TriPt{a.x, a.y, R(0)}));
    for (std::size_t i = 0; i < k.size(); ++i)
      for (std::size_t j = i + 1; j < k.size(); ++j)
        CHECK(oracle::det(oracle::sub(oracle::from(k[i]), oracle::from(k[j]))) != 0);
    CHECK(lamination_step(LaminateSet::from_points(k)).segments.empty());
  }

  TEST_CASE("the five-point union of segments is a fixed point") {
    for (const Scalar& eps : {R(1, 2), R(1, 3)}) {
      FivePointConfig cfg = five_point_build(eps);
      LaminateSet s = LaminateSet::from_points(cfg.K());
      for (int k = 1; k <= 3; ++k) {
        s = lamination_step(s, kRankTolerance, 8);
        CHECK(s.order == k);
        REQUIRE(s.segments.size() == 4);
        for (const auto& x : cfg.X) CHECK(has_segment(s, zero(), x));
      }
    }
  }

  TEST_CASE("l2_hull of a collinear family is one segment") {
    std::vector<Mat2> k{zero(), diag(R(1), R(0)), diag(R(2), R(0))};
    LaminateSet s = l2_hull(k);
    CHECK(s.order == 2);
    REQUIRE(s.segments.size() == 1);
    CHECK(has_segment(s, zero(), diag(R(2), R(0))));
  }

  TEST_CASE("l2_hull without rank-one connections is the set itself") {
    std::vector<Mat2> k{zero(), Mat2::identity(Mode::exact)};
    LaminateSet s = l2_hull(k);
    CHECK(s.segments.empty());
    CHECK(s.points.size() == 2);
    CHECK_FALSE(l2_contains(k, Mat2::identity(Mode::exact) * R(1, 2)));
  }

  TEST_CASE("a rank-one triangle is filled by two lamination steps") {
    const Mat2 e11{R(1), R(0), R(0), R(0)}, e12{R(0), R(1), R(0), R(0)};
    std::vector<Mat2> k{zero(), e11, e12};
    const int n = 8;
    for (int i = 0; i <= n; ++i)
      for (int j = 0; i + j <= n; ++j) {
        const Scalar a = R(i, n), b = R(j, n);
        const Mat2 x = e11 * a + e12 * b;
        CHECK(l2_contains(k, x));
        // Brute-force two-step witness: x on [0, y] with y on [e11, e12].
        if (i + j == 0) continue;
        const Scalar s = a + b;
        const oracle::QMat y = oracle::from(x * (R(1) / s));
        CHECK(oracle::det(oracle::sub(oracle::from(e11), oracle::from(e12))) == 0);
        CHECK(oracle::det(y) == 0);
        CHECK(oracle::point_segment_sq(y, oracle::from(e11), oracle::from(e12)) == 0);
      }
    CHECK_FALSE(l2_contains(k, e11 + e12));
    CHECK_FALSE(l2_contains(k, Mat2{R(1, 4), R(1, 4), R(1, 4), R(0)}));
  }

  TEST_CASE("samples below two are rejected") {
    CHECK_THROWS_AS(lamination_step(LaminateSet::from_points({zero()}), kRankTolerance, 1), Error);
  }
}

TEST_SUITE("lamination properties") {
  TEST_CASE("steps are monotone and only add rank-one segments") {
    oracle::RationalGen gen(404, 3, 2);
    for (int trial = 0; trial < 40; ++trial) {
      LaminateSet s = random_set(gen, 4, 2);
      // Plant a rank-one pair so something new appears.
      s.points.push_back(s.points.front() + gen.rank_deficient());
      LaminateSet next = lamination_step(s, kRankTolerance, 6);
      CHECK(next.order == s.order + 1);
      for (const auto& p : s.points) CHECK(next.contains(p));
      for (const auto& seg : s.segments)
        for (int k = 0; k <= 4; ++k) CHECK(next.contains(lerp(seg.a, seg.b, R(k, 4))));
      for (const auto& seg : next.segments) {
        CHECK_FALSE(seg.a == seg.b);
        CHECK(rank_one_connected(seg.a, seg.b));
      }
    }
  }

  TEST_CASE("det(sX_i - tX_j) = st det(X_i - X_j) on the five-point segments") {
    FivePointConfig cfg = five_point_build(R(1, 2));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        if (i == j) continue;
        for (int a = 1; a <= 4; ++a)
          for (int b = 1; b <= 4; ++b) {
            const Scalar s = R(a, 4), t = R(b, 4);
            const Scalar d = det(cfg.X[i] * s - cfg.X[j] * t);
            CHECK(d == s * t * det(cfg.X[i] - cfg.X[j]));
            CHECK_FALSE(d.is_zero());
          }
      }
  }
}

TEST_SUITE("hausdorff") {
  TEST_CASE("distance of a set to itself is zero") {
    LaminateSet k0 = staircase_points({4, 1, Mode::exact});
    CHECK(hausdorff(k0, k0).squared == 0);
  }

  TEST_CASE("(0,1) to the staircase") {
    LaminateSet k0 = staircase_points({30, 1, Mode::exact});
    LaminateSet target = LaminateSet::from_points({diag(R(0), R(1))});
    std::vector<oracle::QMat> pts;
    for (const auto& p : k0.points) pts.push_back(oracle::from(p));
    const oracle::Q best = oracle::min_point_sq(oracle::from(diag(R(0), R(1))), pts);
    CHECK(best == q(1, 4));
    Distance d = directed_hausdorff(target, k0);
    CHECK(d.squared == R(1, 4));
    CHECK(d.value() == R(1, 2));
    CHECK(d.value_is_exact());
    CHECK(distance_to_set(diag(R(0), R(1)), k0).squared == R(1, 4));
    // The attaining point is (0, 3/2).
    CHECK(k0.contains(diag(R(0), R(3, 2))));
    // Symmetric distance is governed by the far end of the staircase.
    CHECK(hausdorff(target, k0).squared == 2);
  }

  TEST_CASE("adding P_N moves the staircase by less than 2^-N") {
    for (int n : {2, 5, 10}) {
      LaminateSet k0 = staircase_points({30, n, Mode::exact});
      LaminateSet k = k0;
      const DiagPt pn = staircase_corner(n, Mode::exact);
      k.points.push_back(embed(pn));
      std::vector<oracle::QMat> pts;
      for (const auto& p : k0.points) pts.push_back(oracle::from(p));
      const oracle::Q want = oracle::min_point_sq(oracle::from(embed(pn)), pts);
      Distance d = hausdorff(k, k0);
      CHECK(d.squared.rational() == want);
      mpz_class p = 1;
      p <<= 2 * n;
      CHECK(d.squared.rational() <= mpq_class(1, p));
    }
  }

  TEST_CASE("closed-form point and segment distances") {
    const Mat2 a = zero(), b = diag(R(2), R(0));
    CHECK(point_segment_distance_sq(diag(R(1), R(1)), a, b) == 1);
    CHECK(point_segment_distance_sq(diag(R(3), R(0)), a, b) == 1);
    CHECK(segment_segment_distance_sq(a, b, diag(R(1), R(2)), diag(R(1), R(3))) == 4);
    CHECK(segment_segment_distance_sq(a, b, diag(R(4), R(0)), diag(R(5), R(0))) == 4);
  }

  TEST_CASE("segments against segments") {
    LaminateSet s1, s2;
    s1.segments.push_back({zero(), diag(R(4), R(0)), 1, false});
    s2.segments.push_back({diag(R(0), R(1)), diag(R(2), R(1)), 1, false});
    CHECK(directed_hausdorff(s2, s1).squared == 1);
    CHECK(directed_hausdorff(s1, s2).squared == 5);
    CHECK(hausdorff(s1, s2).squared == 5);
  }

  TEST_CASE("empty sets are refused") {
    LaminateSet empty, one = LaminateSet::from_points({zero()});
    CHECK_THROWS_WITH_AS(hausdorff(empty, one), "Hausdorff undefined for empty set", Error);
    CHECK_THROWS_WITH_AS(hausdorff(one, empty), "Hausdorff undefined for empty set", Error);
  }
}

TEST_SUITE("hausdorff properties") {
  TEST_CASE("symmetric exactly and satisfies the triangle inequality") {
    oracle::RationalGen gen(505, 5, 3);
    for (int trial = 0; trial < 60; ++trial) {
      LaminateSet a = random_set(gen, 2, 2), b = random_set(gen, 3, 1), c = random_set(gen, 1, 2);
      Distance ab = hausdorff(a, b), ba = hausdorff(b, a);
      CHECK(ab.squared == ba.squared);
      const double dab = ab.value().to_double(), dbc = hausdorff(b, c).value().to_double(),
                   dac = hausdorff(a, c).value().to_double();
      CHECK(dac <= dab + dbc + 1e-10);
    }
  }

  TEST_CASE("directed distance agrees with dense sampling") {
    oracle::RationalGen gen(606, 4, 2);
    for (int trial = 0; trial < 20; ++trial) {
      LaminateSet a = random_set(gen, 1, 1), b = random_set(gen, 2, 2);
      double sampled = 0, step = 0;
      auto probe = [&](const Mat2& x) {
        sampled = std::max(sampled, distance_to_set(x, b).squared.to_double());
      };
      for (const auto& p : a.points) probe(p);
      for (const auto& s : a.segments) {
        step = std::max(step, std::sqrt(frobenius_sq(s.b - s.a).to_double()) / 256);
        for (int k = 0; k <= 256; ++k) probe(lerp(s.a, s.b, R(k, 256)));
      }
      const double got = directed_hausdorff(a, b).squared.to_double();
      CHECK(got >= sampled - 1e-12);
      // The distance function is 1-Lipschitz, so sampling misses at most one step.
      CHECK(std::sqrt(got) <= std::sqrt(sampled) + step + 1e-12);
    }
  }
}

TEST_SUITE("separator") {
  TEST_CASE("the outer spiral points certify a separator") {
    auto outer = DiagonalData::standard(Mode::exact).outer();
    std::vector<Mat2> f;
    for (const auto& a : outer) f.push_back(embed(TriPt{a.x, a.y, R(0)}));
    SeparatorWitness w = separator_check(f, Subspace::upper_triangular);
    REQUIRE(w.pairwise_dets.size() == 6);
    for (std::size_t k = 0; k < w.pairs.size(); ++k) {
      auto [i, j] = w.pairs[k];
      const oracle::Q want = (outer[i].x - outer[j].x).rational() * (outer[i].y - outer[j].y).rational();
      CHECK(w.pairwise_dets[k].rational() == want);
    }
    CHECK(w.pairwise_dets[0] == -8);   // adjacent corners
    CHECK(w.pairwise_dets[1] == -12);  // opposite corners
    CHECK(w.pairwise_dets[2] == 8);
  }

  TEST_CASE("an axis-aligned pair breaks the separator") {
    std::vector<Mat2> f{embed(TriPt{R(0), R(0), R(0)}), embed(TriPt{R(1), R(0), R(0)})};
    CHECK_THROWS_WITH_AS(separator_check(f, Subspace::upper_triangular),
                         "separator fails: rank-one connection in boundary set (points 0, 1)", Error);
  }

  TEST_CASE("a single point is vacuously fine") {
    std::vector<Mat2> f{embed(SymPt{R(1), R(2), R(0)})};
    SeparatorWitness w = separator_check(f, Subspace::symmetric);
    CHECK(w.pairwise_dets.empty());
  }

  TEST_CASE("boundary points must sit at z = 0") {
    std::vector<Mat2> f{embed(TriPt{R(0), R(0), R(1)})};
    CHECK_THROWS_AS(separator_check(f, Subspace::upper_triangular), Error);
  }
}
