#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rohull/core.hpp"

using namespace rohull;
using oracle::q;

namespace {

Scalar R(long n, long d = 1) { return Scalar::ratio(n, d); }
Mat2 diag(long x, long y) { return Mat2::diag(x, y); }

}  // namespace

TEST_SUITE("scalar") {
  TEST_CASE("exact values are stored reduced with positive denominator") {
    Scalar s = Scalar::ratio(6, -4);
    CHECK(s.rational().get_num() == -3);
    CHECK(s.rational().get_den() == 2);
    CHECK(s.to_string() == "-3/2");
    CHECK(Scalar::ratio(8, 4).to_string() == "2");
    CHECK_THROWS_AS(Scalar::ratio(1, 0), Error);
  }

  TEST_CASE("mixing exact and float operands is refused") {
    CHECK_THROWS_AS(Scalar(1) + Scalar::from_double(1.0), ModeError);
    CHECK_THROWS_AS((void)(Scalar(1) < Scalar::from_double(2.0)), ModeError);
    CHECK_THROWS_AS(det(Mat2{Scalar(1), Scalar(0), Scalar(0), Scalar::from_double(1.0)}), ModeError);
  }

  TEST_CASE("parsing keeps decimals exact in exact mode") {
    CHECK(Scalar::parse("0.001", Mode::exact) == R(1, 1000));
    CHECK(Scalar::parse("1e-3", Mode::exact) == R(1, 1000));
    CHECK(Scalar::parse("-7/21", Mode::exact) == R(-1, 3));
    CHECK(Scalar::parse("0.1", Mode::floating).to_double() == 0.1);
    CHECK_THROWS_AS(Scalar::parse("1/0", Mode::exact), Error);
    CHECK_THROWS_AS(Scalar::parse("abc", Mode::exact), Error);
  }

  TEST_CASE("float formatting is shortest round-trip") {
    CHECK(Scalar::from_double(0.1).to_string() == "0.1");
    CHECK(Scalar::from_double(1.0 / 3.0).to_string() == "0.3333333333333333");
    CHECK(std::stod(Scalar::from_double(2.0 / 7.0).to_string()) == 2.0 / 7.0);
  }

  TEST_CASE("square roots") {
    CHECK(sqrt(R(9, 16)) == R(3, 4));
    CHECK_THROWS_AS(sqrt(R(2)), Error);
    CHECK(sqrt(Scalar::from_double(2.0)).to_double() == doctest::Approx(std::sqrt(2.0)));
  }
}

TEST_SUITE("core") {
  TEST_CASE("det examples") {
    CHECK(det(Mat2::identity(Mode::exact)) == 1);
    const Scalar e = R(1, 2);
    CHECK(det(Mat2{-e, R(-1), -e * e, -e}) == 0);
    CHECK(det(Mat2{R(1), R(2), R(3), R(4)}) == -2);
  }

  TEST_CASE("rank_one_connected examples") {
    CHECK(rank_one_connected(diag(1, 0), Mat2::zero(Mode::exact)));
    CHECK_FALSE(rank_one_connected(diag(1, 0), diag(0, 1)));
    CHECK_THROWS_WITH_AS(rank_one_connected(diag(1, 0), diag(1, 0)),
                         "identical matrices have rank-0 difference", Error);
  }

  TEST_CASE("staircase neighbours are never rank-one connected") {
    for (int n = 0; n <= 20; ++n) {
      mpz_class p = 1;
      p <<= n;
      const Scalar a(mpq_class(1, p));
      const Scalar lower_x = R(1) - R(3, 2) * a, lower_y = a / R(2);
      const Scalar upper_x = R(1) - a, upper_y = R(3, 2) * a;
      CHECK_FALSE(rank_one_connected(Mat2::diag(lower_x, lower_y), Mat2::diag(upper_x, upper_y)));
    }
  }

  TEST_CASE("float rank-one test is relative to the squared norm") {
    const double big = 1e6;
    Mat2 x{Scalar::from_double(big), Scalar::from_double(big), Scalar::from_double(big),
           Scalar::from_double(big * (1 + 1e-12))};
    CHECK(rank_one_connected(x, Mat2::zero(Mode::floating)));
    Mat2 y{Scalar::from_double(1e-6), Scalar::from_double(0.0), Scalar::from_double(0.0),
           Scalar::from_double(1e-6)};
    CHECK_FALSE(rank_one_connected(y, Mat2::zero(Mode::floating)));
  }

  TEST_CASE("rank of 2x2 matrices") {
    CHECK(rank(Mat2::zero(Mode::exact)) == 0);
    CHECK(rank(diag(2, 0)) == 1);
    CHECK(rank(diag(2, 3)) == 2);
  }

  TEST_CASE("crossing_parameter examples") {
    const Mat2 a0 = diag(-1, 3), a1 = diag(3, 1);
    CHECK(crossing_parameter(a0, a1, diag(-1, -1)) == R(1, 2));
    // det(B - A1) = +8 mirrors det(A0 - A1) = -8.
    CHECK(crossing_parameter(a0, a1, diag(7, 3)) == R(1, 2));

    const std::array<Mat2, 4> a{diag(-1, 3), diag(3, 1), diag(1, -3), diag(-3, -1)};
    const std::array<Mat2, 4> p{diag(-1, -1), diag(-1, 1), diag(1, 1), diag(1, -1)};
    for (int i = 0; i < 4; ++i) CHECK(crossing_parameter(a[i], a[(i + 1) % 4], p[i]) == R(1, 2));
  }

  TEST_CASE("crossing_parameter errors") {
    const Mat2 a0 = diag(-1, 3), a1 = diag(3, 1);
    CHECK_THROWS_WITH_AS(crossing_parameter(diag(3, 0), a1, diag(5, 0)), "degenerate pivot pair", Error);
    CHECK_THROWS_WITH_AS(crossing_parameter(a0, a1, diag(-1, 4)), "no sign change", Error);
    CHECK_THROWS_WITH_AS(crossing_parameter(a0, a1, a1), "no sign change", Error);
  }

  TEST_CASE("embeddings") {
    CHECK(det(embed(TriPt{R(2), R(3), R(5)})) == 6);
    CHECK(det(embed(SymPt{R(2), R(3), R(5)})) == 6 - 25);
    CHECK(embed(TriPt{R(1), R(2), R(3)}) == Mat2{R(1), R(3), R(0), R(2)});
    CHECK_THROWS_AS(to_diag(embed(TriPt{R(1), R(2), R(3)})), Error);
    CHECK_THROWS_AS(to_sym(embed(TriPt{R(1), R(2), R(3)})), Error);
    CHECK_THROWS_AS(to_tri(embed(SymPt{R(1), R(2), R(3)})), Error);
  }
}

TEST_SUITE("core properties") {
  TEST_CASE("det(sX - tY) = st det(X - Y) for rank-deficient X, Y") {
    oracle::RationalGen gen(101);
    for (int trial = 0; trial < 100; ++trial) {
      Mat2 x = gen.rank_deficient(), y = gen.rank_deficient();
      Scalar s = gen.scalar(), t = gen.scalar();
      REQUIRE(det(x) == 0);
      REQUIRE(det(y) == 0);
      CHECK(det(x * s - y * t) == s * t * det(x - y));
      CHECK(oracle::det(oracle::from(x * s - y * t)) ==
            (s * t).rational() * oracle::det(oracle::from(x - y)));
    }
  }

  TEST_CASE("embed and project round-trip") {
    oracle::RationalGen gen(202);
    for (int trial = 0; trial < 1000; ++trial) {
      DiagPt d{gen.scalar(), gen.scalar()};
      TriPt t{gen.scalar(), gen.scalar(), gen.scalar()};
      SymPt s{gen.scalar(), gen.scalar(), gen.scalar()};
      CHECK(to_diag(embed(d)) == d);
      CHECK(to_tri(embed(t)) == t);
      CHECK(to_sym(embed(s)) == s);
      CHECK(embed(to_tri(embed(t))) == embed(t));
      CHECK(det(embed(t)) == t.x * t.y);
      CHECK(det(embed(s)) == s.x * s.y - s.z * s.z);
    }
  }

  TEST_CASE("crossing parameter lands on the rank-one cone") {
    oracle::RationalGen gen(303);
    int exact_checked = 0, float_checked = 0;
    for (int trial = 0; trial < 400 && exact_checked < 100; ++trial) {
      Mat2 a = gen.mat(), next = gen.mat();
      Mat2 b = a + gen.rank_deficient();
      Scalar d0 = det(a - next), d1 = det(b - next);
      if (d0.is_zero() || d1.is_zero() || d0.sign() == d1.sign()) continue;
      Scalar t = crossing_parameter(a, next, b);
      CHECK(t > 0);
      CHECK(t < 1);
      CHECK(det(lerp(a, b, t) - next) == 0);
      ++exact_checked;

      auto f = [](const Mat2& m) {
        return Mat2{Scalar::from_double(m.a11.to_double()), Scalar::from_double(m.a12.to_double()),
                    Scalar::from_double(m.a21.to_double()), Scalar::from_double(m.a22.to_double())};
      };
      Mat2 fa = f(a), fb = fa + f(b - a), fn = f(next);
      Scalar ft = crossing_parameter(fa, fn, fb);
      Mat2 hit = lerp(fa, fb, ft) - fn;
      double scale = std::max({frobenius_sq(fa - fn).to_double(), frobenius_sq(fb - fn).to_double(), 1.0});
      CHECK(std::abs(det(hit).to_double()) <= 1e-12 * scale);
      ++float_checked;
    }
    CHECK(exact_checked == 100);
    CHECK(float_checked == exact_checked);
  }
}
