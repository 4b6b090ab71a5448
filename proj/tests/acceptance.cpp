// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "oracles.hpp"
#include "rohull/constructions.hpp"
#include "rohull/hulls.hpp"
#include "rohull/pchull.hpp"
#include "rohull/t4.hpp"

#ifndef ROHULL_EXE
#error "ROHULL_EXE must name the command-line executable"
#endif

using namespace rohull;
using oracle::Q;
using oracle::q;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note = what;
    }
  }
};

Scalar R(long n, long d = 1) { return Scalar::ratio(n, d); }

Q pow2(int n) {
  Q r = 1;
  for (int i = 0; i < n; ++i) r *= 2;
  return r;
}

Outcome staircase_criterion() {
  Outcome o;
  for (int n = 2; n <= 20; ++n) {
    const StaircaseConfig cfg{30, n, Mode::exact};
    LaminateSet k0 = staircase_points(cfg);
    LaminateSet k = k0;
    k.points.push_back(embed(staircase_corner(n, Mode::exact)));
    const Q bound = 1 / pow2(n);
    o.require(hausdorff(k, k0).squared.rational() <= bound * bound,
              "rho exceeds 2^-N at N=" + std::to_string(n));
    StaircaseChain chain = staircase_iterate(cfg);
    o.require(chain.final_point.x == 0 && chain.final_point.y == 1,
              "chain does not reach (0,1) at N=" + std::to_string(n));
    for (const auto& s : chain.steps)
      o.require(s.left.x == s.right.x || s.left.y == s.right.y, "chain step is not rank-one");
  }
  LaminateSet target = LaminateSet::from_points({embed(DiagPt{R(0), R(1)})});
  LaminateSet k0 = staircase_points({30, 2, Mode::exact});
  Distance d = directed_hausdorff(target, k0);
  o.require(d.squared == R(1, 4) && d.value_is_exact() && d.value() == R(1, 2), "rho((0,1), K0) != 1/2");
  return o;
}

Outcome tri_spiral_criterion() {
  Outcome o;
  TriSpiralResult r = tri_spiral(TriSpiralConfig::standard(Mode::exact), 40);
  for (const auto& l : r.lambda) o.require(l == R(1, 2), "lambda != 1/2");
  const std::array<std::array<Scalar, 3>, 4> want{
      {{R(-1), R(1), R(1, 2)}, {R(1), R(1), R(1, 4)}, {R(1), R(-1), R(1, 8)}, {R(-1), R(-1), R(1, 16)}}};
  o.require(r.iterates.size() == 41, "wrong iterate count");
  for (int i = 0; i < 4 && o.ok; ++i) {
    const TriPt& x = r.iterates[i + 1];
    o.require(x.x == want[i][0] && x.y == want[i][1] && x.z == want[i][2],
              "X" + std::to_string(i + 1) + " mismatch");
  }
  o.require(r.certificates.size() == 40, "wrong certificate count");
  for (const auto& c : r.certificates) o.require(c.is_zero(), "nonzero det certificate");
  o.require(r.closed_form_matches, "closed form mismatch");
  o.require(r.separator.pairwise_dets.size() == 6, "separator check incomplete");
  for (const auto& d : r.separator.pairwise_dets)
    o.require(!d.is_zero(), "separator points rank-one connected");
  return o;
}

Outcome sym_spiral_criterion() {
  Outcome o;
  SymSpiralResult r = sym_spiral(SymSpiralConfig::standard(1e-3), 12);
  o.require(r.cycles.size() == 12, "fewer than 12 cycles");
  for (const auto& c : r.cycles) {
    o.require(c.positive_branch, "negative branch selected");
    o.require(c.ratio.to_double() < 17.0 / 32, "contraction ratio >= 17/32");
    for (const auto& qs : c.quarters)
      o.require(std::abs(qs.det_residual.to_double()) <= 1e-10 * qs.det_scale.to_double(),
                "det residual too large");
  }
  const SymPt& y = r.iterates.back();
  o.require(std::hypot(y.x.to_double() + 1, y.y.to_double() + 1, y.z.to_double()) <= 1e-9, "Y12 far from P0");
  return o;
}

Outcome five_point_criterion() {
  Outcome o;
  for (const auto& eps : {q(1, 2), q(1, 4), q(1, 3), q(3, 4)}) {
    const std::string tag = " at eps=" + eps.get_str();
    oracle::FivePoint f = oracle::five_point(eps);
    FivePointConfig cfg = five_point_build(Scalar(eps));
    for (int i = 0; i < 4; ++i) o.require(cfg.mu[i].rational() == f.mu[i], "mu mismatch" + tag);
    if (eps == q(1, 2))
      o.require(cfg.mu == std::array<Scalar, 4>{R(16, 3), R(7, 3), R(41, 6), R(65, 24)},
                "mu != (16/3,7/3,41/6,65/24)");
    o.require(cfg.checks.mu_consistency.is_zero(), "mu identity fails" + tag);
    o.require(cfg.mu[0] == 1 + cfg.mu[3] / (cfg.epsilon * (1 + cfg.epsilon * cfg.epsilon)),
              "mu identity recheck" + tag);
    o.require(cfg.checks.t4.equation_residual.is_zero(), "nonzero T4 residual" + tag);
    o.require(cfg.checks.t4.sum_residual.is_zero(), "increments do not close" + tag);
    for (const auto& d : cfg.checks.t4.det_C) o.require(d.is_zero(), "increment not rank-one" + tag);
    o.require(oracle::same(oracle::from(cfg.P[0]), f.P[0]), "P1 mismatch" + tag);
    for (int i = 0; i < 4; ++i) o.require(det(cfg.X[i]).is_zero(), "det X_i != 0" + tag);
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        o.require(!det(cfg.X[i] - cfg.X[j]).is_zero(), "X_i - X_j rank-one" + tag);
    Distance gap = five_point_gap(cfg);
    o.require(gap.exact && gap.squared.sign() > 0, "gap not strictly positive" + tag);
    const oracle::QMat p1 = f.P[0];
    Q best = -1;
    for (const auto& x : f.X) {
      Q d = oracle::point_segment_sq(p1, oracle::QMat{0, 0, 0, 0}, x);
      if (best < 0 || d < best) best = d;
    }
    o.require(gap.squared.rational() == best, "gap differs from oracle" + tag);
    DiscreteLaminate lam = laminate_unroll(cfg.X, cfg.witness(), 0, 10);
    o.require(lam.barycenter == cfg.P[0], "barycenter != P1" + tag);
    Q per_round = 1;
    for (const auto& m : f.mu) per_round *= 1 - 1 / m;
    Q mass = 1;
    for (int i = 0; i < 10; ++i) mass *= per_round;
    o.require(lam.off_support_mass.rational() == mass, "off-support mass mismatch" + tag);
  }
  return o;
}

const T4Witness* identity_witness(const T4Detection& d) {
  for (const auto& w : d.witnesses)
    if (w.ordering == Ordering{0, 1, 2, 3}) return &w;
  return nullptr;
}

Outcome t4_criterion() {
  Outcome o;
  {
    auto c = DiagonalData::standard(Mode::exact).outer();
    std::vector<Mat2> x{embed(c[0]), embed(c[1]), embed(c[2]), embed(c[3])};
    T4Detection d = detect_t4(x);
    const T4Witness* w = identity_witness(d);
    o.require(w != nullptr, "diagonal classic not detected");
    if (w)
      for (const auto& m : w->mu) o.require(std::abs(m.to_double() - 2.0) <= 1e-6, "classic mu != 2");
  }
  {
    oracle::FivePoint f = oracle::five_point(q(1, 2));
    std::vector<Mat2> x;
    for (const auto& m : f.X) x.push_back(oracle::to_mat(m));
    T4Detection d = detect_t4(x);
    const T4Witness* w = identity_witness(d);
    o.require(w != nullptr, "five-point quadruple not detected");
    if (w)
      for (int i = 0; i < 4; ++i)
        o.require(std::abs(w->mu[i].to_double() - f.mu[i].get_d()) <= 1e-6, "five-point mu off");
  }
  oracle::RationalGen g(55);
  for (int t = 0; t < 100; ++t) {
    std::vector<Mat2> x{g.mat(), g.mat(), g.mat(), g.mat()};
    const int i = g.integer(0, 3), j = (i + g.integer(1, 3)) % 4;
    // Overwrite x[j] with a rank-one neighbour of x[i].
    const Scalar u1 = g.scalar(), u2 = g.scalar(), v1 = g.scalar(), v2 = g.scalar();
    const Scalar s = (u1.is_zero() && u2.is_zero()) ? R(1) : R(0);
    const Scalar w1 = (v1.is_zero() && v2.is_zero()) ? R(1) : v1;
    x[j] = x[i] + Mat2{(u1 + s) * w1, (u1 + s) * v2, u2 * w1, u2 * v2};
    T4Detection d = detect_t4(x);
    o.require(d.witnesses.empty(), "witness found for rank-one connected quadruple");
    o.require(d.failures.size() == 24, "missing failure entries");
    for (const auto& f : d.failures) o.require(!f.reason.empty(), "failure without reason");
  }
  return o;
}

Matrix float_matrix(int rows, int cols, const std::vector<double>& v) {
  std::vector<Scalar> d;
  for (double x : v) d.push_back(Scalar::from_double(x));
  return Matrix(rows, cols, std::move(d));
}

int int_rank(const std::vector<long>& e, int rows, int cols) {
  if (std::all_of(e.begin(), e.end(), [](long v) { return v == 0; })) return 0;
  for (int i = 0; i < rows; ++i)
    for (int k = i + 1; k < rows; ++k)
      for (int j = 0; j < cols; ++j)
        for (int l = j + 1; l < cols; ++l)
          if (e[i * cols + j] * e[k * cols + l] - e[i * cols + l] * e[k * cols + j] != 0) return 2;
  return 1;
}

bool plane_membership_trial(oracle::RationalGen& g, int rows, int cols, int range) {
  std::vector<long> v(rows), w(cols), vw(rows * cols), n(rows * cols), diff(rows * cols);
  auto nonzero = [&](std::vector<long>& a) {
    do {
      for (auto& x : a) x = g.integer(-2, 2);
    } while (std::all_of(a.begin(), a.end(), [](long x) { return x == 0; }));
  };
  nonzero(v);
  nonzero(w);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) vw[i * cols + j] = v[i] * w[j];
  do {
    for (auto& x : n) x = g.integer(-range, range);
    for (std::size_t k = 0; k < n.size(); ++k) diff[k] = n[k] - vw[k];
  } while (int_rank(n, rows, cols) > 1 || int_rank(diff, rows, cols) > 1);
  const double s = g.real(0.5, 2.0);
  std::vector<double> y0(rows * cols), x0(rows * cols), m(rows * cols);
  for (int k = 0; k < rows * cols; ++k) {
    y0[k] = g.real(-2, 2);
    x0[k] = y0[k] + s * static_cast<double>(vw[k]);
    m[k] = y0[k] + s * static_cast<double>(n[k]);
  }
  PlanePair pp = plane_pair(float_matrix(rows, cols, x0), float_matrix(rows, cols, y0), 1e-8);
  Matrix mm = float_matrix(rows, cols, m);
  return pp.p1.contains(mm, 1e-8) || pp.p2.contains(mm, 1e-8);
}

bool cross_trial(oracle::RationalGen& g) {
  std::vector<double> y0(4), x0(4);
  const double v[2] = {g.real(-1, 1), g.real(-1, 1)}, w[2] = {g.real(-1, 1), g.real(-1, 1)};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      y0[i * 2 + j] = g.real(-2, 2);
      x0[i * 2 + j] = y0[i * 2 + j] + v[i] * w[j];
    }
  PlanePair pp = plane_pair(float_matrix(2, 2, x0), float_matrix(2, 2, y0), 1e-8);
  for (;;) {
    auto coords = [&] {
      return std::vector<Scalar>{Scalar::from_double(g.real(-2, 2)), Scalar::from_double(g.real(-2, 2))};
    };
    Matrix a = pp.p1.point(coords()), b = pp.p2.point(coords());
    if (pp.p2.contains(a, 1e-3) || pp.p1.contains(b, 1e-3)) continue;
    return !rank_at_most_one(a - b, 1e-8);
  }
}

Outcome plane_pair_criterion() {
  Outcome o;
  oracle::RationalGen g(2024);
  int failures = 0;
  for (int t = 0; t < 1000; ++t) failures += !plane_membership_trial(g, 2, 2, 2);
  for (int t = 0; t < 100; ++t) failures += !plane_membership_trial(g, 3, 2, 1);
  for (int t = 0; t < 100; ++t) failures += !plane_membership_trial(g, 2, 3, 1);
  o.require(failures == 0, std::to_string(failures) + " solutions outside P1 u P2");
  int cross = 0;
  for (int t = 0; t < 1000; ++t) cross += !cross_trial(g);
  o.require(cross == 0, std::to_string(cross) + " cross-plane pairs of rank < 2");
  return o;
}

Outcome pc_criterion() {
  Outcome o;
  oracle::RationalGen g(7, 4, 2);
  long disagreements = 0, probes = 0;
  for (int t = 0; t < 200; ++t) {
    std::vector<Mat2> k = gen::det_nonnegative_set(g, 5);
    o.require(pairwise_det_check(k).pass, "generator produced a negative determinant");
    PcHull h = pc_hull(k);
    // L2(K) membership is one lamination step applied to L1(K).
    const LaminateSet l1 = l1_hull(k);
    for (const auto& p : h.planes) {
      auto lo = p.polygon_coords.front(), hi = lo;
      for (const auto& c : p.polygon_coords)
        for (int a = 0; a < 2; ++a) {
          lo[a] = min(lo[a], c[a]);
          hi[a] = max(hi[a], c[a]);
        }
      // 20 x 20 grid over the bounding box widened by a fifth on each side.
      const int n = 20;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const Scalar s = R(-1, 5) + R(7 * i, 5 * (n - 1)), u = R(-1, 5) + R(7 * j, 5 * (n - 1));
          Mat2 x = p.plane.point({lo[0] + s * (hi[0] - lo[0]), lo[1] + u * (hi[1] - lo[1])}).to_mat2();
          disagreements += h.contains(x) != step_contains(l1, x);
          ++probes;
        }
    }
  }
  o.require(disagreements == 0,
            std::to_string(disagreements) + " of " + std::to_string(probes) + " probes disagree");
  o.require(probes > 0, "no probes");
  if (o.ok) o.note = std::to_string(probes) + " probes";
  return o;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism_criterion() {
  Outcome o;
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "rohull_acceptance";
  fs::remove_all(root);
  for (const std::string cmd : {"staircase", "tri-spiral", "sym-spiral", "five-point", "t4-detect", "pc-hull",
                                "hausdorff", "usc-probe"}) {
    std::string name = cmd;
    std::replace(name.begin(), name.end(), '-', '_');
    std::string outputs[2];
    for (int run = 0; run < 2; ++run) {
      const fs::path dir = root / (name + std::to_string(run));
      fs::create_directories(dir);
      const std::string line = std::string("\"") + ROHULL_EXE + "\" --out \"" + dir.string() + "\" " + cmd +
                               " > \"" + (dir / "stdout.txt").string() + "\" 2>&1";
      const int rc = std::system(line.c_str());
      o.require(rc == 0, cmd + " exited with status " + std::to_string(rc));
      outputs[run] = slurp(dir / (name + ".json"));
    }
    o.require(!outputs[0].empty(), cmd + " wrote no JSON");
    o.require(outputs[0] == outputs[1], cmd + " JSON differs between runs");
  }
  fs::remove_all(root);
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;  // 0 means no runtime limit
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "staircase perturbation and distance", 1.0, staircase_criterion},
      {2, "upper-triangular spiral", 1.0, tri_spiral_criterion},
      {3, "symmetric spiral", 1.0, sym_spiral_criterion},
      {4, "five-point configuration", 2.0, five_point_criterion},
      {5, "T4 detection", 30.0, t4_criterion},
      {6, "rank-one plane pair properties", 5.0, plane_pair_criterion},
      {7, "polyconvex hull oracle equivalence", 60.0, pc_criterion},
      {8, "CLI determinism", 0.0, determinism_criterion},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.note = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok && c.limit_s > 0 && secs >= c.limit_s) {
      o.ok = false;
      o.note = "runtime limit exceeded";
    }
    failed += !o.ok;
    std::printf("%s criterion %d: %s (%.3f s%s%s)%s%s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs,
                c.limit_s > 0 ? ", limit " : "",
                c.limit_s > 0 ? std::to_string(c.limit_s).substr(0, 4).c_str() : "",
                o.note.empty() ? "" : ": ", o.note.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
