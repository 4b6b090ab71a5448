#pragma once

#include <array>
#include <vector>

#include "rohull/core.hpp"
#include "rohull/hulls.hpp"
#include "rohull/t4.hpp"

namespace rohull {

// ---------------------------------------------------------------------------
// Staircase of diagonal matrices whose lamination hull jumps under a
// single-point perturbation.

struct StaircaseConfig {
  int n_max = 30;  ///< truncation of the infinite union
  int N = 10;      ///< index of the added point P_N
  Mode mode = Mode::exact;
};

/// (1 - 3/2^{n+1}, 1/2^{n+1})
DiagPt staircase_lower(int n, Mode mode);
/// (1 - 1/2^n, 3/2^{n+1})
DiagPt staircase_upper(int n, Mode mode);
/// P_n = (1 - 1/2^{n+1}, 1/2^{n+1}), n >= -1
DiagPt staircase_corner(int n, Mode mode);

/// {(1,0)} together with the lower and upper points for 0 <= n <= n_max.
/// Throws if two points share a coordinate (a rank-one connection).
LaminateSet staircase_points(const StaircaseConfig& cfg);

struct StaircaseStep {
  DiagPt left, right, result;
  char shared_axis = 'x';  ///< coordinate the two endpoints share
};

struct StaircaseChain {
  DiagPt perturbation;  ///< P_N
  std::vector<StaircaseStep> steps;
  DiagPt final_point;  ///< P_{-1} = (0, 1)
};

/// Midpoint chain from P_N down to P_{-1} inside L(K_0 + P_N); each step
/// combines two points sharing a coordinate.
StaircaseChain staircase_iterate(const StaircaseConfig& cfg);

// ---------------------------------------------------------------------------
// Diagonal T4 data shared by the upper-triangular and symmetric spirals.

struct DiagonalData {
  Scalar x1, x2, y1, y2;
  std::array<Scalar, 4> alpha;

  /// Inner rectangle corners P_0..P_3.
  std::array<DiagPt, 4> corners() const;
  /// Outer points A_0..A_3.
  std::array<DiagPt, 4> outer() const;
  /// Throws unless x1 < x2, y2 < y1 and every alpha_i > 0.
  void validate() const;

  /// x = (-1, 1), y = (1, -1), alpha = 2: outer points (-1,3), (3,1), (1,-3), (-3,-1).
  static DiagonalData standard(Mode mode);
};

/// lambda_i = crossing parameter of (A_i, A_{i+1}, P_i), with A_4 = A_0.
std::array<Scalar, 4> spiral_lambdas(const DiagonalData& d);

struct TriSpiralConfig {
  DiagonalData diag;
  Scalar z0;
  static TriSpiralConfig standard(Mode mode);
};

struct TriSpiralResult {
  std::array<Scalar, 4> lambda;
  std::vector<TriPt> iterates;       ///< X_0 .. X_n
  std::vector<Scalar> certificates;  ///< det(X_i - A_{i mod 4}), i < n
  bool closed_form_matches = false;
  SeparatorWitness separator;
};

/// X_{i+1} = (1 - lambda_{i mod 4}) A_{i mod 4} + lambda_{i mod 4} X_i from
/// X_0 = P_0 + (0, 0, z0), checked against the closed form
/// X_{4i+k} = P_k + (prod lambda)^i (prod_{j<k} lambda_j) (0, 0, z0).
TriSpiralResult tri_spiral(const TriSpiralConfig& cfg, int n_steps);

struct SymSpiralConfig {
  DiagonalData diag;
  Scalar xi3;
  double tol = 1e-10;  ///< relative det tolerance per quarter step
  static SymSpiralConfig standard(double xi3);
};

struct SymQuarterStep {
  Scalar t;
  SymPt point;          ///< B_{i+1}
  Scalar det_residual;  ///< det(B_{i+1} - A_{i+1})
  Scalar det_scale;     ///< |B_{i+1} - A_{i+1}|_F^2
};

struct SymCycle {
  SymPt start;  ///< Y_n
  std::array<SymQuarterStep, 4> quarters;
  SymPt eta;                         ///< B_4 - P_0
  Scalar ratio;                      ///< eta_3 / z(Y_n) = t_0 t_1 t_2 t_3
  Scalar bound;                      ///< (1 + prod lambda) / 2
  Scalar branch_plus, branch_minus;  ///< eta_1 predicted by both signs
  bool positive_branch = false;
};

struct SymSpiralResult {
  Scalar xi1, xi2, xi3;
  std::array<Scalar, 4> lambda;
  std::vector<SymPt> iterates;  ///< Y_0 .. Y_n
  std::vector<SymCycle> cycles;
};

/// Symmetric spiral starting at Y_0 = P_0 + (xi1, xi2, xi3); requires float
/// mode. Every cycle re-validates the sign, branch and contraction conditions
/// and throws naming the bound that xi3 exceeded.
SymSpiralResult sym_spiral(const SymSpiralConfig& cfg, int n_iters);

/// Offsets (xi1, xi2) putting P_0 + (xi1, xi2, xi3) on the rank-one cones of
/// both A_0 and A_3; `plus` selects the branch of the square root.
std::pair<Scalar, Scalar> sym_offsets(const DiagonalData& d, const Scalar& xi3, bool plus = true);

// ---------------------------------------------------------------------------
// Five-point set {0, X_1..X_4} with L(K) = union of [0, X_i] and a T4 corner
// outside it.

struct FivePointChecks {
  Scalar mu_consistency;  ///< mu_1 - (1 + mu_4 / (eps (1 + eps^2)))
  T4Residuals t4;
  std::array<Scalar, 4> det_X;
  std::vector<Scalar> pairwise_det;  ///< det(X_i - X_j), i < j
  bool lamination_convex = false;    ///< det X_i = 0 and det(X_i - X_j) != 0 for all pairs
  bool increments_rank_one = false;
};

struct FivePointConfig {
  Scalar epsilon;
  std::array<Mat2, 4> X;
  std::array<Scalar, 4> mu;
  std::array<Mat2, 4> P;
  std::array<Mat2, 4> C;  ///< C_i = P_{i+1} - P_i, P_5 = P_1
  FivePointChecks checks;

  std::vector<Mat2> K() const;  ///< {0, X_1, .., X_4}
  T4Witness witness() const;    ///< P = P_1, increments C, coefficients mu
  LaminateSet hull() const;     ///< L(K) = union of [0, X_i]
};

/// Builds and validates the configuration; throws if eps is outside (0, 1)
/// or any identity fails.
FivePointConfig five_point_build(const Scalar& epsilon);

/// Distance from P_1 to L(K) (positive: P_1 is not in the lamination hull).
Distance five_point_gap(const FivePointConfig& cfg);

}  // namespace rohull
