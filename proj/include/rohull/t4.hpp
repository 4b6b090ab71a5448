#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rohull/core.hpp"

namespace rohull {

using Ordering = std::array<int, 4>;

/// Scaffold of a T4 configuration for the ordered points
/// X[ordering[0]], ..., X[ordering[3]]:
///   X_k = P + C_1 + ... + C_{k-1} + mu_k C_k,  rank C_k = 1,  sum C_k = 0.
struct T4Witness {
  Ordering ordering{0, 1, 2, 3};
  Mat2 P;
  std::array<Mat2, 4> C;
  std::array<Scalar, 4> mu;
  bool exact = false;  ///< every identity holds in exact arithmetic
  int seed_index = -1;
  /// Ordering rotated to start at its smallest index, e.g. "0-1-2-3".
  std::string cyclic_class;
  /// Another reported witness has the same cyclic class.
  bool rotation_duplicate = false;

  /// Corner Q_k = P + C_1 + ... + C_k (Q_0 = Q_4 = P).
  Mat2 corner(int k) const;
};

struct T4Residuals {
  Scalar equation_residual;  ///< max entry of X_k - (Q_{k-1} + mu_k C_k)
  std::array<Scalar, 4> det_C;
  Scalar sum_residual;  ///< max entry of C_1 + ... + C_4
  Scalar margin;        ///< min mu_k - 1
  bool nonzero_increments = true;
  bool accepted = false;
};

/// Residuals of the scaffold equations for `x` (indexed through the
/// witness ordering). Exact mode accepts only identically vanishing
/// residuals and a positive margin.
T4Residuals check_t4_witness(std::span<const Mat2> x, const T4Witness& w, double tol = 1e-8);

/// Seeds for the Newton search over mu.
struct SeedGrid {
  std::vector<double> values;
  /// mu_i in {1 + 2^j / 8 : j = 0..9}
  static SeedGrid standard();
};

struct T4Attempt {
  std::optional<T4Witness> witness;
  std::string reason;  ///< why no witness was produced
};

/// Searches for a scaffold of the ordered quadruple `x` by multi-start Newton
/// on mu -> (det C_1(mu), ..., det C_4(mu)). For fixed mu the scaffold is the
/// solution of a linear system, solved in closed form.
T4Attempt solve_t4_ordering(std::span<const Mat2> x, const SeedGrid& seeds = SeedGrid::standard(),
                            double tol = 1e-10);

struct T4Failure {
  Ordering ordering;
  std::string reason;
};

struct T4Detection {
  std::vector<T4Witness> witnesses;
  std::vector<T4Failure> failures;
};

/// Tries all 24 orderings. Absence of witnesses means none was found, not
/// that none exists.
T4Detection detect_t4(std::span<const Mat2> x, double tol = 1e-10,
                      const SeedGrid& seeds = SeedGrid::standard());

/// Exact scaffold for fixed mu (all four points already ordered). nullopt
/// when the linear system is singular.
std::optional<T4Witness> scaffold_for(std::span<const Mat2> ordered, const std::array<Scalar, 4>& mu);

/// Witness for the ordering rotated left by `shift` positions.
T4Witness rotate(const T4Witness& w, int shift);

struct Atom {
  Mat2 matrix;
  Scalar weight;
};

/// One rank-one split: `parent` = (1/mu) point + (1 - 1/mu) corner.
struct Split {
  Mat2 parent, point, corner;
  Scalar point_fraction;
};

/// Finitely supported probability measure.
struct DiscreteLaminate {
  std::vector<Atom> atoms;
  Mat2 barycenter;
  Scalar off_support_mass;  ///< weight not sitting on X_1..X_4
  std::vector<Split> history;
};

/// Splits unit mass at corner Q_target backwards around the scaffold,
/// Q_k = (1/mu_k) X_k + (1 - 1/mu_k) Q_{k-1}, for `rounds` full cycles.
/// Each split is along the rank-one direction C_k, so the barycenter stays
/// at the corner.
DiscreteLaminate laminate_unroll(std::span<const Mat2> x, const T4Witness& w, int target_corner, int rounds);

}  // namespace rohull
