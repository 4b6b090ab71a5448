#pragma once

#include <array>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rohull/core.hpp"
#include "rohull/matrix.hpp"

namespace rohull {

enum class PlaneKind {
  left,   ///< basepoint + x g^T, x in R^m
  right,  ///< basepoint + g y^T, y in R^n
};

std::string_view to_string(PlaneKind k);

/// Affine plane of m x n matrices whose pairwise differences have rank <= 1.
/// Float generators are unit vectors; exact generators stay rational.
struct RankOnePlane {
  Matrix basepoint;
  PlaneKind kind = PlaneKind::left;
  std::vector<Scalar> generator;

  int dimension() const { return kind == PlaneKind::left ? basepoint.rows() : basepoint.cols(); }
  /// Plane coordinates of m (its orthogonal projection onto the plane).
  std::vector<Scalar> coordinates(const Matrix& m) const;
  Matrix point(const std::vector<Scalar>& coords) const;
  bool contains(const Matrix& m, double tol = 1e-10) const;

  std::vector<Scalar> coordinates(const Mat2& m) const { return coordinates(Matrix(m)); }
  bool contains(const Mat2& m, double tol = 1e-10) const { return contains(Matrix(m), tol); }
};

/// The two rank-one planes through Y0 that contain X0 when X0 - Y0 = v0 w0^T
/// has rank one. Together they are exactly the matrices rank-one connected
/// to both X0 and Y0; they meet in the line Y0 + R v0 w0^T.
struct PlanePair {
  RankOnePlane p1;                ///< left: Y0 + x w0^T (dimension m)
  RankOnePlane p2;                ///< right: Y0 + v0 y^T (dimension n)
  Matrix intersection_direction;  ///< v0 w0^T
};

PlanePair plane_pair(const Matrix& x0, const Matrix& y0, double tol = kRankTolerance);

struct DetCheckReport {
  bool pass = true;
  std::optional<std::pair<int, int>> violating_pair;
  std::vector<std::pair<int, int>> pairs;  ///< i < j, same order as dets
  std::vector<Scalar> dets;                ///< det(K_i - K_j)
  std::vector<std::pair<int, int>> rank_one_pairs;
};

/// Evaluates det(K_i - K_j) for every pair; passes when none is negative.
DetCheckReport pairwise_det_check(std::span<const Mat2> k, double tol = kRankTolerance);

/// Convex hull of a clique of K inside one rank-one plane.
struct PlaneHull {
  RankOnePlane plane;
  std::vector<int> members;   ///< indices into K
  std::vector<Mat2> polygon;  ///< hull vertices, counter-clockwise
  std::vector<std::array<Scalar, 2>> polygon_coords;
  bool contains(const Mat2& x, double tol = 1e-10) const;
};

/// Polyconvex hull of a finite det-nonnegative set: the union of the convex
/// hulls of K inside its rank-one planes, plus points with no rank-one
/// partner.
struct PcHull {
  std::vector<PlaneHull> planes;
  std::vector<Mat2> singletons;
  bool contains(const Mat2& x, double tol = 1e-10) const;
};

PcHull pc_hull(std::span<const Mat2> k, double tol = kRankTolerance);

/// Counter-clockwise convex hull in the plane, collinear points removed.
/// Returns indices into `pts`.
std::vector<int> convex_hull_2d(const std::vector<std::array<Scalar, 2>>& pts);

struct Caratheodory {
  std::vector<Mat2> points;     ///< at most three, every weight nonzero
  std::vector<Scalar> weights;  ///< positive, summing to one
  /// (w1 X1 + w2 X2) / (w1 + w2), the first lamination step.
  std::optional<Mat2> intermediate;
  Scalar intermediate_weight;  ///< w1 + w2
  Mat2 reconstruction;         ///< (w1 + w2) intermediate + w3 X3
};

/// Thrown when the target lies outside the convex hull; `direction` points
/// away from the hull inside the plane.
class OutsideHullError : public Error {
 public:
  OutsideHullError(const std::string& what, Mat2 direction) : Error(what), direction(std::move(direction)) {}
  Mat2 direction;
};

/// Writes `target` as a convex combination of at most three of `points`
/// (all in `plane`) and realises it as two successive rank-one combinations.
Caratheodory caratheodory_decompose(const RankOnePlane& plane, std::span<const Mat2> points,
                                    const Mat2& target, double tol = 1e-10);

}  // namespace rohull
