#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rohull/core.hpp"

namespace rohull {

/// Closed segment [a, b] with rank(a - b) <= 1.
struct RankOneSegment {
  Mat2 a, b;
  int generation = 0;        ///< the k at which the segment entered L^(k)
  bool approximate = false;  ///< produced by parameter sampling
};

/// A finite union of points and rank-one segments, standing for an
/// iterate L^(k) of the lamination hull.
struct LaminateSet {
  std::vector<Mat2> points;
  std::vector<RankOneSegment> segments;
  int order = 0;
  /// Rank-one crossings with irrational parameter that exact mode could not
  /// represent and therefore left out.
  int irrational_roots_skipped = 0;

  static LaminateSet from_points(std::vector<Mat2> points);

  bool empty() const { return points.empty() && segments.empty(); }
  /// Mode of the stored matrices (exact for an empty set).
  Mode mode() const;
  /// Point membership in the represented union.
  bool contains(const Mat2& x, double tol = kRankTolerance) const;
};

/// Whether x lies on the segment [a, b] (exact in exact mode).
bool on_segment(const Mat2& x, const Mat2& a, const Mat2& b, double tol = kRankTolerance);

/// One lamination step: adds every segment joining two rank-one connected
/// members of `s`. Point-point and point-segment pairs are handled exactly;
/// segment-segment pairs are sampled at `samples_per_segment` parameters.
LaminateSet lamination_step(const LaminateSet& s, double tol = kRankTolerance, int samples_per_segment = 64);

/// L^(2)(K) as a laminate set (two lamination steps).
LaminateSet l2_hull(std::span<const Mat2> k, double tol = kRankTolerance, int samples_per_segment = 16);

/// L^(1)(K) for a finite K: the points plus every exact segment between a
/// rank-one connected pair.
LaminateSet l1_hull(std::span<const Mat2> k, double tol = kRankTolerance);

/// Decides whether x lies in the next lamination iterate of `s`, i.e.
/// x in [u, v] for some rank-one connected u, v in s. Exact in exact mode
/// as long as `s` holds no approximate segments.
bool step_contains(const LaminateSet& s, const Mat2& x, double tol = kRankTolerance);

/// Exact L^(2)(K) membership for a finite set K.
bool l2_contains(std::span<const Mat2> k, const Mat2& x, double tol = kRankTolerance);

/// A Euclidean (Frobenius) distance carried as its square, which is exact
/// whenever it is rational.
struct Distance {
  Scalar squared;
  bool exact = true;  ///< false when an irrational extremum forced a float evaluation

  /// Exact when `squared` is an exact rational square, float otherwise.
  Scalar value() const;
  bool value_is_exact() const;
  /// Interval around the value, tight to a few ulps.
  std::pair<double, double> enclosure() const;
};

Scalar point_segment_distance_sq(const Mat2& p, const Mat2& a, const Mat2& b);
Scalar segment_segment_distance_sq(const Mat2& a, const Mat2& b, const Mat2& c, const Mat2& d);

/// inf over s2 of the distance to x.
Distance distance_to_set(const Mat2& x, const LaminateSet& s2);
/// sup over s1 of the distance to s2.
Distance directed_hausdorff(const LaminateSet& s1, const LaminateSet& s2);
/// max of both directed distances.
Distance hausdorff(const LaminateSet& s1, const LaminateSet& s2);
/// inf over pairs (distance between the sets, not a metric).
Distance set_distance(const LaminateSet& s1, const LaminateSet& s2);

/// Certificate that {z > 0} union `boundary` is lamination convex in a
/// three-dimensional subspace.
struct SeparatorWitness {
  Subspace subspace = Subspace::upper_triangular;
  std::vector<Mat2> boundary_points;
  std::vector<std::pair<int, int>> pairs;
  std::vector<Scalar> pairwise_dets;
};

/// `boundary` must lie in `subspace` (tri or sym) with z = 0. Throws when two
/// boundary points are rank-one connected.
SeparatorWitness separator_check(std::span<const Mat2> boundary, Subspace subspace);

}  // namespace rohull
