#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "rohull/constructions.hpp"

namespace rohull {

/// Minimal static SVG canvas in world coordinates (y axis pointing up).
class SvgCanvas {
 public:
  SvgCanvas(double xmin, double xmax, double ymin, double ymax, int width = 480);

  void line(double x1, double y1, double x2, double y2, const std::string& style);
  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& style);
  void dot(double x, double y, const std::string& fill, double radius = 3.0);
  void label(double x, double y, const std::string& text);

  std::string str() const;

 private:
  double sx(double x) const;
  double sy(double y) const;

  double xmin_, xmax_, ymin_, ymax_;
  int width_, height_;
  std::string body_;
};

/// K_0 in the diagonal plane, the perturbation P_N and the midpoint chain
/// with its rank-one lines dotted.
std::string staircase_svg(const LaminateSet& k0, const StaircaseChain& chain);

/// Diagonal T4 configuration: the four points, the inner corners and the
/// rank-one legs joining them.
std::string t4_cross_svg(std::span<const Mat2> x, const T4Witness& w);

/// Upper-triangular spiral under an oblique projection, rank-one
/// combination lines dashed.
std::string tri_spiral_svg(const TriSpiralConfig& cfg, const TriSpiralResult& result);

}  // namespace rohull
