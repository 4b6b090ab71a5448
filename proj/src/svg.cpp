#include "rohull/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

namespace rohull {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

constexpr const char* kPointStyle = "#1f3b73";
constexpr const char* kExtraStyle = "#b22222";
constexpr const char* kDotted = "stroke:#555;stroke-width:1;stroke-dasharray:2,3;fill:none";
constexpr const char* kDashed = "stroke:#555;stroke-width:1;stroke-dasharray:6,4;fill:none";
constexpr const char* kSolid = "stroke:#222;stroke-width:1.2;fill:none";
constexpr const char* kAxis = "stroke:#bbb;stroke-width:0.8";

struct Bounds {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  void add(double x, double y) {
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  SvgCanvas canvas(double pad = 0.1) const {
    double px = std::max(xmax - xmin, 1e-9) * pad, py = std::max(ymax - ymin, 1e-9) * pad;
    return SvgCanvas(xmin - px, xmax + px, ymin - py, ymax + py);
  }
};

}  // namespace

SvgCanvas::SvgCanvas(double xmin, double xmax, double ymin, double ymax, int width)
    : xmin_(xmin), xmax_(xmax), ymin_(ymin), ymax_(ymax), width_(width) {
  height_ = std::max(1, static_cast<int>(width * (ymax - ymin) / (xmax - xmin)));
}

double SvgCanvas::sx(double x) const { return (x - xmin_) / (xmax_ - xmin_) * width_; }
double SvgCanvas::sy(double y) const { return (ymax_ - y) / (ymax_ - ymin_) * height_; }

void SvgCanvas::line(double x1, double y1, double x2, double y2, const std::string& style) {
  body_ += "  <line x1=\"" + num(sx(x1)) + "\" y1=\"" + num(sy(y1)) + "\" x2=\"" + num(sx(x2)) + "\" y2=\"" +
           num(sy(y2)) + "\" style=\"" + style + "\"/>\n";
}

void SvgCanvas::polyline(const std::vector<std::pair<double, double>>& pts, const std::string& style) {
  body_ += "  <polyline points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) body_ += ' ';
    body_ += num(sx(pts[i].first)) + "," + num(sy(pts[i].second));
  }
  body_ += "\" style=\"" + style + "\"/>\n";
}

void SvgCanvas::dot(double x, double y, const std::string& fill, double radius) {
  body_ += "  <circle cx=\"" + num(sx(x)) + "\" cy=\"" + num(sy(y)) + "\" r=\"" + num(radius) + "\" fill=\"" +
           fill + "\"/>\n";
}

void SvgCanvas::label(double x, double y, const std::string& text) {
  body_ += "  <text x=\"" + num(sx(x) + 4) + "\" y=\"" + num(sy(y) - 4) +
           "\" font-family=\"sans-serif\" font-size=\"11\">" + text + "</text>\n";
}

std::string SvgCanvas::str() const {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(width_) + "\" height=\"" + std::to_string(height_) + "\" viewBox=\"0 0 " +
         std::to_string(width_) + " " + std::to_string(height_) + "\">\n" + body_ + "</svg>\n";
}

std::string staircase_svg(const LaminateSet& k0, const StaircaseChain& chain) {
  Bounds b;
  b.add(0, 0);
  for (const auto& p : k0.points) b.add(p.a11.to_double(), p.a22.to_double());
  auto c = b.canvas();
  c.line(b.xmin, 0, b.xmax, 0, kAxis);
  c.line(0, b.ymin, 0, b.ymax, kAxis);
  for (const auto& s : chain.steps) {
    c.line(s.left.x.to_double(), s.left.y.to_double(), s.right.x.to_double(), s.right.y.to_double(), kDotted);
    c.dot(s.result.x.to_double(), s.result.y.to_double(), "#777", 1.8);
  }
  for (const auto& p : k0.points) c.dot(p.a11.to_double(), p.a22.to_double(), kPointStyle);
  c.dot(chain.perturbation.x.to_double(), chain.perturbation.y.to_double(), kExtraStyle);
  c.dot(chain.final_point.x.to_double(), chain.final_point.y.to_double(), kExtraStyle);
  c.label(chain.final_point.x.to_double(), chain.final_point.y.to_double(), "(0,1)");
  return c.str();
}

std::string t4_cross_svg(std::span<const Mat2> x, const T4Witness& w) {
  Bounds b;
  for (const auto& m : x) b.add(to_diag(m).x.to_double(), to_diag(m).y.to_double());
  auto c = b.canvas();
  std::vector<std::pair<double, double>> corners;
  for (int k = 0; k <= 4; ++k) {
    DiagPt q = to_diag(w.corner(k % 4));
    corners.emplace_back(q.x.to_double(), q.y.to_double());
  }
  c.polyline(corners, kSolid);
  for (int k = 1; k <= 4; ++k) {
    DiagPt q = to_diag(w.corner(k - 1));
    DiagPt p = to_diag(x[w.ordering[k - 1]]);
    c.line(q.x.to_double(), q.y.to_double(), p.x.to_double(), p.y.to_double(), kDotted);
  }
  for (int k = 1; k <= 4; ++k) {
    DiagPt p = to_diag(x[w.ordering[k - 1]]);
    c.dot(p.x.to_double(), p.y.to_double(), kPointStyle);
    c.label(p.x.to_double(), p.y.to_double(), "X" + std::to_string(k));
    c.dot(corners[k - 1].first, corners[k - 1].second, kExtraStyle, 2.2);
  }
  return c.str();
}

std::string tri_spiral_svg(const TriSpiralConfig& cfg, const TriSpiralResult& result) {
  // Oblique projection (x, y, z) -> (x + z/2, y + z/2).
  auto proj = [](double x, double y, double z) { return std::pair{x + 0.5 * z, y + 0.5 * z}; };
  Bounds b;
  auto outer = cfg.diag.outer();
  auto corners = cfg.diag.corners();
  for (const auto& a : outer) b.add(a.x.to_double(), a.y.to_double());
  std::vector<std::pair<double, double>> path;
  for (const auto& p : result.iterates) {
    path.push_back(proj(p.x.to_double(), p.y.to_double(), p.z.to_double()));
    b.add(path.back().first, path.back().second);
  }
  auto c = b.canvas();
  std::vector<std::pair<double, double>> rect;
  for (int i = 0; i <= 4; ++i) rect.emplace_back(corners[i % 4].x.to_double(), corners[i % 4].y.to_double());
  c.polyline(rect, kSolid);
  for (std::size_t i = 0; i + 1 < result.iterates.size(); ++i) {
    const auto& a = outer[i % 4];
    c.line(a.x.to_double(), a.y.to_double(), path[i].first, path[i].second, kDashed);
  }
  c.polyline(path, "stroke:#b22222;stroke-width:1;fill:none");
  for (int i = 0; i < 4; ++i) {
    c.dot(outer[i].x.to_double(), outer[i].y.to_double(), kPointStyle);
    c.label(outer[i].x.to_double(), outer[i].y.to_double(), "A" + std::to_string(i));
  }
  for (const auto& p : path) c.dot(p.first, p.second, kExtraStyle, 1.6);
  return c.str();
}

}  // namespace rohull
