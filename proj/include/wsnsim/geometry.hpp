#pragma once

#include <cmath>

namespace wsnsim {

/// Planar position in meters.
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(Point a, Point b) { return a.x == b.x && a.y == b.y; }
};

inline double distance(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

/// Chebyshev distance from the origin; concentric square rings are level sets
/// of this metric.
inline double cheb_radius(double qx, double qy) {
  return std::max(std::abs(qx), std::abs(qy));
}

}  // namespace wsnsim
