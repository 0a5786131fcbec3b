#pragma once

#include <Eigen/Dense>

#include <cmath>

namespace pressure_lab {

using Point = Eigen::Vector2d;
using Vec = Eigen::Vector2d;
using Mat = Eigen::Matrix2d;

inline constexpr int kDim = 2;
inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Reduces a lifted coordinate into the half-open interval [0, period).
inline double wrap_coordinate(double v, double period) {
  double r = std::fmod(v, period);
  if (r < 0.0) r += period;
  if (r >= period) r = 0.0;  // -tiny + period rounds up to period
  return r;
}

inline Point wrap(const Point& p, double period) {
  return {wrap_coordinate(p.x(), period), wrap_coordinate(p.y(), period)};
}

/// Shortest signed representative of d modulo period, in [-period/2, period/2].
inline double wrap_displacement(double d, double period) {
  return d - period * std::nearbyint(d / period);
}

inline Vec torus_displacement(const Point& from, const Point& to, double period) {
  return {wrap_displacement(to.x() - from.x(), period),
          wrap_displacement(to.y() - from.y(), period)};
}

/// Flat torus metric.
inline double torus_distance(const Point& a, const Point& b, double period) {
  return torus_displacement(a, b, period).norm();
}

}  // namespace pressure_lab
