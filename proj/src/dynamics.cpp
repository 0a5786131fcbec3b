#include "pressure_lab/dynamics.hpp"

#include "pressure_lab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

namespace pressure_lab {
namespace {

void check_horizon(int n, int horizon) {
  if (std::abs(n) > horizon) {
    throw InvalidArgument("cocycle length " + std::to_string(n) + " exceeds horizon " +
                          std::to_string(horizon));
  }
}

}  // namespace

Mat cocycle(const SystemDef& sys, const Point& x, int n, int horizon) {
  check_horizon(n, horizon);
  Mat d = Mat::Identity();
  Point y = x;
  const int steps = std::abs(n);
  for (int i = 0; i < steps; ++i) {
    if (n > 0) {
      d = sys.jacobian(y) * d;
      y = sys.eval(y);
    } else {
      d = sys.inverse_jacobian(y) * d;
      y = sys.eval_inverse(y);
    }
    if (!(d.cwiseAbs().maxCoeff() <= 1e300)) {
      throw CocycleOverflow("cocycle norm exceeds 1e300 after " + std::to_string(i + 1) +
                            " steps; use log_cocycle");
    }
  }
  return d;
}

ScaledMatrix log_cocycle(const SystemDef& sys, const Point& x, int n, int horizon) {
  check_horizon(n, horizon);
  ScaledMatrix d;
  Point y = x;
  const int steps = std::abs(n);
  for (int i = 0; i < steps; ++i) {
    if (n > 0) {
      d.left_multiply(sys.jacobian(y));
      y = sys.eval(y);
    } else {
      d.left_multiply(sys.inverse_jacobian(y));
      y = sys.eval_inverse(y);
    }
  }
  return d;
}

double birkhoff_sum(const SystemDef& sys, const Potential& phi, const Point& x, int n) {
  if (n < 1) throw InvalidArgument("Birkhoff sum length must be >= 1");
  if (phi.is_constant()) return n * phi.constant_value();
  double s = 0.0;
  Point y = x;
  for (int i = 0; i < n; ++i) {
    s += phi(sys, y);
    y = sys.eval(y);
  }
  return s;
}

double bowen_distance(const SystemDef& sys, const Point& x, const Point& y, int n) {
  if (n < 1) throw InvalidArgument("Bowen distance length must be >= 1");
  double d = 0.0;
  Point a = x;
  Point b = y;
  for (int i = 0; i < n; ++i) {
    d = std::max(d, torus_distance(a, b, sys.period()));
    if (i + 1 < n) {
      a = sys.eval(a);
      b = sys.eval(b);
    }
  }
  return d;
}

TangentFrame TangentFrame::line(const Point& base, double angle) {
  return {base, {Vec(std::cos(angle), std::sin(angle))}};
}

TangentFrame TangentFrame::full(const Point& base) {
  return {base, {Vec(1.0, 0.0), Vec(0.0, 1.0)}};
}

double push_frame_log_volume(const SystemDef& sys, const TangentFrame& frame, int n) {
  if (frame.vectors.empty() || frame.vectors.size() > 2) {
    throw InvalidArgument("frame must hold 1 or 2 vectors");
  }
  std::vector<Vec> v = frame.vectors;
  double log_volume = 0.0;
  Point y = frame.base;
  for (int i = 0; i < n; ++i) {
    const Mat j = sys.jacobian(y);
    for (auto& w : v) w = j * w;
    // Gram-Schmidt: volume = product of the orthogonalised column norms.
    const double n0 = v[0].norm();
    v[0] /= n0;
    log_volume += std::log(n0);
    if (v.size() == 2) {
      v[1] -= v[0].dot(v[1]) * v[0];
      const double n1 = v[1].norm();
      v[1] /= n1;
      log_volume += std::log(n1);
    }
    y = sys.eval(y);
  }
  return log_volume;
}

OrbitSegment orbit_segment(const SystemDef& sys, const Point& x, int n) {
  OrbitSegment seg;
  seg.points.reserve(static_cast<std::size_t>(n));
  seg.jacobians.reserve(static_cast<std::size_t>(n));
  Point y = x;
  for (int i = 0; i < n; ++i) {
    seg.points.push_back(y);
    seg.jacobians.push_back(sys.jacobian(y));
    y = sys.eval(y);
  }
  return seg;
}

}  // namespace pressure_lab
