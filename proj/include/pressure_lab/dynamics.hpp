#pragma once

#include "pressure_lab/linalg.hpp"
#include "pressure_lab/potential.hpp"
#include "pressure_lab/system.hpp"

#include <vector>

namespace pressure_lab {

inline constexpr int kDefaultCocycleHorizon = 10000;

/// D_x f^n as an explicit matrix: ordered Jacobian product along the orbit
/// (inverse-map Jacobians for n < 0, identity for n = 0).
/// Throws CocycleOverflow when a partial product norm exceeds 1e300.
Mat cocycle(const SystemDef& sys, const Point& x, int n, int horizon = kDefaultCocycleHorizon);

/// Same product, accumulated with a running log-scale. Never overflows.
ScaledMatrix log_cocycle(const SystemDef& sys, const Point& x, int n,
                         int horizon = kDefaultCocycleHorizon);

/// S_n phi(x) = sum_{i<n} phi(f^i x).
double birkhoff_sum(const SystemDef& sys, const Potential& phi, const Point& x, int n);

/// d_n(x, y) = max_{i<n} d(f^i x, f^i y) in the flat torus metric.
double bowen_distance(const SystemDef& sys, const Point& x, const Point& y, int n);

/// Orthonormal k-frame at a basepoint (k in {1, 2}).
struct TangentFrame {
  Point base;
  std::vector<Vec> vectors;

  static TangentFrame line(const Point& base, double angle);
  static TangentFrame full(const Point& base);
  int k() const { return static_cast<int>(vectors.size()); }
};

/// log |Jac(f^n, E)|: log of the k-volume of the frame pushed n steps, with
/// Gram-Schmidt re-orthonormalisation and log-accumulated column norms.
double push_frame_log_volume(const SystemDef& sys, const TangentFrame& frame, int n);

/// Orbit points x, f x, ..., f^{n-1} x and the Jacobians at them.
struct OrbitSegment {
  std::vector<Point> points;
  std::vector<Mat> jacobians;
};
OrbitSegment orbit_segment(const SystemDef& sys, const Point& x, int n);

}  // namespace pressure_lab
