#pragma once

#include "pressure_lab/linalg.hpp"
#include "pressure_lab/potential.hpp"
#include "pressure_lab/system.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace pressure_lab {

enum class OrbitClass { saddle, elliptic, parabolic };

std::string to_string(OrbitClass c);

/// Tolerance band separating the three classes.
inline constexpr double kClassTolerance = 1e-6;

OrbitClass classify(const Mat& multiplier);

struct PeriodicOrbit {
  Point point;
  int period = 1;
  std::vector<Point> points;     // p, f p, ..., f^{T-1} p
  std::vector<Mat> jacobians;    // D f at each orbit point
  Mat multiplier = Mat::Identity();
  Eigen2 eigen;
  std::array<double, 2> exponents{};  // ascending
  OrbitClass classification = OrbitClass::parabolic;
  double residual = 0.0;

  /// Builds every derived field from the orbit points and per-point Jacobians.
  static PeriodicOrbit from_steps(std::vector<Point> points, std::vector<Mat> jacobians,
                                  double residual = 0.0);
  /// Traces the orbit of p under sys for `period` steps.
  static PeriodicOrbit trace(const SystemDef& sys, const Point& p, int period);

  /// The same orbit regarded as an orbit of f^{-1}: exponents negated exactly.
  PeriodicOrbit inverse() const;

  /// Sum of positive exponents.
  double lambda_plus() const;
  /// Argument of the eigenvalue with non-negative imaginary part.
  double eigen_argument() const;
};

inline OrbitClass classify(const PeriodicOrbit& orbit) { return classify(orbit.multiplier); }

/// (1/T) log|eig_i| in ascending order.
std::array<double, 2> orbit_lyapunov(const PeriodicOrbit& orbit);

/// min(sum of positive parts, sum of negative parts) of the exponents.
double delta(const PeriodicOrbit& orbit);

/// Orbit average of phi.
double orbit_average(const PeriodicOrbit& orbit, const SystemDef& sys, const Potential& phi);

/// delta(orbit) + orbit average of phi.
double delta_phi(const PeriodicOrbit& orbit, const SystemDef& sys, const Potential& phi);

enum class Exhaustiveness {
  verified,    // counts match the Lefschetz/determinant count (linear systems)
  unverified,  // nothing contradicts completeness, nothing certifies it
  truncated,   // a search budget was exhausted
};

std::string to_string(Exhaustiveness e);

struct OrbitSearchOptions {
  int max_period = 1;
  int grid_density = 16;
  std::uint64_t seed = 0;
  int newton_iterations = 50;
  double newton_tolerance = 1e-12;
  std::size_t max_orbits = 200000;
  int threads = 1;
};

struct OrbitCatalog {
  std::string system_name;
  int max_period = 0;
  std::vector<PeriodicOrbit> orbits;  // sorted by (period, representative)
  int grid_density = 0;
  int newton_iterations = 0;
  std::uint64_t seed = 0;
  std::size_t seeds_tried = 0;
  std::size_t seeds_degenerate = 0;  // singular Newton system after damped retries
  Exhaustiveness exhaustiveness = Exhaustiveness::unverified;

  bool empty() const { return orbits.empty(); }
  std::size_t size() const { return orbits.size(); }
  /// Number of points with f^n x = x: sum over periods T | n of T * #orbits(T).
  std::size_t fixed_point_count(int n) const;
};

/// Newton search on the lifted displacement F^T(x) - x - L k from a jittered
/// seed grid; deduplicated up to cyclic shift, deterministic for a fixed seed.
OrbitCatalog find_periodic_orbits(const SystemDef& sys, const OrbitSearchOptions& options);

/// |det(A^n - I)| for a toral automorphism.
long long linear_fixed_point_count(const Eigen::Matrix2i& a, int n);

}  // namespace pressure_lab
