#include "pressure_lab/orbits.hpp"

#include "pressure_lab/errors.hpp"
#include "pressure_lab/parallel.hpp"
#include "pressure_lab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <tuple>

namespace pressure_lab {

std::string to_string(OrbitClass c) {
  switch (c) {
    case OrbitClass::saddle: return "saddle";
    case OrbitClass::elliptic: return "elliptic";
    case OrbitClass::parabolic: return "parabolic";
  }
  return "?";
}

std::string to_string(Exhaustiveness e) {
  switch (e) {
    case Exhaustiveness::verified: return "verified";
    case Exhaustiveness::unverified: return "unverified";
    case Exhaustiveness::truncated: return "truncated";
  }
  return "?";
}

OrbitClass classify(const Mat& multiplier) {
  const Eigen2 e = eigenvalues(multiplier);
  double off_circle = 0.0;
  for (double lm : e.log_moduli) off_circle = std::max(off_circle, std::abs(std::exp(lm) - 1.0));
  if (off_circle > kClassTolerance) return OrbitClass::saddle;
  for (const auto& v : e.values) {
    if (std::abs(v - 1.0) <= kClassTolerance) return OrbitClass::parabolic;
  }
  return OrbitClass::elliptic;
}

PeriodicOrbit PeriodicOrbit::from_steps(std::vector<Point> points, std::vector<Mat> jacobians,
                                        double residual) {
  if (points.empty() || points.size() != jacobians.size()) {
    throw InvalidArgument("periodic orbit needs one Jacobian per orbit point");
  }
  PeriodicOrbit o;
  o.period = static_cast<int>(points.size());
  o.point = points.front();
  o.points = std::move(points);
  o.jacobians = std::move(jacobians);
  o.multiplier = Mat::Identity();
  for (const auto& j : o.jacobians) o.multiplier = j * o.multiplier;
  o.eigen = eigenvalues(o.multiplier);
  o.exponents = {o.eigen.log_moduli[0] / o.period, o.eigen.log_moduli[1] / o.period};
  o.classification = classify(o.multiplier);
  o.residual = residual;
  return o;
}

PeriodicOrbit PeriodicOrbit::trace(const SystemDef& sys, const Point& p, int period) {
  if (period < 1) throw InvalidArgument("period must be >= 1");
  std::vector<Point> pts;
  std::vector<Mat> jac;
  Point y = wrap(p, sys.period());
  for (int i = 0; i < period; ++i) {
    pts.push_back(y);
    jac.push_back(sys.jacobian(y));
    y = sys.eval(y);
  }
  const double residual = torus_distance(y, pts.front(), sys.period());
  return from_steps(std::move(pts), std::move(jac), residual);
}

PeriodicOrbit PeriodicOrbit::inverse() const {
  PeriodicOrbit o;
  o.period = period;
  o.point = point;
  o.points.reserve(points.size());
  o.jacobians.reserve(jacobians.size());
  o.points.push_back(points[0]);
  o.jacobians.push_back(jacobians[period - 1].inverse());
  for (int i = period - 1; i >= 1; --i) {
    o.points.push_back(points[i]);
    o.jacobians.push_back(jacobians[i - 1].inverse());
  }
  o.multiplier = multiplier.inverse();
  o.eigen.complex_pair = eigen.complex_pair;
  o.eigen.values = {1.0 / eigen.values[1], 1.0 / eigen.values[0]};
  o.eigen.log_moduli = {-eigen.log_moduli[1], -eigen.log_moduli[0]};
  o.exponents = {-exponents[1], -exponents[0]};
  o.classification = classification;
  o.residual = residual;
  return o;
}

double PeriodicOrbit::lambda_plus() const {
  return std::max(exponents[0], 0.0) + std::max(exponents[1], 0.0);
}

double PeriodicOrbit::eigen_argument() const { return std::arg(eigen.values[1]); }

std::array<double, 2> orbit_lyapunov(const PeriodicOrbit& orbit) { return orbit.exponents; }

double delta(const PeriodicOrbit& orbit) {
  double pos = 0.0;
  double neg = 0.0;
  for (double l : orbit.exponents) {
    pos += std::max(l, 0.0);
    neg += std::max(-l, 0.0);
  }
  return std::min(pos, neg);
}

double orbit_average(const PeriodicOrbit& orbit, const SystemDef& sys, const Potential& phi) {
  if (phi.is_constant()) return phi.constant_value();
  double s = 0.0;
  for (const auto& p : orbit.points) s += phi(sys, p);
  return s / orbit.period;
}

double delta_phi(const PeriodicOrbit& orbit, const SystemDef& sys, const Potential& phi) {
  return delta(orbit) + orbit_average(orbit, sys, phi);
}

std::size_t OrbitCatalog::fixed_point_count(int n) const {
  std::size_t count = 0;
  for (const auto& o : orbits) {
    if (n % o.period == 0) count += static_cast<std::size_t>(o.period);
  }
  return count;
}

long long linear_fixed_point_count(const Eigen::Matrix2i& a, int n) {
  Eigen::Matrix<long long, 2, 2> p = Eigen::Matrix<long long, 2, 2>::Identity();
  const Eigen::Matrix<long long, 2, 2> al = a.cast<long long>();
  for (int i = 0; i < n; ++i) p = al * p;
  p -= Eigen::Matrix<long long, 2, 2>::Identity();
  return std::llabs(p(0, 0) * p(1, 1) - p(0, 1) * p(1, 0));
}

namespace {

struct NewtonOutcome {
  std::optional<Point> root;
  bool degenerate = false;
};

// F^T on the lift together with its derivative.
Point lifted_power(const SystemDef& sys, const Point& x, int period, Mat* d) {
  Point y = x;
  Mat acc = Mat::Identity();
  for (int i = 0; i < period; ++i) {
    acc = sys.jacobian(y) * acc;
    y = sys.lift(y);
  }
  if (d) *d = acc;
  return y;
}

NewtonOutcome newton(const SystemDef& sys, const Point& seed, int period,
                     const OrbitSearchOptions& opt) {
  const double L = sys.period();
  const Point y0 = lifted_power(sys, seed, period, nullptr);
  const Vec shift = (L * ((y0 - seed) / L).array().round()).matrix();

  auto residual = [&](const Point& x, Mat* d) -> Vec {
    return lifted_power(sys, x, period, d) - x - shift;
  };

  Point x = seed;
  Mat d;
  Vec g = residual(x, &d);
  for (int it = 0; it < opt.newton_iterations; ++it) {
    if (g.cwiseAbs().maxCoeff() < opt.newton_tolerance) return {x, false};
    const Mat m = d - Mat::Identity();
    if (std::abs(m.determinant()) < 1e-13 * (1.0 + m.squaredNorm())) return {std::nullopt, true};
    const Vec step = m.lu().solve(g);
    // Damped retries: halve the step until the residual decreases.
    double scale = 1.0;
    bool accepted = false;
    for (int retry = 0; retry < 12; ++retry) {
      const Point trial = x - scale * step;
      Mat dt;
      const Vec gt = residual(trial, &dt);
      if (gt.norm() < g.norm() || gt.cwiseAbs().maxCoeff() < opt.newton_tolerance) {
        x = trial;
        g = gt;
        d = dt;
        accepted = true;
        break;
      }
      scale *= 0.5;
    }
    if (!accepted) return {std::nullopt, true};
  }
  if (g.cwiseAbs().maxCoeff() < opt.newton_tolerance) return {x, false};
  return {std::nullopt, false};
}

// Coordinates within 1e-9 of the domain edge sort as 0.
double sort_key(double v, double period) { return v > period - 1e-9 ? 0.0 : v; }

bool lex_less(const Point& a, const Point& b, double period) {
  const double ax = sort_key(a.x(), period), bx = sort_key(b.x(), period);
  if (ax != bx) return ax < bx;
  return sort_key(a.y(), period) < sort_key(b.y(), period);
}

}  // namespace

OrbitCatalog find_periodic_orbits(const SystemDef& sys, const OrbitSearchOptions& opt) {
  if (opt.max_period < 1) throw InvalidArgument("max_period must be >= 1");
  if (opt.grid_density < 2) throw InvalidArgument("grid_density must be >= 2");

  const double L = sys.period();
  const int g = opt.grid_density;
  const std::size_t seeds = static_cast<std::size_t>(g) * static_cast<std::size_t>(g);

  OrbitCatalog cat;
  cat.system_name = sys.name();
  cat.max_period = opt.max_period;
  cat.grid_density = g;
  cat.newton_iterations = opt.newton_iterations;
  cat.seed = opt.seed;

  bool truncated = false;
  for (int period = 1; period <= opt.max_period && !truncated; ++period) {
    std::vector<NewtonOutcome> results(seeds);
    parallel_for(seeds, opt.threads, [&](std::size_t s) {
      const std::size_t i = s / static_cast<std::size_t>(g);
      const std::size_t j = s % static_cast<std::size_t>(g);
      SplitMix64 rng(mix_seed(opt.seed, static_cast<std::uint64_t>(period), s));
      const double jx = 0.5 + 0.5 * (rng.uniform() - 0.5);
      const double jy = 0.5 + 0.5 * (rng.uniform() - 0.5);
      const Point seed((static_cast<double>(i) + jx) * L / g, (static_cast<double>(j) + jy) * L / g);
      results[s] = newton(sys, seed, period, opt);
    });

    // Deterministic merge in seed order.
    const std::size_t first_of_period = cat.orbits.size();
    for (const auto& r : results) {
      ++cat.seeds_tried;
      if (r.degenerate) ++cat.seeds_degenerate;
      if (!r.root) continue;
      const Point p = wrap(*r.root, L);
      PeriodicOrbit orbit = PeriodicOrbit::trace(sys, p, period);
      if (orbit.residual > 1e-10) continue;
      bool minimal = true;
      for (int dv = 1; dv < period && minimal; ++dv) {
        if (period % dv == 0 && torus_distance(orbit.points[dv], p, L) < 1e-8) minimal = false;
      }
      if (!minimal) continue;

      bool duplicate = false;
      for (std::size_t k = first_of_period; k < cat.orbits.size() && !duplicate; ++k) {
        for (const auto& q : cat.orbits[k].points) {
          if (torus_distance(q, p, L) < 1e-6) {
            duplicate = true;
            break;
          }
        }
      }
      if (duplicate) continue;

      if (cat.orbits.size() >= opt.max_orbits) {
        truncated = true;
        break;
      }
      // Canonical representative: lexicographically smallest orbit point.
      std::size_t best = 0;
      for (std::size_t k = 1; k < orbit.points.size(); ++k) {
        if (lex_less(orbit.points[k], orbit.points[best], L)) best = k;
      }
      if (best != 0) orbit = PeriodicOrbit::trace(sys, orbit.points[best], period);
      cat.orbits.push_back(std::move(orbit));
    }
  }

  std::stable_sort(cat.orbits.begin(), cat.orbits.end(),
                   [L](const PeriodicOrbit& a, const PeriodicOrbit& b) {
                     if (a.period != b.period) return a.period < b.period;
                     return lex_less(a.point, b.point, L);
                   });

  if (truncated) {
    cat.exhaustiveness = Exhaustiveness::truncated;
  } else if (const LinearStep* lin = sys.as_linear()) {
    bool all = true;
    for (int n = 1; n <= opt.max_period; ++n) {
      const long long expected = linear_fixed_point_count(lin->matrix, n);
      if (expected == 0 || static_cast<long long>(cat.fixed_point_count(n)) != expected) all = false;
    }
    cat.exhaustiveness = all ? Exhaustiveness::verified : Exhaustiveness::unverified;
  }
  return cat;
}

}  // namespace pressure_lab
