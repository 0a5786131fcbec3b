#include "pressure_lab/transition.hpp"

#include "pressure_lab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pressure_lab {

double hyperbolicity_margin(const OrbitCatalog& catalog, const SystemDef& sys,
                            const Potential& phi, const PressureEstimate& estimate) {
  if (catalog.empty()) throw EmptyCatalog();
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& o : catalog.orbits) best = std::max(best, orbit_average(o, sys, phi));
  return estimate.value - best;
}

VariationResult variation_test(const Potential& phi, const SystemDef& sys, double h_top,
                               int sample_budget) {
  if (!(h_top >= 0.0)) throw InvalidArgument("h_top must be >= 0");
  if (sample_budget < 1) throw InvalidArgument("sample budget must be positive");
  phi.check_compatible(sys);

  VariationResult out;
  if (phi.is_constant()) {
    out.sup = out.inf = phi.constant_value();
  } else {
    const double L = sys.period();
    const int side = std::max(2, static_cast<int>(std::sqrt(static_cast<double>(sample_budget))));
    const double h = L / side;
    Point arg_max(0, 0), arg_min(0, 0);
    out.sup = -std::numeric_limits<double>::infinity();
    out.inf = std::numeric_limits<double>::infinity();
    for (int i = 0; i < side; ++i) {
      for (int j = 0; j < side; ++j) {
        const Point x(i * h, j * h);
        const double v = phi(sys, x);
        if (v > out.sup) { out.sup = v; arg_max = x; }
        if (v < out.inf) { out.inf = v; arg_min = x; }
      }
    }
    // Compass search from the best grid points.
    auto polish = [&](Point x, double v, double sign) {
      double step = h;
      for (int it = 0; it < 60 && step > 1e-12 * L; ++it) {
        bool moved = false;
        for (int d = 0; d < 4; ++d) {
          Point y = x;
          y[d / 2] += (d % 2 ? -step : step);
          y = wrap(y, L);
          const double w = phi(sys, y);
          if (sign * (w - v) > 0.0) { x = y; v = w; moved = true; }
        }
        if (!moved) step *= 0.5;
      }
      return v;
    };
    out.sup = polish(arg_max, out.sup, 1.0);
    out.inf = polish(arg_min, out.inf, -1.0);
  }
  out.variation = out.sup - out.inf;
  out.margin = h_top - out.variation;
  out.hyperbolic = out.variation < h_top;
  return out;
}

std::vector<double> envelope_kinks(std::span<const AffineBranch> branches, double t_min) {
  std::vector<double> kinks;
  if (branches.empty()) return kinks;
  auto value = [&](std::size_t i, double t) { return branches[i].intercept + t * branches[i].slope; };
  // Winner at t_min; ties go to the steeper line, which wins just after.
  std::size_t cur = 0;
  for (std::size_t i = 1; i < branches.size(); ++i) {
    const double a = value(i, t_min), b = value(cur, t_min);
    if (a > b || (a == b && branches[i].slope > branches[cur].slope)) cur = i;
  }
  double t = t_min;
  for (;;) {
    std::size_t next = cur;
    double t_next = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < branches.size(); ++i) {
      const double ds = branches[i].slope - branches[cur].slope;
      if (ds <= 0.0) continue;
      const double tc = std::max(t, (branches[cur].intercept - branches[i].intercept) / ds);
      if (tc < t_next || (tc == t_next && branches[i].slope > branches[next].slope)) {
        t_next = tc;
        next = i;
      }
    }
    if (next == cur) break;
    if (t_next > t_min && (kinks.empty() || t_next > kinks.back())) kinks.push_back(t_next);
    cur = next;
    t = t_next;
  }
  return kinks;
}

TransitionReport pressure_curve(const OrbitCatalog& catalog, const SystemDef& sys, int m,
                                std::span<const double> t_grid) {
  if (catalog.empty()) throw EmptyCatalog();
  if (m < 1) throw InvalidArgument("m must be >= 1");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] >= 0.0) || !std::isfinite(t_grid[i])) throw InvalidArgument("t grid must lie in [0, inf)");
    if (i > 0 && t_grid[i] <= t_grid[i - 1]) throw InvalidArgument("t grid must be ascending");
  }

  TransitionReport rep;
  rep.m = m;
  rep.catalog_state = catalog.exhaustiveness;
  const Potential phi_m = Potential::geometric(m);
  rep.branches.resize(catalog.size());
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    const auto& o = catalog.orbits[i];
    rep.branches[i] = {delta(o), orbit_average(o, sys, phi_m), i};
  }

  rep.curve.reserve(t_grid.size());
  for (double t : t_grid) {
    CurvePoint c{t, -std::numeric_limits<double>::infinity(), 0};
    for (const auto& b : rep.branches) {
      const double v = b.intercept + t * b.slope;
      if (v > c.value) {
        c.value = v;
        c.argmax = b.orbit;
      }
    }
    rep.curve.push_back(c);
  }
  rep.kinks = envelope_kinks(rep.branches, 0.0);
  return rep;
}

TransitionPoint transition_point(const OrbitCatalog& catalog, const SystemDef& sys, int m) {
  if (m < 1) throw InvalidArgument("m must be >= 1");
  const Potential phi_m = Potential::geometric(m);
  TransitionPoint best;
  bool found = false;
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    const auto& o = catalog.orbits[i];
    if (o.classification != OrbitClass::saddle) continue;
    const double denom = -orbit_average(o, sys, phi_m);
    if (!(denom > 0.0)) {
      throw NumericalFault("non-positive -average of phi_m along a saddle orbit");
    }
    const double r = o.lambda_plus() / denom;
    if (!found || r > best.t0) {
      best = {r, i};
      found = true;
    }
  }
  if (!found) throw NoSaddle();
  return best;
}

std::vector<std::size_t> equilibrium_candidates(const OrbitCatalog& catalog,
                                                const SystemDef& sys, const Potential& phi,
                                                const PressureEstimate& estimate, double tol) {
  if (!(tol >= 0.0)) throw InvalidArgument("tolerance must be >= 0");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    const auto& o = catalog.orbits[i];
    if (std::abs(o.lambda_plus()) > tol) continue;
    if (std::abs(orbit_average(o, sys, phi) - estimate.value) > tol) continue;
    out.push_back(i);
  }
  return out;
}

}  // namespace pressure_lab
