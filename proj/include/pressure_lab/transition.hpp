#pragma once

#include "pressure_lab/orbits.hpp"
#include "pressure_lab/potential.hpp"
#include "pressure_lab/pressure.hpp"
#include "pressure_lab/system.hpp"

#include <optional>
#include <span>
#include <vector>

namespace pressure_lab {

struct CurvePoint {
  double t = 0.0;
  double value = 0.0;
  std::size_t argmax = 0;  // catalog index
};

/// One affine branch t -> delta + t * average of the potential along an orbit.
struct AffineBranch {
  double intercept = 0.0;
  double slope = 0.0;
  std::size_t orbit = 0;
};

struct TransitionReport {
  int m = 1;
  std::vector<CurvePoint> curve;
  std::vector<AffineBranch> branches;  // one per catalog orbit
  std::optional<double> t0;
  std::optional<std::size_t> t0_orbit;
  std::vector<std::size_t> candidates;
  /// Breakpoints of the upper envelope of the branches on [0, inf).
  std::vector<double> kinks;
  Exhaustiveness catalog_state = Exhaustiveness::unverified;
};

/// P_est - max over catalog orbits of the orbit average of phi; positive
/// values are evidence (not proof) that phi is a hyperbolic potential.
double hyperbolicity_margin(const OrbitCatalog& catalog, const SystemDef& sys,
                            const Potential& phi, const PressureEstimate& estimate);

struct VariationResult {
  bool hyperbolic = false;  // sup - inf < h_top
  double sup = 0.0;
  double inf = 0.0;
  double variation = 0.0;
  double margin = 0.0;  // h_top - variation
};

/// Sampled sup and inf of phi (grid of ~sample_budget points plus local
/// refinement) against the oscillation criterion sup phi - inf phi < h_top.
VariationResult variation_test(const Potential& phi, const SystemDef& sys, double h_top,
                               int sample_budget);

/// Periodic-orbit pressure of t * phi_m for each t: a maximum of affine
/// functions of t, hence convex and piecewise linear.
TransitionReport pressure_curve(const OrbitCatalog& catalog, const SystemDef& sys, int m,
                                std::span<const double> t_grid);

struct TransitionPoint {
  double t0 = 0.0;
  std::size_t orbit = 0;
};

/// max over catalog saddles of lambda^+ / (-average of phi_m).
TransitionPoint transition_point(const OrbitCatalog& catalog, const SystemDef& sys, int m);

/// Orbits with lambda^+ <= tol and |average of phi - P_est| <= tol.
std::vector<std::size_t> equilibrium_candidates(const OrbitCatalog& catalog,
                                                const SystemDef& sys, const Potential& phi,
                                                const PressureEstimate& estimate,
                                                double tol = 1e-6);

/// Breakpoints in [t_min, inf) of the upper envelope of a family of lines.
std::vector<double> envelope_kinks(std::span<const AffineBranch> branches, double t_min = 0.0);

}  // namespace pressure_lab
