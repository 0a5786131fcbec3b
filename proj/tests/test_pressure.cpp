#include "doctest.h"

#include "gen.hpp"
#include "oracles.hpp"

#include "pressure_lab/errors.hpp"
#include "pressure_lab/grassmann.hpp"
#include "pressure_lab/pressure.hpp"

#include <cmath>

using namespace pressure_lab;

namespace {

OrbitCatalog catalog(const SystemDef& sys, int max_period, int grid = 16) {
  OrbitSearchOptions o;
  o.max_period = max_period;
  o.grid_density = grid;
  o.seed = 3;
  return find_periodic_orbits(sys, o);
}

GrassmannOptions quick_grassmann() {
  GrassmannOptions g;
  g.n_list = {1, 2, 4};
  g.basepoint_grid = 16;
  g.angle_grid = 64;
  g.seed = 5;
  return g;
}

BowenOptions quick_bowen() {
  BowenOptions b;
  b.n_min = 3;
  b.n_max = 6;
  b.epsilon = 0.1;
  b.grid_density = 24;
  b.seed = 9;
  return b;
}

}  // namespace

TEST_SUITE("pressure") {

TEST_CASE("periodic pressure examples") {
  const auto cat = SystemDef::cat_map();
  const OrbitCatalog c = catalog(cat, 3);
  const auto p0 = periodic_pressure(c, cat, Potential::zero());
  CHECK(p0.estimate.value == doctest::Approx(oracle::log_cat_lambda()).epsilon(1e-12));
  CHECK(p0.estimate.bound_kind == BoundKind::lower);
  CHECK(p0.estimate.series.size() == c.size());
  CHECK(std::abs(periodic_pressure(c, cat, Potential::geometric(1)).estimate.value) < 1e-12);

  const auto sm = SystemDef::standard_map(1.0);
  const OrbitCatalog s = catalog(sm, 1, 24);
  const auto ps = periodic_pressure(s, sm, Potential::zero());
  CHECK(ps.estimate.value == doctest::Approx(oracle::log_cat_lambda()).epsilon(1e-10));
  CHECK(torus_distance(s.orbits[ps.argmax].point, {0, 0}, kTwoPi) < 1e-10);
  CHECK(ps.estimate.has_flag("catalog-unverified"));

  CHECK_THROWS_AS(periodic_pressure(OrbitCatalog{}, cat, Potential::zero()), EmptyCatalog);
}

TEST_CASE("periodic pressure bounds the plain orbit averages from above") {
  const auto sm = SystemDef::standard_map(1.5);
  const OrbitCatalog c = catalog(sm, 3, 20);
  const Potential phi = Potential::expression("0.3*cos(x) + 0.2*sin(x + y)");
  const double p = periodic_pressure(c, sm, phi).estimate.value;
  for (const auto& o : c.orbits) CHECK(p >= orbit_average(o, sm, phi) - 1e-12);
}

TEST_CASE("line fibre sup matches the spectral norm") {
  gen::Source g(17);
  for (int i = 0; i < 200; ++i) {
    Mat m;
    m << g.uniform(-3, 3), g.uniform(-3, 3), g.uniform(-3, 3), g.uniform(-3, 3);
    const FiberSup s = line_fiber_sup(m, 64, 40);
    CHECK(s.log_stretch == doctest::Approx(std::log(oracle::svd_norm(m))).epsilon(1e-9));
    CHECK(s.log_stretch <= std::log(oracle::svd_norm(m)) + 1e-12);
  }
}

TEST_CASE("sigma_k on the cat map") {
  const auto cat = SystemDef::cat_map();
  const auto g = quick_grassmann();
  const SigmaK s1 = sigma_k(cat, Potential::zero(), 1, g);
  for (double v : s1.per_n_sup) CHECK(v == doctest::Approx(oracle::log_cat_lambda()).epsilon(1e-9));
  CHECK(s1.estimate.bound_kind == BoundKind::upper);
  const SigmaK s2 = sigma_k(cat, Potential::zero(), 2, g);
  for (double v : s2.per_n_sup) CHECK(std::abs(v) < 1e-9);

  const SigmaK s1c = sigma_k(cat, Potential::constant(0.4), 1, g);
  CHECK(s1c.estimate.value == doctest::Approx(s1.estimate.value + 0.4).epsilon(1e-12));

  const auto gp = grassmann_pressure(cat, Potential::zero(), g);
  CHECK(gp.argmax_k == 1);
  CHECK(gp.estimate.value == doctest::Approx(oracle::log_cat_lambda()).epsilon(1e-9));
  const auto gg = grassmann_pressure(cat, Potential::geometric(1), g);
  CHECK(std::abs(gg.estimate.value) < 1e-9);
  CHECK(gg.argmax_k == 1);
  CHECK(gg.estimate.parameters.at("sigma_2") == doctest::Approx(-oracle::log_cat_lambda()).epsilon(1e-9));

  // sigma_2 of a constant potential on an area-preserving map is the constant.
  const auto gc = grassmann_pressure(SystemDef::standard_map(1.0), Potential::constant(-0.3), g);
  CHECK(gc.estimate.value >= -0.3 - 1e-12);
}

TEST_CASE("sigma_k is deterministic across thread counts") {
  auto g = quick_grassmann();
  const auto sm = SystemDef::standard_map(1.1);
  const SigmaK a = sigma_k(sm, Potential::zero(), 1, g);
  g.threads = 4;
  const SigmaK b = sigma_k(sm, Potential::zero(), 1, g);
  CHECK(a.per_n_sup == b.per_n_sup);
}

TEST_CASE("bowen estimator: identity, constant shift, budget") {
  auto b = quick_bowen();
  const auto id = SystemDef::identity();
  CHECK(std::abs(bowen_pressure(id, Potential::zero(), b).estimate.value) < 0.01);

  const auto cat = SystemDef::cat_map();
  const double p0 = bowen_pressure(cat, Potential::zero(), b).estimate.value;
  const double p1 = bowen_pressure(cat, Potential::constant(0.3), b).estimate.value;
  CHECK(p1 - p0 == doctest::Approx(0.3).epsilon(1e-9));

  b.max_samples = 5000;
  const auto capped = bowen_pressure(cat, Potential::zero(), b);
  CHECK(capped.budget_exceeded);
  CHECK(capped.estimate.has_flag("budget-exceeded"));

  auto bad = quick_bowen();
  bad.epsilon = 0.3;
  CHECK_THROWS_AS(bowen_pressure(cat, Potential::zero(), bad), InvalidArgument);
}

TEST_CASE("cross validation flags") {
  CrossValidationOptions o;
  o.orbits.max_period = 2;
  o.bowen = quick_bowen();
  o.grassmann = quick_grassmann();
  o.tolerance = 0.1;
  const auto id = cross_validate(SystemDef::identity(), Potential::zero(), o);
  // The identity has no isolated periodic orbits: periodic fails, recorded as a flag.
  CHECK(!id.flags.empty());
  CHECK(std::abs(id.grassmann.value) < 1e-9);
  CHECK(std::abs(id.bowen.value) < 0.01);
}

}  // TEST_SUITE
