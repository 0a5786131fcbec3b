#include "doctest.h"

#include "oracles.hpp"

#include "pressure_lab/errors.hpp"
#include "pressure_lab/orbits.hpp"

#include <cmath>

using namespace pressure_lab;

namespace {

OrbitCatalog search(const SystemDef& sys, int max_period, int grid = 16, std::uint64_t seed = 1) {
  OrbitSearchOptions o;
  o.max_period = max_period;
  o.grid_density = grid;
  o.seed = seed;
  return find_periodic_orbits(sys, o);
}

// Verifies one catalog entry from scratch against the system.
void check_entry(const SystemDef& sys, const PeriodicOrbit& o) {
  const double L = sys.period();
  Point y = o.point;
  for (int t = 1; t <= o.period; ++t) {
    y = sys.eval(y);
    const double d = torus_distance(y, o.point, L);
    if (t < o.period) {
      CHECK(d > 1e-8);  // minimal period
    } else {
      CHECK(d <= 1e-10);
    }
  }
  CHECK(o.residual <= 1e-10);
  CHECK(std::abs(std::abs(o.multiplier.determinant()) - 1.0) < 1e-8);
  CHECK(std::abs(o.exponents[0] + o.exponents[1]) < 1e-8);
  CHECK(o.exponents[0] <= o.exponents[1]);
}

}  // namespace

TEST_SUITE("orbits") {

TEST_CASE("cat map catalogs match the determinant count") {
  const auto cat = SystemDef::cat_map();
  const OrbitCatalog c1 = search(cat, 1);
  REQUIRE(c1.size() == 1);
  CHECK(torus_distance(c1.orbits[0].point, {0, 0}, 1.0) < 1e-12);

  const OrbitCatalog c2 = search(cat, 2);
  CHECK(c2.size() == 3);
  CHECK(c2.fixed_point_count(2) == 5);

  Eigen::Matrix2i a;
  a << 2, 1, 1, 1;
  const OrbitCatalog c4 = search(cat, 4);
  for (int n = 1; n <= 4; ++n) {
    CHECK(c4.fixed_point_count(n) == static_cast<std::size_t>(oracle::fixed_points_linear(a, n)));
    CHECK(linear_fixed_point_count(a, n) == oracle::fixed_points_linear(a, n));
  }
  CHECK(c4.exhaustiveness == Exhaustiveness::verified);
  for (const auto& o : c4.orbits) check_entry(cat, o);
}

TEST_CASE("no duplicate orbits; periods bounded") {
  const auto sys = SystemDef::standard_map(1.3);
  const OrbitCatalog c = search(sys, 4, 24);
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK(c.orbits[i].period <= 4);
    check_entry(sys, c.orbits[i]);
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      if (c.orbits[i].period != c.orbits[j].period) continue;
      for (const auto& p : c.orbits[j].points) {
        CHECK(torus_distance(p, c.orbits[i].point, sys.period()) >= 1e-6);
      }
    }
  }
}

TEST_CASE("standard map K = 1 fixed points") {
  const auto sm = SystemDef::standard_map(1.0);
  const OrbitCatalog c = search(sm, 1, 24);
  REQUIRE(c.size() == 2);
  const auto& saddle = c.orbits[0];
  const auto& ell = c.orbits[1];
  CHECK(torus_distance(saddle.point, {0, 0}, kTwoPi) < 1e-10);
  CHECK(torus_distance(ell.point, {oracle::pi, 0}, kTwoPi) < 1e-10);
  CHECK(saddle.classification == OrbitClass::saddle);
  CHECK(ell.classification == OrbitClass::elliptic);
  CHECK(saddle.lambda_plus() == doctest::Approx(oracle::log_cat_lambda()).epsilon(1e-10));
  CHECK(std::abs(ell.eigen_argument() - oracle::pi / 3) < 1e-9);
  CHECK(orbit_lyapunov(ell)[0] == 0.0);
  CHECK(orbit_lyapunov(ell)[1] == 0.0);
}

TEST_CASE("classification") {
  Mat m;
  m << 2, 1, 1, 1;
  CHECK(classify(m) == OrbitClass::saddle);
  m << 0, 1, -1, 1;
  CHECK(classify(m) == OrbitClass::elliptic);
  CHECK(classify(Mat::Identity()) == OrbitClass::parabolic);
  m << 1, 1, 0, 1;
  CHECK(classify(m) == OrbitClass::parabolic);
  CHECK(classify(Mat(-Mat::Identity())) == OrbitClass::elliptic);
  // Just outside / inside the tolerance band.
  const double s = 1 + 1e-5;
  m << s, 0, 0, 1 / s;
  CHECK(classify(m) == OrbitClass::saddle);
  const double r = 1 + 1e-8;
  m << r, 0, 0, 1 / r;
  CHECK(classify(m) == OrbitClass::parabolic);
}

TEST_CASE("exponents and delta") {
  const auto cat = SystemDef::cat_map();
  const OrbitCatalog c = search(cat, 2);
  for (const auto& o : c.orbits) {
    const auto l = orbit_lyapunov(o);
    CHECK(l[0] == doctest::Approx(-oracle::log_cat_lambda()).epsilon(1e-12));
    CHECK(l[1] == doctest::Approx(oracle::log_cat_lambda()).epsilon(1e-12));
    CHECK(delta(o) == doctest::Approx(oracle::log_cat_lambda()).epsilon(1e-12));
    CHECK(std::abs(delta_phi(o, cat, Potential::geometric(1))) < 1e-12);
    CHECK(delta_phi(o, cat, Potential::constant(0.25)) == doctest::Approx(delta(o) + 0.25));
    CHECK(delta(o.inverse()) == delta(o));
  }
  const auto sm = SystemDef::standard_map(1.0);
  const auto ell = PeriodicOrbit::trace(sm, {oracle::pi, 0}, 1);
  CHECK(delta(ell) == 0.0);
  CHECK(delta_phi(ell, sm, Potential::geometric(1)) == doctest::Approx(-oracle::log_golden()).epsilon(1e-12));
}

TEST_CASE("inverse orbit negates exponents exactly") {
  const auto sm = SystemDef::standard_map(1.7);
  for (const auto& o : search(sm, 3, 24).orbits) {
    const auto inv = o.inverse();
    CHECK(inv.exponents[0] == -o.exponents[1]);
    CHECK(inv.exponents[1] == -o.exponents[0]);
    CHECK(delta(inv) == delta(o));
    CHECK(inv.classification == o.classification);
  }
}

TEST_CASE("search is deterministic and thread-count independent") {
  const auto sm = SystemDef::standard_map(1.2);
  OrbitSearchOptions o;
  o.max_period = 3;
  o.grid_density = 20;
  o.seed = 42;
  const OrbitCatalog a = find_periodic_orbits(sm, o);
  o.threads = 3;
  const OrbitCatalog b = find_periodic_orbits(sm, o);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.orbits[i].point == b.orbits[i].point);
    CHECK(a.orbits[i].period == b.orbits[i].period);
  }
}

TEST_CASE("truncation and argument errors") {
  OrbitSearchOptions o;
  o.max_period = 3;
  o.max_orbits = 2;
  const OrbitCatalog c = find_periodic_orbits(SystemDef::cat_map(), o);
  CHECK(c.exhaustiveness == Exhaustiveness::truncated);
  CHECK(c.size() <= 2);
  o.max_period = 0;
  CHECK_THROWS_AS(find_periodic_orbits(SystemDef::cat_map(), o), InvalidArgument);
}

}  // TEST_SUITE
