// Property suites over generated systems and potentials.

#include "doctest.h"

#include "gen.hpp"
#include "oracles.hpp"

#include "pressure_lab/domination.hpp"
#include "pressure_lab/pressure.hpp"

#include <cmath>
#include <map>
#include <string>

using namespace pressure_lab;

namespace {

SystemDef random_system(gen::Source& g) {
  switch (g.integer(0, 2)) {
    case 0: return SystemDef::standard_map(g.uniform(0.5, 3.0));
    case 1: return SystemDef::cat_map().then(SystemDef::shear(g.uniform(-0.1, 0.1), g.integer(0, 1), 1.0));
    default: {
      Eigen::Matrix2i a;
      a << 3, 2, 1, 1;
      return SystemDef::linear_torus(a);
    }
  }
}

// A random trigonometric potential of sup-norm at most `amp`, periodic on the torus of sys.
std::string random_expression(gen::Source& g, const SystemDef& sys, double amp) {
  const std::string w = sys.period() == 1.0 ? "2*pi*" : "";
  const double a = g.uniform(0, amp / 2), b = g.uniform(0, amp / 2);
  return std::to_string(a) + "*cos(" + w + "(x + " + std::to_string(g.uniform(0, 1)) + ")) + " +
         std::to_string(b) + "*sin(" + w + "(x + 2*y))";
}

OrbitCatalog catalog(const SystemDef& sys) {
  OrbitSearchOptions o;
  o.max_period = 3;
  o.grid_density = 16;
  o.seed = 4;
  return find_periodic_orbits(sys, o);
}

GrassmannOptions grassmann_budget() {
  GrassmannOptions g;
  g.n_list = {1, 2, 4};
  g.basepoint_grid = 12;
  g.angle_grid = 48;
  g.refine_basepoints = 4;
  g.hill_climb_steps = 20;
  g.seed = 8;
  return g;
}

}  // namespace

TEST_SUITE("properties") {

TEST_CASE("constant shift: P(phi + c) = P(phi) + c for every method") {
  gen::Source g(1);
  for (int trial = 0; trial < 6; ++trial) {
    CAPTURE(trial);
    const SystemDef sys = random_system(g);
    const Potential phi = Potential::expression(random_expression(g, sys, 0.6));
    const double c = g.uniform(-2, 2);
    const Potential psi = phi.shifted(c);

    const OrbitCatalog cat = catalog(sys);
    CHECK(periodic_pressure(cat, sys, psi).estimate.value ==
          doctest::Approx(periodic_pressure(cat, sys, phi).estimate.value + c).epsilon(1e-12));

    const auto gb = grassmann_budget();
    CHECK(std::abs(grassmann_pressure(sys, psi, gb).estimate.value -
                   grassmann_pressure(sys, phi, gb).estimate.value - c) < 1e-6);

    BowenOptions b;
    b.n_min = 2;
    b.n_max = 4;
    b.epsilon = sys.period() * 0.1;
    b.grid_density = 24;
    b.seed = 2;
    CHECK(std::abs(bowen_pressure(sys, psi, b).estimate.value - bowen_pressure(sys, phi, b).estimate.value -
                   c) < 1e-6);
  }
}

TEST_CASE("Lipschitz and monotone in the potential") {
  gen::Source g(2);
  for (int trial = 0; trial < 8; ++trial) {
    CAPTURE(trial);
    const SystemDef sys = random_system(g);
    const Potential phi = Potential::expression(random_expression(g, sys, 0.5));
    const Potential psi = Potential::expression(random_expression(g, sys, 0.5));
    const double bound = 1.0;  // sup|phi - psi| <= 0.5 + 0.5

    const OrbitCatalog cat = catalog(sys);
    const double pp = periodic_pressure(cat, sys, phi).estimate.value;
    const double pq = periodic_pressure(cat, sys, psi).estimate.value;
    CHECK(std::abs(pp - pq) <= bound + 1e-12);
    // phi - 0.5 <= phi <= phi + 0.5 pointwise.
    CHECK(periodic_pressure(cat, sys, phi.shifted(-0.5)).estimate.value <= pp + 1e-12);

    const auto gb = grassmann_budget();
    const double gp = grassmann_pressure(sys, phi, gb).estimate.value;
    const double gq = grassmann_pressure(sys, psi, gb).estimate.value;
    CHECK(std::abs(gp - gq) <= bound + 1e-3);
  }
}

TEST_CASE("per-n Grassmann sups: non-increasing and n-sup subadditive on the cat map") {
  // Only where sampling is exact: the cat-map splitting is constant, so any basepoint attains the sup.
  const auto cat = SystemDef::cat_map();
  auto gb = grassmann_budget();
  gb.n_list = {1, 2, 3, 4, 5, 6, 8, 10, 12};
  for (const Potential& phi : {Potential::zero(), Potential::constant(0.3)}) {
    const SigmaK s = sigma_k(cat, phi, 1, gb);
    std::map<int, double> a;  // a_n = n * sup_n
    for (std::size_t i = 0; i < s.n_list.size(); ++i) a[s.n_list[i]] = s.n_list[i] * s.per_n_sup[i];
    for (std::size_t i = 1; i < s.n_list.size(); ++i) {
      CHECK(s.per_n_sup[i] <= s.per_n_sup[i - 1] + 1e-3);
    }
    for (auto [m, am] : a) {
      for (auto [n, an] : a) {
        if (a.count(m + n)) CHECK(a[m + n] <= am + an + 1e-3);
      }
    }
  }
}

TEST_CASE("orbit invariants: Delta symmetric under inversion, exponents sum to zero") {
  gen::Source g(3);
  for (int trial = 0; trial < 6; ++trial) {
    const SystemDef sys = random_system(g);
    for (const auto& o : catalog(sys).orbits) {
      CHECK(delta(o) == delta(o.inverse()));
      CHECK(std::abs(o.exponents[0] + o.exponents[1]) < 1e-8);
      // Tracing the orbit under the inverse map gives the same Delta.
      const auto back = PeriodicOrbit::trace(sys.inverse(), o.point, o.period);
      CHECK(std::abs(delta(back) - delta(o)) < 1e-8);
    }
  }
}

TEST_CASE("periodic pressure dominates every plain orbit average") {
  gen::Source g(4);
  for (int trial = 0; trial < 6; ++trial) {
    const SystemDef sys = random_system(g);
    const Potential phi = Potential::expression(random_expression(g, sys, 2.0));
    const OrbitCatalog cat = catalog(sys);
    const double p = periodic_pressure(cat, sys, phi).estimate.value;
    for (const auto& o : cat.orbits) CHECK(p >= orbit_average(o, sys, phi) - 1e-12);
  }
}

TEST_CASE("domination verdicts are monotone in N") {
  gen::Source g(5);
  for (int trial = 0; trial < 4; ++trial) {
    const SystemDef sys = SystemDef::standard_map(g.uniform(0.5, 2.5));
    std::vector<int> ns;
    for (int n = 1; n <= 32; ++n) ns.push_back(n);
    for (const auto& o : catalog(sys).orbits) {
      const auto rep = n_domination_test(o, ns);
      bool dominated = false;
      for (auto v : rep.verdicts) {
        if (v == Verdict::dominated) dominated = true;
        if (dominated) CHECK(v == Verdict::dominated);
      }
    }
  }
}

}  // TEST_SUITE
