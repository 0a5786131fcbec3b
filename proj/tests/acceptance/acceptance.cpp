// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.
// Oracles are computed independently of the library (see ../oracles.hpp).

#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include "gen.hpp"
#include "oracles.hpp"

#include "pressure_lab/domination.hpp"
#include "pressure_lab/pressure.hpp"
#include "pressure_lab/run.hpp"
#include "pressure_lab/transition.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <unistd.h>

using namespace pressure_lab;
namespace fs = std::filesystem;

namespace {

struct Check {
  bool ok = true;
  std::string detail;
  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

OrbitCatalog catalog(const SystemDef& sys, int max_period, int grid, std::uint64_t seed = 1) {
  OrbitSearchOptions o;
  o.max_period = max_period;
  o.grid_density = grid;
  o.seed = seed;
  return find_periodic_orbits(sys, o);
}

const double kH = oracle::log_cat_lambda();

Check c1() {
  Check c;
  const auto cat = SystemDef::cat_map();
  const auto p = periodic_pressure(catalog(cat, 3, 16), cat, Potential::zero());
  c.expect(std::abs(p.estimate.value - kH) <= 1e-9, "P = " + num(p.estimate.value));
  return c;
}

Check c2() {
  Check c;
  const auto cat = SystemDef::cat_map();
  const auto cl = catalog(cat, 4, 24);
  const long long want[] = {1, 5, 16, 45};
  Eigen::Matrix2i a;
  a << 2, 1, 1, 1;
  for (int n = 1; n <= 4; ++n) {
    const long long got = static_cast<long long>(cl.fixed_point_count(n));
    const long long oracle_n = oracle::fixed_points_linear(a, n);
    c.expect(got == want[n - 1] && oracle_n == want[n - 1],
             "n=" + std::to_string(n) + ": " + std::to_string(got));
  }
  c.expect(cl.exhaustiveness == Exhaustiveness::verified, "catalog not verified");
  return c;
}

Check c3() {
  Check c;
  const double g = sft_entropy(SftModel::golden_mean());
  c.expect(std::abs(g - oracle::log_golden()) <= 1e-10, "golden " + num(g));
  gen::Source src(2024);
  const Eigen::MatrixXi full = Eigen::MatrixXi::Ones(2, 2);
  for (int i = 0; i < 20; ++i) {
    Eigen::VectorXd a(2);
    a << src.uniform(-2, 2), src.uniform(-2, 2);
    const double v = sft_pressure(SftModel::with_symbol_potential(full, a)).value;
    const double want = std::log(std::exp(a(0)) + std::exp(a(1)));
    c.expect(std::abs(v - want) <= 1e-10, "case " + std::to_string(i) + ": " + num(v));
  }
  return c;
}

Check c4() {
  Check c;
  BowenOptions b;
  b.n_min = 6;
  b.n_max = 10;
  b.epsilon = 0.05;
  b.seed = 7;
  const auto r = bowen_pressure(SystemDef::cat_map(), Potential::zero(), b);
  c.expect(!r.budget_exceeded, "budget exceeded");
  c.expect(std::abs(r.estimate.value - kH) <= 0.05, "bowen " + num(r.estimate.value));
  c.detail = c.detail.empty() ? "estimate " + num(r.estimate.value) : c.detail;
  return c;
}

Check c5() {
  Check c;
  const auto cat = SystemDef::cat_map();
  GrassmannOptions g;
  g.seed = 7;
  const auto s1 = sigma_k(cat, Potential::zero(), 1, g);
  for (std::size_t i = 0; i < s1.n_list.size(); ++i) {
    c.expect(std::abs(s1.per_n_sup[i] - kH) <= 1e-6,
             "sigma_1 at n=" + std::to_string(s1.n_list[i]) + ": " + num(s1.per_n_sup[i]));
  }
  const auto s2 = sigma_k(cat, Potential::zero(), 2, g);
  for (double v : s2.per_n_sup) c.expect(std::abs(v) <= 1e-9, "sigma_2 " + num(v));
  const auto gp = grassmann_pressure(cat, Potential::geometric(1), g);
  c.expect(std::abs(gp.estimate.value) <= 1e-6, "P(phi_1) " + num(gp.estimate.value));
  return c;
}

Check c6() {
  Check c;
  const auto sm = SystemDef::standard_map(1.0);
  const auto s = PeriodicOrbit::trace(sm, {0, 0}, 1);
  const auto e = PeriodicOrbit::trace(sm, {oracle::pi, 0}, 1);
  // Oracle: trace 3 -> lambda = (3 + sqrt 5)/2; trace 1 -> eigenvalues e^{+-i pi/3}.
  c.expect(s.classification == OrbitClass::saddle, "(0,0) not a saddle");
  c.expect(std::abs(s.lambda_plus() - std::log(oracle::spectral_radius_2x2(3.0, 1.0))) <= 1e-6 &&
               std::abs(s.lambda_plus() - 0.9624237) <= 1e-6,
           "lambda+ " + num(s.lambda_plus()));
  c.expect(e.classification == OrbitClass::elliptic, "(pi,0) not elliptic");
  c.expect(std::abs(e.eigen_argument() - std::acos(0.5)) <= 1e-6, "arg " + num(e.eigen_argument()));
  for (int n = 1; n <= 64; ++n) {
    if (n_domination_verdict(sm, e, n) != Verdict::not_dominated) {
      c.expect(false, "(pi,0) dominated at N=" + std::to_string(n));
    }
  }
  const auto cf = PeriodicOrbit::trace(SystemDef::cat_map(), {0, 0}, 1);
  c.expect(n_domination_verdict(SystemDef::cat_map(), cf, 1) == Verdict::dominated,
           "cat fixed point not 1-dominated");
  return c;
}

Check c7() {
  Check c;
  const auto cat = SystemDef::cat_map();
  const auto cc = catalog(cat, 3, 16);
  const double ts[] = {0.0, 0.5, 1.0, 2.0};
  const double want[] = {0.9624237, 0.4812118, 0.0, -0.9624237};
  const auto rep = pressure_curve(cc, cat, 1, ts);
  for (int i = 0; i < 4; ++i) {
    // Pinned to the exact line h(1 - t); the rounded table agrees to its 7 digits.
    c.expect(std::abs(rep.curve[i].value - kH * (1 - ts[i])) <= 1e-9 &&
                 std::abs(rep.curve[i].value - want[i]) <= 5e-8,
             "curve(" + num(ts[i]) + ") = " + num(rep.curve[i].value));
  }
  const auto t0 = transition_point(cc, cat, 1).t0;
  c.expect(std::abs(t0 - 1) <= 1e-9, "cat t0 " + num(t0));

  const auto sm = SystemDef::standard_map(1.0);
  const auto sc = catalog(sm, 1, 24);
  c.expect(sc.size() == 2, "standard catalog size " + std::to_string(sc.size()));
  const double tt[] = {0.0, 1.0, 2.0, 3.0};
  const auto sr = pressure_curve(sc, sm, 1, tt);
  const double g = oracle::log_golden();
  for (int i = 0; i < 4; ++i) {
    // Max of the saddle line h(1 - t) and the elliptic line -t log(golden).
    const double v = std::max(kH * (1 - tt[i]), -tt[i] * g);
    c.expect(std::abs(sr.curve[i].value - v) <= 1e-9, "standard curve(" + num(tt[i]) + ")");
  }
  const auto st = transition_point(sc, sm, 1).t0;
  c.expect(std::abs(st - 1) <= 1e-6, "standard t0 " + num(st));
  c.expect(sr.kinks.size() == 1 && std::abs(sr.kinks[0] - 2) <= 1e-6, "kink");
  return c;
}

Check c8() {
  Check c;
  std::ostringstream sink;
  for (const char* filter : {"properties", "systems"}) {
    doctest::Context ctx;
    ctx.setOption("test-suite", filter);
    if (std::string(filter) == "systems") ctx.setOption("test-case", "cocycle identity*,birkhoff additivity");
    ctx.setCout(&sink);
    const int rc = ctx.run();
    c.expect(rc == 0, std::string("suite ") + filter + " failed");
  }
  if (!c.ok) std::fputs(sink.str().c_str(), stderr);
  return c;
}

Check c9() {
  Check c;
  const auto base = SystemDef::standard_map(1.0);
  const double p0 = periodic_pressure(catalog(base, 1, 24), base, Potential::zero()).estimate.value;
  for (double d : {1e-3, 1e-4}) {
    const auto sys = SystemDef::standard_map(1.0 + d);
    const double p = periodic_pressure(catalog(sys, 1, 24), sys, Potential::zero()).estimate.value;
    c.expect(std::abs(p - p0) <= 10 * d, "delta " + num(d) + ": change " + num(std::abs(p - p0)));
  }
  return c;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("pressure_lab_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

Check c10() {
  Check c;
  TempDir t;
  const fs::path cfg = t.path / "suite.yaml";
  std::ofstream(cfg) << R"(seed: 42
system: {kind: standard-map, k: 1.2}
orbits: {max_period: 3, grid_density: 20}
bowen: {n_min: 3, n_max: 5, epsilon: 0.4, grid_density: 48}
grassmann: {n_list: [1, 2, 4], basepoint_grid: 16, angle_grid: 64}
domination: {n_values: [1, 4, 16], gap_point: [0.5, 0.5]}
transition: {m: 1, t_grid: [0, 0.5, 1, 1.5, 2]}
)";
  for (Command cmd : {Command::orbits, Command::pressure, Command::sigma, Command::domination,
                      Command::transition, Command::validate}) {
    std::ostringstream log;
    RunRequest a{cmd, cfg.string(), (t.path / "a").string(), std::nullopt, 1, true};
    RunRequest b{cmd, cfg.string(), (t.path / "b").string(), std::nullopt, 2, true};
    const auto ra = run(a, log), rb = run(b, log);
    c.expect(ra.exit_code == kExitOk && rb.exit_code == kExitOk, to_string(cmd) + " exit code");
    for (const auto& [name, _] : ra.files) {
      auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(in), {});
      };
      c.expect(slurp(t.path / "a" / name) == slurp(t.path / "b" / name), name + " differs");
    }
  }
  return c;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;  // 0: no runtime limit
    std::function<Check()> fn;
  };
  const Criterion all[] = {
      {1, "cat-map periodic pressure", 1, c1},
      {2, "cat-map orbit counts", 10, c2},
      {3, "SFT oracle", 1, c3},
      {4, "Bowen estimator", 120, c4},
      {5, "Grassmann on the cat map", 60, c5},
      {6, "standard map classification and domination", 5, c6},
      {7, "transition curve, t0 and kink", 5, c7},
      {8, "property suites", 120, c8},
      {9, "continuity in K", 5, c9},
      {10, "determinism across thread counts", 0, c10},
  };
  int failed = 0;
  for (const auto& cr : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Check r;
    try {
      r = cr.fn();
    } catch (const std::exception& e) {
      r.expect(false, std::string("threw: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (cr.limit_s > 0 && secs >= cr.limit_s) r.expect(false, "runtime " + num(secs) + " s");
    failed += !r.ok;
    std::printf("%s %2d %-45s %8.3fs%s%s\n", r.ok ? "PASS" : "FAIL", cr.id, cr.name, secs,
                r.detail.empty() ? "" : "  ", r.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
