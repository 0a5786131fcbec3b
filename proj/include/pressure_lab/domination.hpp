#pragma once

#include "pressure_lab/orbits.hpp"
#include "pressure_lab/system.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pressure_lab {

enum class Verdict { dominated, not_dominated, indeterminate };
enum class SplittingSource { eigen, finite_time_singular, none };

std::string to_string(Verdict v);
std::string to_string(SplittingSource s);

struct DominationReport {
  int period = 0;
  std::vector<int> tested_n;       // the N values tested
  int horizon = 0;
  /// ratio[n-1] = r_n = max over orbit points of |Df^n u| / |Df^n v|, u in E (weak), v in F.
  std::vector<double> ratio;
  std::vector<Verdict> verdicts;   // aligned with tested_n
  SplittingSource source = SplittingSource::none;
  std::string reason;

  Verdict verdict_for(int n) const;
};

/// max(4 N_max, 64).
int default_domination_horizon(int n_max);

/// Tests N-domination of the eigen-splitting over a periodic orbit for each N
/// in `tested_n`, checking n in [N, horizon]. horizon <= 0 selects the default.
DominationReport n_domination_test(const PeriodicOrbit& orbit, std::span<const int> tested_n,
                                   int horizon = 0);

/// Single-N convenience; `sys` is accepted for symmetry with the segment
/// tests (the orbit carries its own Jacobians).
Verdict n_domination_verdict(const SystemDef& sys, const PeriodicOrbit& orbit, int n,
                             int horizon = 0);

/// T(p) >= T and the orbit has no N-dominated splitting. nullopt = indeterminate.
std::optional<bool> weakness_test(const PeriodicOrbit& orbit, int min_period, int n,
                                  int horizon = 0);

/// g_n = sigma_2 / sigma_1 of D_x f^n for n = 1 .. n_max.
std::vector<double> domination_gap(const SystemDef& sys, const Point& x, int n_max);

}  // namespace pressure_lab
