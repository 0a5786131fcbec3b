#include "pressure_lab/domination.hpp"

#include "pressure_lab/errors.hpp"
#include "pressure_lab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pressure_lab {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::dominated: return "dominated";
    case Verdict::not_dominated: return "not-dominated";
    case Verdict::indeterminate: return "indeterminate";
  }
  return "?";
}

std::string to_string(SplittingSource s) {
  switch (s) {
    case SplittingSource::eigen: return "eigen";
    case SplittingSource::finite_time_singular: return "finite-time-singular";
    case SplittingSource::none: return "none";
  }
  return "?";
}

Verdict DominationReport::verdict_for(int n) const {
  for (std::size_t i = 0; i < tested_n.size(); ++i) {
    if (tested_n[i] == n) return verdicts[i];
  }
  throw InvalidArgument("N = " + std::to_string(n) + " was not tested");
}

int default_domination_horizon(int n_max) { return std::max(4 * n_max, 64); }

namespace {

Vec real_eigenvector(const Mat& m, double mu) {
  const Vec a(m(0, 1), mu - m(0, 0));
  const Vec b(mu - m(1, 1), m(1, 0));
  const Vec v = a.squaredNorm() >= b.squaredNorm() ? a : b;
  return v.normalized();
}

}  // namespace

DominationReport n_domination_test(const PeriodicOrbit& orbit, std::span<const int> tested_n,
                                   int horizon) {
  if (tested_n.empty()) throw InvalidArgument("no N values to test");
  const int n_max = *std::max_element(tested_n.begin(), tested_n.end());
  if (*std::min_element(tested_n.begin(), tested_n.end()) < 1) throw InvalidArgument("N must be >= 1");
  if (horizon <= 0) horizon = default_domination_horizon(n_max);
  if (horizon < n_max) throw InvalidArgument("horizon must be >= N");

  DominationReport rep;
  rep.period = orbit.period;
  rep.tested_n.assign(tested_n.begin(), tested_n.end());
  rep.horizon = horizon;

  auto uniform = [&](Verdict v, std::string reason) {
    rep.verdicts.assign(rep.tested_n.size(), v);
    rep.reason = std::move(reason);
    return rep;
  };

  switch (orbit.classification) {
    case OrbitClass::parabolic:
      return uniform(Verdict::indeterminate, "parabolic multiplier: no distinguished directions");
    case OrbitClass::elliptic:
      return uniform(Verdict::not_dominated,
                     orbit.eigen.complex_pair
                         ? "no invariant splitting (complex eigenvalues)"
                         : "eigenvalues of equal modulus: no splitting can be dominated");
    case OrbitClass::saddle:
      break;
  }

  const int T = orbit.period;
  const double mu_weak = orbit.eigen.values[0].real();
  const double mu_strong = orbit.eigen.values[1].real();
  const double log_gap = std::log(std::abs(mu_weak)) - std::log(std::abs(mu_strong));

  // Per orbit point: eigen-directions of the return map based there, and the
  // log stretch of each under the first r < T steps. Powers of the return map
  // act on them by the exact eigenvalues, which avoids transporting the weak
  // direction through a long ill-conditioned product.
  std::vector<std::vector<double>> log_ratio_partial(static_cast<std::size_t>(T));
  for (int i = 0; i < T; ++i) {
    Mat ret = Mat::Identity();
    for (int t = 0; t < T; ++t) ret = orbit.jacobians[static_cast<std::size_t>((i + t) % T)] * ret;
    Vec u = real_eigenvector(ret, mu_weak);
    Vec v = real_eigenvector(ret, mu_strong);
    const double angle = std::acos(std::min(1.0, std::abs(u.dot(v))));
    if (angle < 1e-8) {
      return uniform(Verdict::indeterminate, "eigen-directions nearly parallel");
    }
    auto& part = log_ratio_partial[static_cast<std::size_t>(i)];
    part.push_back(0.0);
    double lu = 0.0;
    double lv = 0.0;
    for (int r = 1; r < T; ++r) {
      const Mat& j = orbit.jacobians[static_cast<std::size_t>((i + r - 1) % T)];
      u = j * u;
      v = j * v;
      lu += std::log(u.norm());
      lv += std::log(v.norm());
      u.normalize();
      v.normalize();
      part.push_back(lu - lv);
    }
  }

  rep.source = SplittingSource::eigen;
  rep.ratio.resize(static_cast<std::size_t>(horizon));
  for (int n = 1; n <= horizon; ++n) {
    const int q = n / T;
    const int r = n % T;
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < T; ++i) {
      worst = std::max(worst, q * log_gap + log_ratio_partial[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)]);
    }
    rep.ratio[static_cast<std::size_t>(n - 1)] = std::exp(worst);
  }

  rep.verdicts.reserve(rep.tested_n.size());
  for (int big_n : rep.tested_n) {
    bool ok = true;
    for (int n = big_n; n <= horizon && ok; ++n) ok = rep.ratio[static_cast<std::size_t>(n - 1)] <= 0.5;
    rep.verdicts.push_back(ok ? Verdict::dominated : Verdict::not_dominated);
  }
  rep.reason = "eigen-splitting checked up to horizon " + std::to_string(horizon);
  return rep;
}

Verdict n_domination_verdict(const SystemDef& /*sys*/, const PeriodicOrbit& orbit, int n,
                             int horizon) {
  const int ns[] = {n};
  return n_domination_test(orbit, ns, horizon).verdicts.front();
}

std::optional<bool> weakness_test(const PeriodicOrbit& orbit, int min_period, int n, int horizon) {
  if (orbit.period < min_period) return false;
  const int ns[] = {n};
  switch (n_domination_test(orbit, ns, horizon).verdicts.front()) {
    case Verdict::dominated: return false;
    case Verdict::not_dominated: return true;
    case Verdict::indeterminate: return std::nullopt;
  }
  return std::nullopt;
}

std::vector<double> domination_gap(const SystemDef& sys, const Point& x, int n_max) {
  if (n_max < 1) throw InvalidArgument("n_max must be >= 1");
  std::vector<double> g;
  g.reserve(static_cast<std::size_t>(n_max));
  ScaledMatrix d;
  Point y = wrap(x, sys.period());
  for (int n = 1; n <= n_max; ++n) {
    d.left_multiply(sys.jacobian(y));
    y = sys.eval(y);
    // sigma_2 / sigma_1 = |det| / sigma_1^2 in two dimensions.
    g.push_back(std::exp(d.log_abs_det() - 2.0 * d.log_norm()));
  }
  return g;
}

}  // namespace pressure_lab
