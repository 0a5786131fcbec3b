#include "pressure_lab/dynamics.hpp"
#include "pressure_lab/errors.hpp"
#include "pressure_lab/grassmann.hpp"
#include "pressure_lab/parallel.hpp"
#include "pressure_lab/pressure.hpp"
#include "pressure_lab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace pressure_lab {

FiberSup line_fiber_sup(const Mat& m, int angle_grid, int refine_steps) {
  FiberSup best;
  best.log_stretch = -std::numeric_limits<double>::infinity();
  const double h = kPi / angle_grid;
  for (int a = 0; a < angle_grid; ++a) {
    const double theta = a * h;
    const double v = log_stretch(m, theta);
    if (v > best.log_stretch) {
      best.log_stretch = v;
      best.angle = theta;
    }
  }
  // Golden-section search on the bracketing cells; |M v_theta|^2 is a
  // sinusoid in 2 theta, hence unimodal there.
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = best.angle - h;
  double hi = best.angle + h;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = log_stretch(m, x1);
  double f2 = log_stretch(m, x2);
  for (int s = 0; s < refine_steps; ++s) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = log_stretch(m, x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = log_stretch(m, x1);
    }
  }
  for (auto [x, f] : {std::pair{x1, f1}, std::pair{x2, f2}}) {
    if (f > best.log_stretch) {
      best.log_stretch = f;
      best.angle = x;
    }
  }
  best.angle = std::fmod(best.angle + kPi, kPi);
  return best;
}

namespace {

struct Evaluation {
  double value = -std::numeric_limits<double>::infinity();
  GrassmannSample sample;
};

Evaluation evaluate(const SystemDef& sys, const Potential& phi, int k, int n, const Point& x,
                    const GrassmannOptions& opt) {
  Evaluation e;
  GrassmannSample& s = e.sample;
  s.base = wrap(x, sys.period());
  s.k = k;
  s.n = n;
  s.birkhoff = birkhoff_sum(sys, phi, s.base, n);
  if (k == 1) {
    const ScaledMatrix d = log_cocycle(sys, s.base, n);
    const FiberSup f = line_fiber_sup(d.matrix(), opt.angle_grid, opt.refine_steps);
    s.angle = f.angle;
    s.log_jacobian = d.log_scale() + f.log_stretch;
  } else if (k == 2) {
    Point y = s.base;
    double log_det = 0.0;
    for (int i = 0; i < n; ++i) {
      log_det += std::log(std::abs(sys.jacobian(y).determinant()));
      y = sys.eval(y);
    }
    s.log_jacobian = log_det;
  }
  e.value = s.value();
  return e;
}

Evaluation sup_for_n(const SystemDef& sys, const Potential& phi, int k, int n,
                     const GrassmannOptions& opt) {
  const double L = sys.period();
  const int g = opt.basepoint_grid;
  SplitMix64 rng(mix_seed(opt.seed, static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(n)));
  const Point offset(rng.uniform() * L / g, rng.uniform() * L / g);
  const std::size_t total = static_cast<std::size_t>(g) * static_cast<std::size_t>(g);

  std::vector<Evaluation> grid(total);
  parallel_for(total, opt.threads, [&](std::size_t idx) {
    const double i = static_cast<double>(idx / static_cast<std::size_t>(g));
    const double j = static_cast<double>(idx % static_cast<std::size_t>(g));
    grid[idx] = evaluate(sys, phi, k, n, offset + Point(i * L / g, j * L / g), opt);
  });

  std::vector<std::size_t> order(total);
  std::iota(order.begin(), order.end(), 0);
  const std::size_t top = std::min<std::size_t>(total, static_cast<std::size_t>(std::max(0, opt.refine_basepoints)));
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(top), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (grid[a].value != grid[b].value) return grid[a].value > grid[b].value;
                      return a < b;
                    });

  std::vector<Evaluation> refined(top);
  parallel_for(top, opt.threads, [&](std::size_t r) {
    Evaluation cur = grid[order[r]];
    double step = L / g;
    const Point dirs[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}, {1, -1}, {-1, 1}};
    for (int it = 0; it < opt.hill_climb_steps; ++it) {
      bool moved = false;
      for (const auto& dvec : dirs) {
        const Evaluation cand = evaluate(sys, phi, k, n, cur.sample.base + step * dvec, opt);
        if (cand.value > cur.value) {
          cur = cand;
          moved = true;
        }
      }
      if (!moved) step *= 0.5;
    }
    refined[r] = cur;
  });

  Evaluation best = grid[order.empty() ? 0 : order[0]];
  for (const auto& r : refined) {
    if (r.value > best.value) best = r;
  }
  return best;
}

}  // namespace

SigmaK sigma_k(const SystemDef& sys, const Potential& phi, int k, const GrassmannOptions& opt) {
  if (k < 0 || k > kDim) throw InvalidArgument("k must lie in [0, 2]");
  if (opt.n_list.empty()) throw InvalidArgument("n_list must be non-empty");
  if (!std::is_sorted(opt.n_list.begin(), opt.n_list.end()) || opt.n_list.front() < 1) {
    throw InvalidArgument("n_list must be ascending positive integers");
  }
  if (opt.basepoint_grid < 1 || opt.angle_grid < 2) throw InvalidArgument("empty search grid");
  phi.check_compatible(sys);

  SigmaK out;
  out.n_list = opt.n_list;
  auto& est = out.estimate;
  est.method = Method::grassmann;
  est.bound_kind = BoundKind::upper;
  est.parameters = {{"k", k},
                    {"basepoint_grid", opt.basepoint_grid},
                    {"angle_grid", opt.angle_grid},
                    {"refine_steps", opt.refine_steps},
                    {"seed", static_cast<double>(opt.seed)}};
  est.value = std::numeric_limits<double>::infinity();
  for (int n : opt.n_list) {
    const Evaluation best = sup_for_n(sys, phi, k, n, opt);
    out.best.push_back(best.sample);
    out.per_n_sup.push_back(best.value);
    est.series.push_back({static_cast<double>(n), best.value});
    est.value = std::min(est.value, best.value);
  }
  est.flags.push_back("sampled-sup");
  est.note = "k=" + std::to_string(k);
  return out;
}

GrassmannPressure grassmann_pressure(const SystemDef& sys, const Potential& phi,
                                     const GrassmannOptions& opt, bool include_k0) {
  GrassmannPressure out;
  out.estimate.method = Method::grassmann;
  out.estimate.bound_kind = BoundKind::upper;
  out.estimate.value = -std::numeric_limits<double>::infinity();
  for (int k = 1; k <= kDim; ++k) {
    out.per_k.push_back(sigma_k(sys, phi, k, opt));
    const double v = out.per_k.back().estimate.value;
    if (v > out.estimate.value) {
      out.estimate.value = v;
      out.argmax_k = k;
    }
  }
  const auto& winner = out.per_k[static_cast<std::size_t>(out.argmax_k - 1)].estimate;
  out.estimate.parameters = winner.parameters;
  out.estimate.parameters["argmax_k"] = out.argmax_k;
  for (const auto& sk : out.per_k) {
    out.estimate.parameters["sigma_" + std::to_string(static_cast<int>(sk.estimate.parameters.at("k")))] =
        sk.estimate.value;
  }
  out.estimate.series = winner.series;
  out.estimate.flags = winner.flags;
  out.estimate.note = "argmax k=" + std::to_string(out.argmax_k);
  if (include_k0) {
    out.k0 = sigma_k(sys, phi, 0, opt);
    out.estimate.parameters["sigma_0"] = out.k0->estimate.value;
  }
  return out;
}

}  // namespace pressure_lab
