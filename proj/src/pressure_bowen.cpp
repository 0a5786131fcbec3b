#include "pressure_lab/errors.hpp"
#include "pressure_lab/parallel.hpp"
#include "pressure_lab/pressure.hpp"
#include "pressure_lab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace pressure_lab {
namespace {

inline std::uint64_t hash_step(std::uint64_t h, std::uint64_t cell) {
  h ^= cell + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h *= 0xbf58476d1ce4e5b9ULL;
  return h ^ (h >> 31);
}

// Weighted cylinder statistics of one starting cell, as log-sum-exp partials.
struct CellTally {
  std::size_t cylinders = 0;
  std::size_t singletons = 0;
  double max_log = -std::numeric_limits<double>::infinity();
  double sum = 0.0;

  void add(double log_weight) {
    if (log_weight > max_log) {
      sum = sum * std::exp(max_log - log_weight) + 1.0;
      max_log = log_weight;
    } else {
      sum += std::exp(log_weight - max_log);
    }
  }

  void merge(const CellTally& o) {
    cylinders += o.cylinders;
    singletons += o.singletons;
    if (o.cylinders == 0) return;
    if (o.max_log > max_log) {
      sum = sum * std::exp(max_log - o.max_log) + o.sum;
      max_log = o.max_log;
    } else {
      sum += o.sum * std::exp(o.max_log - max_log);
    }
  }

  double log_total() const { return max_log + std::log(sum); }
};

struct LevelResult {
  CellTally tally;
  std::int64_t samples = 0;
};

LevelResult run_level(const SystemDef& sys, const Potential& phi, int n, int cells,
                      int per_axis, const BowenOptions& opt) {
  const double L = sys.period();
  const double side = L / cells;
  const bool constant = phi.is_constant();
  const double constant_sum = constant ? n * phi.constant_value() : 0.0;
  const std::size_t cell_count = static_cast<std::size_t>(cells) * static_cast<std::size_t>(cells);

  std::vector<CellTally> tallies(cell_count);
  parallel_for(cell_count, opt.threads, [&](std::size_t c) {
    const int a = static_cast<int>(c / static_cast<std::size_t>(cells));
    const int b = static_cast<int>(c % static_cast<std::size_t>(cells));
    SplitMix64 rng(mix_seed(opt.seed, static_cast<std::uint64_t>(n), c));
    std::vector<std::pair<std::uint64_t, double>> keys;
    keys.reserve(static_cast<std::size_t>(per_axis) * static_cast<std::size_t>(per_axis));
    for (int i = 0; i < per_axis; ++i) {
      for (int j = 0; j < per_axis; ++j) {
        Point y((a + (i + rng.uniform()) / per_axis) * side,
                (b + (j + rng.uniform()) / per_axis) * side);
        std::uint64_t h = 0x243f6a8885a308d3ULL;
        double s = constant_sum;
        for (int t = 0; t < n; ++t) {
          const int ci = std::min(cells - 1, static_cast<int>(y.x() / side));
          const int cj = std::min(cells - 1, static_cast<int>(y.y() / side));
          h = hash_step(h, static_cast<std::uint64_t>(ci) * static_cast<std::uint64_t>(cells) +
                               static_cast<std::uint64_t>(cj));
          if (!constant) s += phi(sys, y);
          if (t + 1 < n) y = sys.eval(y);
        }
        keys.emplace_back(h, s);
      }
    }
    std::sort(keys.begin(), keys.end());
    CellTally& tally = tallies[c];
    for (std::size_t i = 0; i < keys.size();) {
      std::size_t j = i + 1;
      while (j < keys.size() && keys[j].first == keys[i].first) ++j;
      // Sorted pairs: keys[i] carries the smallest S_n phi of the cylinder.
      tally.add(keys[i].second);
      ++tally.cylinders;
      if (j - i == 1) ++tally.singletons;
      i = j;
    }
  });

  LevelResult r;
  for (const auto& t : tallies) r.tally.merge(t);
  r.samples = static_cast<std::int64_t>(cell_count) * per_axis * per_axis;
  return r;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

BowenPressure bowen_pressure(const SystemDef& sys, const Potential& phi, const BowenOptions& opt) {
  const double L = sys.period();
  if (!(opt.epsilon > 0.0 && opt.epsilon < 0.25 * L)) {
    throw InvalidArgument("epsilon must lie in (0, period/4)");
  }
  if (opt.n_min < 1 || opt.n_max < opt.n_min) throw InvalidArgument("invalid n range");
  if (!(L / opt.grid_density < 0.5 * opt.epsilon)) {
    throw InvalidArgument("grid spacing must be below epsilon/2");
  }
  if (!(opt.samples_per_cylinder > 0.0)) throw InvalidArgument("samples_per_cylinder must be > 0");
  phi.check_compatible(sys);

  // Cells of side L/cells have diameter sqrt(2) L / cells < epsilon.
  const int cells = static_cast<int>(std::floor(std::sqrt(2.0) * L / opt.epsilon)) + 1;
  const double cell_count = static_cast<double>(cells) * cells;
  const int min_per_axis = std::max(1, (opt.grid_density + cells - 1) / cells);

  BowenPressure out;
  auto& est = out.estimate;
  est.method = Method::bowen;
  est.bound_kind = BoundKind::heuristic;
  est.parameters = {{"n_min", opt.n_min},
                    {"n_max", opt.n_max},
                    {"epsilon", opt.epsilon},
                    {"grid_density", opt.grid_density},
                    {"samples_per_cylinder", opt.samples_per_cylinder},
                    {"cells_per_axis", cells},
                    {"seed", static_cast<double>(opt.seed)}};

  std::vector<double> counts;  // observed cylinder counts per level
  for (int n = 1; n <= opt.n_max; ++n) {
    double predicted = cell_count;
    if (n >= 3) {
      predicted = counts[n - 2] * std::max(1.0, counts[n - 2] / counts[n - 3]);
    } else if (n == 2) {
      predicted = counts[0];
    }
    LevelResult level;
    for (int attempt = 0; attempt < 6; ++attempt) {
      const double target = opt.samples_per_cylinder * predicted;
      const int per_axis = std::max(
          min_per_axis, static_cast<int>(std::ceil(std::sqrt(target / cell_count))));
      const double samples = cell_count * per_axis * per_axis;
      if (samples > static_cast<double>(opt.max_samples)) {
        out.budget_exceeded = true;
        break;
      }
      level = run_level(sys, phi, n, cells, per_axis, opt);
      const double found = static_cast<double>(level.tally.cylinders);
      // Resample if the prediction was short: keep samples/cylinder at the target.
      if (opt.samples_per_cylinder * found <= samples * 1.05) break;
      predicted = found * 1.25;
    }
    if (out.budget_exceeded) break;
    counts.push_back(static_cast<double>(level.tally.cylinders));
    BowenLevel rec;
    rec.n = n;
    rec.log_q = level.tally.log_total();
    rec.centres = level.tally.cylinders;
    rec.samples = level.samples;
    rec.singleton_fraction =
        static_cast<double>(level.tally.singletons) / static_cast<double>(level.tally.cylinders);
    out.levels.push_back(rec);
  }

  for (int n = opt.n_min; n < opt.n_max; ++n) {
    if (static_cast<std::size_t>(n) >= out.levels.size()) break;
    const double d = out.levels[n].log_q - out.levels[n - 1].log_q;
    out.differences.push_back(d);
    est.series.push_back({static_cast<double>(n), d});
  }

  if (out.budget_exceeded) est.flags.push_back("budget-exceeded");
  if (!out.differences.empty()) {
    est.value = median(out.differences);
  } else if (static_cast<std::size_t>(opt.n_min) <= out.levels.size()) {
    // Single level: fall back to the biased raw rate.
    const auto& lv = out.levels[opt.n_min - 1];
    est.value = lv.log_q / lv.n;
    est.flags.push_back("raw-rate");
  } else {
    est.value = std::numeric_limits<double>::quiet_NaN();
    est.flags.push_back("no-levels");
  }
  return out;
}

}  // namespace pressure_lab
