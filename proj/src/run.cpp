#include "pressure_lab/run.hpp"

#include "pressure_lab/domination.hpp"
#include "pressure_lab/errors.hpp"
#include "pressure_lab/export.hpp"
#include "pressure_lab/transition.hpp"

#include "json.hpp"

#include <Eigen/Core>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#ifndef PRESSURE_LAB_VERSION
#define PRESSURE_LAB_VERSION "unknown"
#endif

namespace pressure_lab {

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

struct Artifacts {
  RunResult result;
  std::ostringstream summary;

  void put(const std::string& name, const std::string& text) { result.files[name] = text; }
  void put(const std::string& name, const CsvTable& t) { put(name, t.str()); }
};

const SystemDef& smooth(const ExperimentConfig& cfg, Command c) {
  if (!cfg.system) throw InvalidArgument("command '" + to_string(c) + "' needs a smooth system");
  return *cfg.system;
}

void summarize_estimate(std::ostream& os, const PressureEstimate& e) {
  os << to_string(e.method) << ": " << format_real(e.value) << " (" << to_string(e.bound_kind)
     << ")";
  for (const auto& f : e.flags) os << " [" << f << "]";
  os << "\n";
}

OrbitCatalog catalog_step(const ExperimentConfig& cfg, Artifacts& a) {
  const OrbitCatalog cat = find_periodic_orbits(*cfg.system, cfg.orbits);
  a.put("orbits.csv", catalog_table(cat));
  a.put("orbits.json", catalog_json(cat));
  a.summary << "catalog: " << cat.size() << " orbits up to period " << cat.max_period << " ("
            << to_string(cat.exhaustiveness) << ")\n";
  if (cat.exhaustiveness == Exhaustiveness::truncated) a.result.exit_code = kExitBudget;
  return cat;
}

void put_estimate(Artifacts& a, const std::string& stem, const PressureEstimate& e,
                  const std::string& x_name) {
  a.put(stem + ".csv", estimate_table(e));
  a.put(stem + "_parameters.csv", parameter_table(e));
  a.put(stem + "_series.csv", series_table(e.series, x_name, "value"));
  a.put(stem + ".json", estimate_json(e));
}

void do_orbits(const ExperimentConfig& cfg, Artifacts& a) {
  smooth(cfg, Command::orbits);
  const OrbitCatalog cat = catalog_step(cfg, a);
  CsvTable counts({"n", "fixed_points"});
  for (int n = 1; n <= cat.max_period; ++n) {
    counts.add_row({std::to_string(n), std::to_string(cat.fixed_point_count(n))});
  }
  a.put("fixed_point_counts.csv", counts);
}

void do_pressure(const ExperimentConfig& cfg, Artifacts& a) {
  PressureEstimate e;
  std::string x_name = "n";
  if (cfg.pressure_method == "sft") {
    e = sft_pressure(*cfg.sft);
  } else {
    const SystemDef& sys = smooth(cfg, Command::pressure);
    if (cfg.pressure_method == "periodic") {
      const OrbitCatalog cat = catalog_step(cfg, a);
      e = periodic_pressure(cat, sys, cfg.potential).estimate;
      x_name = "orbit";
    } else if (cfg.pressure_method == "bowen") {
      const BowenPressure b = bowen_pressure(sys, cfg.potential, cfg.bowen);
      e = b.estimate;
      CsvTable levels({"n", "log_q", "centres", "samples", "singleton_fraction"});
      for (const auto& l : b.levels) {
        levels.add_row({std::to_string(l.n), format_real(l.log_q), std::to_string(l.centres),
                        std::to_string(l.samples), format_real(l.singleton_fraction)});
      }
      a.put("bowen_levels.csv", levels);
      if (b.budget_exceeded) a.result.exit_code = kExitBudget;
    } else {
      e = grassmann_pressure(sys, cfg.potential, cfg.grassmann, cfg.include_k0).estimate;
    }
  }
  put_estimate(a, "pressure", e, x_name);
  a.summary << "pressure ";
  summarize_estimate(a.summary, e);
}

void do_sigma(const ExperimentConfig& cfg, Artifacts& a) {
  const SystemDef& sys = smooth(cfg, Command::sigma);
  CsvTable all({"k", "n", "sup"});
  CsvTable heads({"k", "value", "bound_kind", "flags"});
  for (int k : cfg.sigma_k) {
    const SigmaK s = sigma_k(sys, cfg.potential, k, cfg.grassmann);
    // Plot series: the best upper bound available at each n (running minimum
    // of the per-n sups), so sampling noise cannot make it increase.
    CsvTable series({"n", "sup"});
    double bound = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < s.n_list.size(); ++i) {
      all.add_row({std::to_string(k), std::to_string(s.n_list[i]), format_real(s.per_n_sup[i])});
      bound = std::min(bound, s.per_n_sup[i]);
      series.add_row({std::to_string(s.n_list[i]), format_real(bound)});
    }
    a.put("sigma_k" + std::to_string(k) + ".csv", series);
    std::string flags;
    for (const auto& f : s.estimate.flags) flags += (flags.empty() ? "" : ";") + f;
    heads.add_row({std::to_string(k), format_real(s.estimate.value),
                   to_string(s.estimate.bound_kind), flags});
    a.summary << "sigma_" << k << " = " << format_real(s.estimate.value) << "\n";
  }
  a.put("sigma.csv", all);
  a.put("sigma_headline.csv", heads);
}

void do_domination(const ExperimentConfig& cfg, Artifacts& a) {
  const SystemDef& sys = smooth(cfg, Command::domination);
  const OrbitCatalog cat = catalog_step(cfg, a);
  std::vector<DominationRow> rows;
  std::size_t weak = 0;
  for (std::size_t i = 0; i < cat.size(); ++i) {
    DominationRow r;
    r.orbit = i;
    r.report = n_domination_test(cat.orbits[i], cfg.domination_n, cfg.domination_horizon);
    for (int n : r.report.tested_n) {
      r.weak.push_back(weakness_test(cat.orbits[i], cfg.weak_period, n, r.report.horizon));
    }
    if (!r.weak.empty() && r.weak.back().value_or(false)) ++weak;
    rows.push_back(std::move(r));
  }
  a.put("domination.csv", domination_table(rows));
  a.put("gap.csv", gap_table(domination_gap(sys, cfg.gap_point, cfg.gap_n)));
  a.summary << "domination: " << weak << " of " << cat.size() << " orbits are "
            << cfg.weak_period << "," << cfg.domination_n.back() << "-weak\n";
}

void do_transition(const ExperimentConfig& cfg, Artifacts& a) {
  const SystemDef& sys = smooth(cfg, Command::transition);
  const OrbitCatalog cat = catalog_step(cfg, a);
  TransitionReport rep = pressure_curve(cat, sys, cfg.transition_m, cfg.t_grid);
  try {
    const TransitionPoint tp = transition_point(cat, sys, cfg.transition_m);
    rep.t0 = tp.t0;
    rep.t0_orbit = tp.orbit;
  } catch (const NoSaddle&) {
    a.summary << "t0: undefined (no saddle in the catalog)\n";
  }
  const PressureEstimate p = periodic_pressure(cat, sys, cfg.potential).estimate;
  rep.candidates = equilibrium_candidates(cat, sys, cfg.potential, p, cfg.candidate_tolerance);

  a.put("transition.csv", curve_table(rep));
  std::vector<SeriesPoint> series;
  for (const auto& c : rep.curve) series.push_back({c.t, c.value});
  a.put("transition_series.csv", series_table(series, "t", "value"));
  CsvTable t0({"m", "t0", "orbit"});
  if (rep.t0) t0.add_row({std::to_string(rep.m), format_real(*rep.t0), std::to_string(*rep.t0_orbit)});
  a.put("transition_t0.csv", t0);
  a.put("transition_candidates.csv", candidate_table(rep, cat));
  CsvTable kinks({"t"});
  for (double k : rep.kinks) kinks.add_row({format_real(k)});
  a.put("transition_kinks.csv", kinks);
  a.put("transition.json", transition_json(rep));

  if (rep.t0) a.summary << "t0 = " << format_real(*rep.t0) << " (orbit " << *rep.t0_orbit << ")\n";
  a.summary << "hyperbolicity margin of the potential: "
            << format_real(hyperbolicity_margin(cat, sys, cfg.potential, p)) << "\n";
  a.summary << "equilibrium candidates: " << rep.candidates.size() << "\n";
}

void do_validate(const ExperimentConfig& cfg, Artifacts& a) {
  if (cfg.sft) {
    // Symbolic systems: the transfer-matrix value against the zero-potential entropy shift.
    const PressureEstimate e = sft_pressure(*cfg.sft);
    CsvTable t({"method", "value", "bound_kind", "flags"});
    t.add_row({"sft", format_real(e.value), to_string(e.bound_kind), ""});
    a.put("validate.csv", t);
    a.summary << "validate: single exact method\n";
    return;
  }
  CrossValidationOptions opt;
  opt.orbits = cfg.orbits;
  opt.bowen = cfg.bowen;
  opt.grassmann = cfg.grassmann;
  opt.tolerance = cfg.validate_tolerance;
  const CrossValidation cv = cross_validate(*cfg.system, cfg.potential, opt);
  CsvTable t({"method", "value", "bound_kind", "flags"});
  for (const auto* e : {&cv.bowen, &cv.periodic, &cv.grassmann}) {
    std::string flags;
    for (const auto& f : e->flags) flags += (flags.empty() ? "" : ";") + f;
    t.add_row({to_string(e->method), format_real(e->value), to_string(e->bound_kind), flags});
  }
  a.put("validate.csv", t);
  CsvTable s({"spread", "tolerance", "disagreement", "ordering_violated"});
  s.add_row({format_real(cv.spread), format_real(opt.tolerance), cv.disagreement ? "true" : "false",
             cv.ordering_violated ? "true" : "false"});
  a.put("validate_spread.csv", s);
  for (const auto* e : {&cv.bowen, &cv.periodic, &cv.grassmann}) summarize_estimate(a.summary, *e);
  a.summary << "spread: " << format_real(cv.spread) << (cv.disagreement ? " (exceeds tolerance)" : "")
            << "\n";
  if (cv.bowen.has_flag("budget-exceeded")) a.result.exit_code = kExitBudget;
}

std::string manifest(const ExperimentConfig& cfg, Command command, const RunResult& r) {
  nlohmann::ordered_json j;
  const std::string resolved = cfg.resolved();
  j["tool"] = "pressure-lab";
  j["command"] = to_string(command);
  j["seed"] = cfg.seed;
  j["config_hash"] = fnv1a_hex(resolved);
  j["exit_code"] = r.exit_code;
  j["versions"] = {
      {"pressure_lab", PRESSURE_LAB_VERSION},
      {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                    "." + std::to_string(EIGEN_MINOR_VERSION)},
      {"compiler", __VERSION__},
  };
  j["files"] = nlohmann::ordered_json::object();
  for (const auto& [name, text] : r.files) j["files"][name] = fnv1a_hex(text);
  j["resolved_config"] = resolved;
  return j.dump(2) + "\n";
}

}  // namespace

RunResult execute(const ExperimentConfig& cfg, Command command) {
  if (!cfg.seed_given && !(command == Command::pressure && cfg.sft)) {
    throw InvalidArgument("a seed is required (config 'seed' or --seed)");
  }
  Artifacts a;
  a.summary << "pressure-lab " << to_string(command) << "\n";
  if (cfg.system) {
    a.summary << "system: " << cfg.system->name() << "\n";
    a.summary << "potential: " << cfg.potential.describe() << "\n";
  } else {
    a.summary << "system: sft on " << cfg.sft->alphabet() << " symbols\n";
  }
  a.summary << "seed: " << cfg.seed << "\n";
  switch (command) {
    case Command::orbits: do_orbits(cfg, a); break;
    case Command::pressure: do_pressure(cfg, a); break;
    case Command::sigma: do_sigma(cfg, a); break;
    case Command::domination: do_domination(cfg, a); break;
    case Command::transition: do_transition(cfg, a); break;
    case Command::validate: do_validate(cfg, a); break;
  }
  if (a.result.exit_code == kExitBudget) a.summary << "note: a search budget was exhausted; results are partial\n";
  a.put("summary.txt", a.summary.str());
  a.put("manifest.json", manifest(cfg, command, a.result));
  return std::move(a.result);
}

RunResult run(const RunRequest& request, std::ostream& log) {
  RunResult failed;
  failed.exit_code = kExitInvalid;
  RunResult result;
  try {
    ExperimentConfig cfg = load_config(request.config_path);
    if (request.seed) cfg.apply_seed(*request.seed);
    if (request.threads) cfg.apply_threads(*request.threads);
    if (request.out_dir) cfg.output = *request.out_dir;
    const std::optional<Command> cmd = request.command ? request.command : cfg.command;
    if (!cmd) throw InvalidArgument("no command given");
    result = execute(cfg, *cmd);
    result.out_dir = cfg.output;
  } catch (const Error& e) {
    failed.message = e.what();
    log << "error: " << e.what() << "\n";
    return failed;
  }

  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(result.out_dir, ec);
  if (ec || !fs::is_directory(result.out_dir)) {
    failed.message = "cannot create output directory '" + result.out_dir + "'";
    log << "error: " << failed.message << "\n";
    return failed;
  }
  for (const auto& [name, text] : result.files) {
    std::ofstream out(fs::path(result.out_dir) / name, std::ios::binary);
    out << text;
    if (!out) {
      failed.message = "cannot write '" + name + "' in '" + result.out_dir + "'";
      log << "error: " << failed.message << "\n";
      return failed;
    }
  }
  if (!request.quiet) log << result.files.at("summary.txt");
  return result;
}

}  // namespace pressure_lab
