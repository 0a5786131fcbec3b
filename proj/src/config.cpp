#include "pressure_lab/config.hpp"

#include "pressure_lab/errors.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace pressure_lab {

std::string to_string(Command c) {
  switch (c) {
    case Command::orbits: return "orbits";
    case Command::pressure: return "pressure";
    case Command::sigma: return "sigma";
    case Command::domination: return "domination";
    case Command::transition: return "transition";
    case Command::validate: return "validate";
  }
  return "?";
}

Command parse_command(const std::string& name) {
  for (Command c : {Command::orbits, Command::pressure, Command::sigma, Command::domination,
                    Command::transition, Command::validate}) {
    if (to_string(c) == name) return c;
  }
  throw InvalidArgument("unknown command '" + name + "'");
}

void ExperimentConfig::apply_seed(std::uint64_t s) {
  seed = s;
  seed_given = true;
  orbits.seed = s;
  bowen.seed = s;
  grassmann.seed = s;
}

void ExperimentConfig::apply_threads(int t) {
  if (t < 1) throw InvalidArgument("threads must be >= 1");
  threads = t;
  orbits.threads = t;
  bowen.threads = t;
  grassmann.threads = t;
}

namespace {

// Section reader that rejects unknown keys, so typos fail loudly.
class Section {
 public:
  Section(const YAML::Node& node, std::string path) : node_(node), path_(std::move(path)) {
    if (node_ && !node_.IsNull() && !node_.IsMap()) fail("must be a mapping");
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return node_ && node_.IsMap() && node_[key] && !node_[key].IsNull();
  }

  YAML::Node raw(const std::string& key) {
    seen_.insert(key);
    return node_ && node_.IsMap() ? node_[key] : YAML::Node();
  }

  template <class T>
  T get(const std::string& key, T fallback) {
    if (!has(key)) return fallback;
    try {
      return node_[key].as<T>();
    } catch (const YAML::Exception&) {
      fail(key + ": wrong type");
    }
  }

  int get_int(const std::string& key, int fallback, int lo, int hi) {
    const int v = get<int>(key, fallback);
    if (v < lo || v > hi) {
      fail(key + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return v;
  }

  double get_real(const std::string& key, double fallback) {
    const double v = get<double>(key, fallback);
    if (!std::isfinite(v)) fail(key + " must be finite");
    return v;
  }

  void finish() const {
    if (!node_ || !node_.IsMap()) return;
    for (const auto& kv : node_) {
      const auto key = kv.first.as<std::string>();
      if (!seen_.count(key)) fail("unknown key '" + key + "'");
    }
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidArgument((path_.empty() ? std::string() : path_ + ": ") + what);
  }

 private:
  YAML::Node node_;
  std::string path_;
  std::set<std::string> seen_;
};

Eigen::Matrix2i read_matrix2(const YAML::Node& n, Section& s) {
  if (!n.IsSequence() || n.size() != 2) s.fail("matrix must be [[a,b],[c,d]]");
  Eigen::Matrix2i m;
  for (int i = 0; i < 2; ++i) {
    if (!n[i].IsSequence() || n[i].size() != 2) s.fail("matrix must be [[a,b],[c,d]]");
    for (int j = 0; j < 2; ++j) {
      try {
        m(i, j) = n[i][j].as<int>();
      } catch (const YAML::Exception&) {
        s.fail("matrix entries must be integers");
      }
    }
  }
  return m;
}

SystemDef read_smooth_system(const YAML::Node& node, const std::string& path) {
  Section s(node, path);
  const auto kind = s.get<std::string>("kind", "");
  SystemDef sys = SystemDef::identity();
  if (kind == "cat-map") {
    sys = SystemDef::cat_map();
  } else if (kind == "linear-torus") {
    if (!s.has("matrix")) s.fail("linear-torus needs 'matrix'");
    sys = SystemDef::linear_torus(read_matrix2(s.raw("matrix"), s));
  } else if (kind == "standard-map") {
    sys = SystemDef::standard_map(s.get_real("k", 1.0));
  } else if (kind == "shear") {
    sys = SystemDef::shear(s.get_real("amplitude", 0.0), s.get_int("axis", 0, 0, 1),
                           s.get_real("period", 1.0));
  } else if (kind == "identity") {
    sys = SystemDef::identity(s.get_real("period", 1.0));
  } else if (kind == "composed") {
    const auto steps = s.raw("steps");
    if (!steps || !steps.IsSequence() || steps.size() == 0) s.fail("composed needs a non-empty 'steps' list");
    for (std::size_t i = 0; i < steps.size(); ++i) {
      SystemDef part = read_smooth_system(steps[i], path + ".steps[" + std::to_string(i) + "]");
      sys = i == 0 ? part : sys.then(part);
    }
  } else {
    s.fail("unknown system kind '" + kind + "'");
  }
  if (s.get<bool>("inverse", false)) sys = sys.inverse();
  s.finish();
  return sys;
}

std::vector<double> read_reals(const YAML::Node& n, Section& s, const std::string& key) {
  if (!n.IsSequence()) s.fail(key + " must be a list");
  std::vector<double> out;
  for (const auto& e : n) {
    double v = 0;
    try {
      v = e.as<double>();
    } catch (const YAML::Exception&) {
      s.fail(key + " entries must be numbers");
    }
    if (!std::isfinite(v)) s.fail(key + " entries must be finite");
    out.push_back(v);
  }
  return out;
}

std::vector<int> read_ints(const YAML::Node& n, Section& s, const std::string& key) {
  if (!n.IsSequence()) s.fail(key + " must be a list");
  std::vector<int> out;
  for (const auto& e : n) {
    try {
      out.push_back(e.as<int>());
    } catch (const YAML::Exception&) {
      s.fail(key + " entries must be integers");
    }
  }
  return out;
}

SftModel read_sft(Section& s) {
  const auto b = s.raw("transitions");
  if (!b || !b.IsSequence() || b.size() == 0) s.fail("sft needs a square 'transitions' matrix");
  const auto n = static_cast<Eigen::Index>(b.size());
  Eigen::MatrixXi m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto row = read_ints(b[static_cast<std::size_t>(i)], s, "transitions");
    if (static_cast<Eigen::Index>(row.size()) != n) s.fail("transitions must be square");
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = row[static_cast<std::size_t>(j)];
  }
  if (s.has("edge_potential")) {
    if (s.has("symbol_potential")) s.fail("give symbol_potential or edge_potential, not both");
    const auto e = s.raw("edge_potential");
    if (!e.IsSequence() || static_cast<Eigen::Index>(e.size()) != n) s.fail("edge_potential must be n x n");
    Eigen::MatrixXd phi(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto row = read_reals(e[static_cast<std::size_t>(i)], s, "edge_potential");
      if (static_cast<Eigen::Index>(row.size()) != n) s.fail("edge_potential must be n x n");
      for (Eigen::Index j = 0; j < n; ++j) phi(i, j) = row[static_cast<std::size_t>(j)];
    }
    return SftModel::with_edge_potential(m, phi);
  }
  Eigen::VectorXd phi = Eigen::VectorXd::Zero(n);
  if (s.has("symbol_potential")) {
    const auto v = read_reals(s.raw("symbol_potential"), s, "symbol_potential");
    if (static_cast<Eigen::Index>(v.size()) != n) s.fail("symbol_potential must have one entry per symbol");
    for (Eigen::Index i = 0; i < n; ++i) phi(i) = v[static_cast<std::size_t>(i)];
  }
  return SftModel::with_symbol_potential(m, phi);
}

Potential read_potential(const YAML::Node& node) {
  Section s(node, "potential");
  const auto kind = s.get<std::string>("kind", "zero");
  Potential phi = Potential::zero();
  if (kind == "zero") {
  } else if (kind == "constant") {
    phi = Potential::constant(s.get_real("value", 0.0));
  } else if (kind == "expression") {
    if (!s.has("expression")) s.fail("expression potential needs 'expression'");
    phi = Potential::expression(s.get<std::string>("expression", ""));
  } else if (kind == "geometric") {
    phi = Potential::geometric(s.get_int("m", 1, 1, 1000));
  } else {
    s.fail("unknown potential kind '" + kind + "'");
  }
  if (s.has("scale")) phi = phi.scaled(s.get_real("scale", 1.0));
  if (s.has("shift")) phi = phi.shifted(s.get_real("shift", 0.0));
  s.finish();
  return phi;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ParseError(std::string("malformed config: ") + e.what());
  }
  if (!root.IsMap()) throw ParseError("config must be a YAML mapping");

  ExperimentConfig cfg;
  Section top(root, "");
  if (top.has("command")) cfg.command = parse_command(top.get<std::string>("command", ""));

  // system
  {
    const auto node = top.raw("system");
    if (!node || !node.IsMap()) top.fail("'system' section is required");
    if (node["kind"] && node["kind"].as<std::string>() == "sft") {
      Section s(node, "system");
      s.get<std::string>("kind", "");
      cfg.sft = read_sft(s);
      s.finish();
    } else {
      cfg.system = read_smooth_system(node, "system");
    }
  }
  cfg.potential = read_potential(top.raw("potential"));
  if (cfg.system) cfg.potential.check_compatible(*cfg.system);
  if (cfg.sft && !(cfg.potential.is_constant() && cfg.potential.constant_value() == 0.0)) {
    top.fail("symbolic systems carry their potential in the system section");
  }

  cfg.system_yaml = YAML::Dump(top.raw("system"));
  cfg.potential_yaml = top.has("potential") ? YAML::Dump(top.raw("potential")) : "kind: zero";
  if (top.has("seed")) {
    const auto seed = top.get<long long>("seed", 0);
    if (seed < 0) top.fail("seed must be non-negative");
    cfg.apply_seed(static_cast<std::uint64_t>(seed));
  }
  cfg.apply_threads(top.get_int("threads", 1, 1, 1024));
  cfg.output = top.get<std::string>("output", cfg.output);
  if (cfg.output.empty()) top.fail("output must be a non-empty path");

  {
    Section s(top.raw("orbits"), "orbits");
    cfg.orbits.max_period = s.get_int("max_period", 3, 1, BudgetCaps::max_period);
    cfg.orbits.grid_density = s.get_int("grid_density", 16, 1, BudgetCaps::grid_density);
    cfg.orbits.newton_iterations = s.get_int("newton_iterations", 50, 1, 10000);
    cfg.orbits.newton_tolerance = s.get_real("newton_tolerance", 1e-12);
    if (!(cfg.orbits.newton_tolerance > 0)) s.fail("newton_tolerance must be positive");
    cfg.orbits.max_orbits = static_cast<std::size_t>(s.get_int("max_orbits", 200000, 1, 10000000));
    s.finish();
  }
  {
    Section s(top.raw("pressure"), "pressure");
    cfg.pressure_method = s.get<std::string>("method", cfg.sft ? "sft" : "periodic");
    const std::set<std::string> methods{"periodic", "bowen", "grassmann", "sft"};
    if (!methods.count(cfg.pressure_method)) s.fail("unknown method '" + cfg.pressure_method + "'");
    if ((cfg.pressure_method == "sft") != cfg.sft.has_value()) {
      s.fail("method 'sft' applies exactly to symbolic systems");
    }
    s.finish();
  }
  {
    Section s(top.raw("bowen"), "bowen");
    cfg.bowen.n_min = s.get_int("n_min", 6, 1, BudgetCaps::bowen_n);
    cfg.bowen.n_max = s.get_int("n_max", 10, 2, BudgetCaps::bowen_n);
    if (cfg.bowen.n_max <= cfg.bowen.n_min) s.fail("n_max must exceed n_min");
    cfg.bowen.epsilon = s.get_real("epsilon", 0.05);
    if (!(cfg.bowen.epsilon > 0)) s.fail("epsilon must be positive");
    cfg.bowen.grid_density = s.get_int("grid_density", 48, 1, BudgetCaps::grid_density);
    cfg.bowen.samples_per_cylinder = s.get_real("samples_per_cylinder", 3.0);
    if (!(cfg.bowen.samples_per_cylinder >= 1.0)) s.fail("samples_per_cylinder must be >= 1");
    const auto ms = s.get<long long>("max_samples", cfg.bowen.max_samples);
    if (ms < 1 || ms > 20'000'000'000LL) s.fail("max_samples must lie in [1, 2e10]");
    cfg.bowen.max_samples = ms;
    s.finish();
  }
  {
    Section s(top.raw("grassmann"), "grassmann");
    if (s.has("n_list")) cfg.grassmann.n_list = read_ints(s.raw("n_list"), s, "n_list");
    if (cfg.grassmann.n_list.empty()) s.fail("n_list must be non-empty");
    for (int n : cfg.grassmann.n_list) {
      if (n < 1 || n > BudgetCaps::grassmann_n) s.fail("n_list entries must lie in [1, 256]");
    }
    cfg.grassmann.basepoint_grid = s.get_int("basepoint_grid", 64, 1, BudgetCaps::basepoint_grid);
    cfg.grassmann.angle_grid = s.get_int("angle_grid", 256, 4, BudgetCaps::angle_grid);
    cfg.grassmann.refine_steps = s.get_int("refine_steps", 20, 0, 200);
    cfg.grassmann.refine_basepoints = s.get_int("refine_basepoints", 8, 0, 10000);
    cfg.grassmann.hill_climb_steps = s.get_int("hill_climb_steps", 40, 0, 10000);
    if (s.has("k")) cfg.sigma_k = read_ints(s.raw("k"), s, "k");
    for (int k : cfg.sigma_k) {
      if (k < 0 || k > kDim) s.fail("k entries must lie in [0, 2]");
    }
    if (cfg.sigma_k.empty()) s.fail("k must be non-empty");
    cfg.include_k0 = s.get<bool>("include_k0", false);
    s.finish();
  }
  {
    Section s(top.raw("domination"), "domination");
    if (s.has("n_values")) cfg.domination_n = read_ints(s.raw("n_values"), s, "n_values");
    if (cfg.domination_n.empty()) s.fail("n_values must be non-empty");
    for (int n : cfg.domination_n) {
      if (n < 1 || n > BudgetCaps::horizon) s.fail("n_values entries must be >= 1");
    }
    cfg.domination_horizon = s.get_int("horizon", 0, 0, BudgetCaps::horizon);
    cfg.weak_period = s.get_int("weak_period", 1, 1, 1000000);
    if (s.has("gap_point")) {
      const auto p = read_reals(s.raw("gap_point"), s, "gap_point");
      if (p.size() != 2) s.fail("gap_point must be [x, y]");
      cfg.gap_point = Point(p[0], p[1]);
    }
    cfg.gap_n = s.get_int("gap_n", 32, 1, BudgetCaps::horizon);
    s.finish();
  }
  {
    Section s(top.raw("transition"), "transition");
    cfg.transition_m = s.get_int("m", 1, 1, 1000);
    if (s.has("t_grid")) cfg.t_grid = read_reals(s.raw("t_grid"), s, "t_grid");
    if (cfg.t_grid.empty() || cfg.t_grid.size() > BudgetCaps::t_grid) s.fail("t_grid size out of range");
    for (std::size_t i = 0; i < cfg.t_grid.size(); ++i) {
      if (cfg.t_grid[i] < 0) s.fail("t_grid must lie in [0, inf)");
      if (i && cfg.t_grid[i] <= cfg.t_grid[i - 1]) s.fail("t_grid must be ascending");
    }
    cfg.candidate_tolerance = s.get_real("tolerance", 1e-6);
    if (cfg.candidate_tolerance < 0) s.fail("tolerance must be >= 0");
    s.finish();
  }
  {
    Section s(top.raw("validate"), "validate");
    cfg.validate_tolerance = s.get_real("tolerance", 0.05);
    if (!(cfg.validate_tolerance > 0)) s.fail("tolerance must be positive");
    s.finish();
  }
  top.finish();

  if (cfg.system) {
    const double L = cfg.system->period();
    if (!(cfg.bowen.epsilon < L / 4)) top.fail("bowen.epsilon must be < period / 4");
  }

  return cfg;
}

// Every default filled in. Threads and output are excluded: neither affects
// any result.
std::string ExperimentConfig::resolved() const {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;
  if (command) out << YAML::Key << "command" << YAML::Value << to_string(*command);
  out << YAML::Key << "system" << YAML::Value << YAML::Load(system_yaml);
  out << YAML::Key << "potential" << YAML::Value << YAML::Load(potential_yaml);
  out << YAML::Key << "seed" << YAML::Value << seed;
  out << YAML::Key << "orbits" << YAML::Value << YAML::BeginMap
      << YAML::Key << "max_period" << YAML::Value << orbits.max_period
      << YAML::Key << "grid_density" << YAML::Value << orbits.grid_density
      << YAML::Key << "newton_iterations" << YAML::Value << orbits.newton_iterations
      << YAML::Key << "newton_tolerance" << YAML::Value << orbits.newton_tolerance
      << YAML::Key << "max_orbits" << YAML::Value << orbits.max_orbits << YAML::EndMap;
  out << YAML::Key << "pressure" << YAML::Value << YAML::BeginMap
      << YAML::Key << "method" << YAML::Value << pressure_method << YAML::EndMap;
  out << YAML::Key << "bowen" << YAML::Value << YAML::BeginMap
      << YAML::Key << "n_min" << YAML::Value << bowen.n_min
      << YAML::Key << "n_max" << YAML::Value << bowen.n_max
      << YAML::Key << "epsilon" << YAML::Value << bowen.epsilon
      << YAML::Key << "grid_density" << YAML::Value << bowen.grid_density
      << YAML::Key << "samples_per_cylinder" << YAML::Value << bowen.samples_per_cylinder
      << YAML::Key << "max_samples" << YAML::Value << bowen.max_samples << YAML::EndMap;
  out << YAML::Key << "grassmann" << YAML::Value << YAML::BeginMap
      << YAML::Key << "n_list" << YAML::Value << YAML::Flow << grassmann.n_list
      << YAML::Key << "basepoint_grid" << YAML::Value << grassmann.basepoint_grid
      << YAML::Key << "angle_grid" << YAML::Value << grassmann.angle_grid
      << YAML::Key << "refine_steps" << YAML::Value << grassmann.refine_steps
      << YAML::Key << "refine_basepoints" << YAML::Value << grassmann.refine_basepoints
      << YAML::Key << "hill_climb_steps" << YAML::Value << grassmann.hill_climb_steps
      << YAML::Key << "k" << YAML::Value << YAML::Flow << sigma_k
      << YAML::Key << "include_k0" << YAML::Value << include_k0 << YAML::EndMap;
  out << YAML::Key << "domination" << YAML::Value << YAML::BeginMap
      << YAML::Key << "n_values" << YAML::Value << YAML::Flow << domination_n
      << YAML::Key << "horizon" << YAML::Value << domination_horizon
      << YAML::Key << "weak_period" << YAML::Value << weak_period
      << YAML::Key << "gap_point" << YAML::Value << YAML::Flow
      << std::vector<double>{gap_point.x(), gap_point.y()}
      << YAML::Key << "gap_n" << YAML::Value << gap_n << YAML::EndMap;
  out << YAML::Key << "transition" << YAML::Value << YAML::BeginMap
      << YAML::Key << "m" << YAML::Value << transition_m
      << YAML::Key << "t_grid" << YAML::Value << YAML::Flow << t_grid
      << YAML::Key << "tolerance" << YAML::Value << candidate_tolerance << YAML::EndMap;
  out << YAML::Key << "validate" << YAML::Value << YAML::BeginMap
      << YAML::Key << "tolerance" << YAML::Value << validate_tolerance << YAML::EndMap;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace pressure_lab
