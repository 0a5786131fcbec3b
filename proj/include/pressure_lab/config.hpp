#pragma once

#include "pressure_lab/orbits.hpp"
#include "pressure_lab/potential.hpp"
#include "pressure_lab/pressure.hpp"
#include "pressure_lab/system.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pressure_lab {

enum class Command { orbits, pressure, sigma, domination, transition, validate };

std::string to_string(Command c);
/// Throws InvalidArgument on an unknown name.
Command parse_command(const std::string& name);

/// Documented caps; configs beyond them are rejected.
struct BudgetCaps {
  static constexpr int max_period = 16;
  static constexpr int grid_density = 4096;
  static constexpr int bowen_n = 24;
  static constexpr int grassmann_n = 256;
  static constexpr int basepoint_grid = 2048;
  static constexpr int angle_grid = 65536;
  static constexpr int horizon = 100000;
  static constexpr std::size_t t_grid = 100000;
};

/// One experiment. Built by parse_config (which validates everything) so a
/// constructed value is always runnable.
struct ExperimentConfig {
  std::optional<Command> command;
  std::optional<SystemDef> system;  // absent for symbolic systems
  std::optional<SftModel> sft;
  Potential potential = Potential::zero();

  std::uint64_t seed = 0;
  int threads = 1;
  std::string output = "pressure-lab-out";

  OrbitSearchOptions orbits;  // max_period defaults to 3 here
  std::string pressure_method = "periodic";
  BowenOptions bowen;
  GrassmannOptions grassmann;
  std::vector<int> sigma_k{1, 2};
  bool include_k0 = false;

  std::vector<int> domination_n{1};
  int domination_horizon = 0;  // 0 = default
  int weak_period = 1;
  Point gap_point = Point::Zero();
  int gap_n = 32;

  int transition_m = 1;
  std::vector<double> t_grid{0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
  double candidate_tolerance = 1e-6;

  double validate_tolerance = 0.05;

  bool seed_given = false;
  std::string system_yaml;     // the system and potential sections as given
  std::string potential_yaml;

  /// Canonical YAML with every default filled in.
  std::string resolved() const;

  /// Propagates seed and thread count into the per-module options.
  void apply_seed(std::uint64_t s);  // also marks the seed as given
  void apply_threads(int t);
};

/// Parses and validates a YAML document. Throws ParseError on malformed YAML
/// and InvalidArgument on schema or range violations.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

}  // namespace pressure_lab
