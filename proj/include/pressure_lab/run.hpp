#pragma once

#include "pressure_lab/config.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

namespace pressure_lab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitBudget = 3;

struct RunRequest {
  std::optional<Command> command;  // overrides the config's command
  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  bool quiet = false;
};

struct RunResult {
  int exit_code = kExitOk;
  std::string message;
  /// File name -> contents, in the order they are written (sorted by name).
  std::map<std::string, std::string> files;
  std::string out_dir;
};

/// Computes every artifact of one command in memory. Throws on invalid input.
/// The returned exit code is kExitBudget when a search budget ran out.
RunResult execute(const ExperimentConfig& cfg, Command command);

/// Full batch run: load, validate, execute, write. Nothing is written unless
/// the config validates. `log` receives the summary unless quiet.
RunResult run(const RunRequest& request, std::ostream& log);

/// FNV-1a 64-bit, as 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& data);

}  // namespace pressure_lab
