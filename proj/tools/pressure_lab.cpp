// pressure-lab: batch front end.
//   pressure-lab <command> --config PATH [--out DIR] [--seed INT] [--threads INT] [--quiet]

#include "pressure_lab/run.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
  using namespace pressure_lab;

  CLI::App app{"Topological pressure of explicit conservative surface maps"};
  std::string command;
  RunRequest req;
  std::uint64_t seed = 0;
  int threads = 0;
  app.add_option("command", command, "orbits | pressure | sigma | domination | transition | validate")
      ->required()
      ->check(CLI::IsMember({"orbits", "pressure", "sigma", "domination", "transition", "validate"}));
  app.add_option("--config", req.config_path, "experiment config (YAML)")->required();
  auto* out_opt = app.add_option("--out", req.out_dir, "output directory");
  auto* seed_opt = app.add_option("--seed", seed, "overrides the config seed");
  auto* threads_opt =
      app.add_option("--threads", threads, "worker threads (env PRESSURE_LAB_THREADS)")->check(CLI::PositiveNumber);
  app.add_flag("--quiet", req.quiet, "suppress the summary");
  (void)out_opt;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInvalid;
  }

  req.command = parse_command(command);
  if (seed_opt->count()) req.seed = seed;
  if (threads_opt->count()) {
    req.threads = threads;
  } else if (const char* env = std::getenv("PRESSURE_LAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1 || v > 1024) {
      std::cerr << "error: PRESSURE_LAB_THREADS must be a positive integer\n";
      return kExitInvalid;
    }
    req.threads = static_cast<int>(v);
  }

  const RunResult r = run(req, std::cout);
  if (r.exit_code == kExitInvalid && !req.quiet) std::cerr << "pressure-lab: " << r.message << "\n";
  return r.exit_code;
}
