#include "doctest.h"

#include "oracles.hpp"

#include "pressure_lab/export.hpp"
#include "pressure_lab/run.hpp"
#include "pressure_lab/transition.hpp"

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace pressure_lab;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("pressure_lab_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

fs::path write(const fs::path& dir, const std::string& name, const std::string& text) {
  std::ofstream(dir / name) << text;
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run_cli(Command c, const fs::path& cfg, const fs::path& out, std::optional<int> threads = {}) {
  RunRequest r;
  r.command = c;
  r.config_path = cfg.string();
  r.out_dir = out.string();
  r.threads = threads;
  r.quiet = true;
  std::ostringstream log;
  return run(r, log);
}

const char* kCatmap = R"(
seed: 7
system:
  kind: cat-map
potential:
  kind: zero
orbits:
  max_period: 3
grassmann:
  n_list: [1, 2, 4, 8]
  basepoint_grid: 16
  angle_grid: 64
bowen:
  n_min: 3
  n_max: 6
  epsilon: 0.1
  grid_density: 24
)";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("pressure writes csv, summary and manifest") {
  TempDir t;
  const auto cfg = write(t.path, "catmap_phi0.yaml", kCatmap);
  const auto r = run_cli(Command::pressure, cfg, t.path / "out");
  REQUIRE(r.exit_code == kExitOk);
  CHECK(fs::exists(t.path / "out" / "pressure.csv"));
  CHECK(fs::exists(t.path / "out" / "summary.txt"));
  CHECK(fs::exists(t.path / "out" / "manifest.json"));
  const std::string csv = slurp(t.path / "out" / "pressure.csv");
  CHECK(csv.find("periodic,0.9624236501192") != std::string::npos);
  const std::string manifest = slurp(t.path / "out" / "manifest.json");
  CHECK(manifest.find("\"config_hash\"") != std::string::npos);
  CHECK(manifest.find("\"seed\": 7") != std::string::npos);
}

TEST_CASE("validate reports the spread table") {
  TempDir t;
  const auto cfg = write(t.path, "c.yaml", kCatmap);
  const auto r = run_cli(Command::validate, cfg, t.path / "out");
  CHECK(r.exit_code == kExitOk);
  const std::string csv = slurp(t.path / "out" / "validate.csv");
  CHECK(csv.find("bowen,") != std::string::npos);
  CHECK(csv.find("periodic,") != std::string::npos);
  CHECK(csv.find("grassmann,") != std::string::npos);
  CHECK(fs::exists(t.path / "out" / "validate_spread.csv"));
}

TEST_CASE("malformed or invalid config: exit 2 and no files") {
  TempDir t;
  for (const char* text : {"system: [unclosed", "seed: 1\nsystem: {kind: cat-map}\nbogus: 3\n",
                           "seed: 1\nsystem: {kind: warp-drive}\n",
                           "seed: 1\nsystem: {kind: cat-map}\norbits: {max_period: 99}\n",
                           "system: {kind: cat-map}\n",  // no seed
                           "seed: 1\nsystem: {kind: cat-map}\npotential: {kind: expression, expression: 'sin(x)'}\n"}) {
    CAPTURE(text);
    const auto cfg = write(t.path, "bad.yaml", text);
    const auto out = t.path / "never";
    const auto r = run_cli(Command::pressure, cfg, out);
    CHECK(r.exit_code == kExitInvalid);
    CHECK(!fs::exists(out));
  }
  const auto r = run_cli(Command::pressure, t.path / "missing.yaml", t.path / "never");
  CHECK(r.exit_code == kExitInvalid);
}

TEST_CASE("unwritable output directory: exit 2") {
  TempDir t;
  const auto cfg = write(t.path, "c.yaml", kCatmap);
  write(t.path, "blocker", "a file, not a directory");
  CHECK(run_cli(Command::pressure, cfg, t.path / "blocker" / "sub").exit_code == kExitInvalid);
}

TEST_CASE("budget exhaustion: exit 3 with partial results") {
  TempDir t;
  const auto cfg = write(t.path, "c.yaml", std::string(kCatmap) + "pressure: {method: bowen}\n");
  std::string text = slurp(cfg);
  text.replace(text.find("grid_density: 24"), 16, "grid_density: 24\n  max_samples: 4000");
  write(t.path, "c.yaml", text);
  const auto r = run_cli(Command::pressure, cfg, t.path / "out");
  CHECK(r.exit_code == kExitBudget);
  CHECK(fs::exists(t.path / "out" / "pressure.csv"));
  CHECK(slurp(t.path / "out" / "pressure.csv").find("budget-exceeded") != std::string::npos);
}

TEST_CASE("symbolic pressure") {
  TempDir t;
  const auto cfg = write(t.path, "g.yaml",
                         "system:\n  kind: sft\n  transitions: [[1, 1], [1, 0]]\n");
  const auto r = run_cli(Command::pressure, cfg, t.path / "out");
  REQUIRE(r.exit_code == kExitOk);
  CHECK(slurp(t.path / "out" / "pressure.csv").find("sft,0.48121182505960") != std::string::npos);
  CHECK(run_cli(Command::orbits, cfg, t.path / "out2").exit_code == kExitInvalid);
}

TEST_CASE("plot series are projections of the reports") {
  TempDir t;
  const auto cfg = write(t.path, "s.yaml", R"(
seed: 3
system: {kind: standard-map, k: 1.0}
orbits: {max_period: 1, grid_density: 24}
transition: {m: 1, t_grid: [0, 1, 2, 3]}
grassmann: {n_list: [1, 2, 4, 8], basepoint_grid: 16, angle_grid: 64}
)");
  REQUIRE(run_cli(Command::transition, cfg, t.path / "tr").exit_code == kExitOk);
  const std::string series = slurp(t.path / "tr" / "transition_series.csv");
  const std::string curve = slurp(t.path / "tr" / "transition.csv");
  // Same t and value columns, row for row.
  std::istringstream a(series), b(curve);
  std::string la, lb;
  std::getline(a, la);
  std::getline(b, lb);
  CHECK(la == "t,value");
  int rows = 0;
  while (std::getline(a, la) && std::getline(b, lb)) {
    CHECK(lb.rfind(la + ",", 0) == 0);
    ++rows;
  }
  CHECK(rows == 4);
  CHECK(slurp(t.path / "tr" / "transition_candidates.csv") == "orbit,period,x,y,lambda_plus\n");

  REQUIRE(run_cli(Command::sigma, cfg, t.path / "sg").exit_code == kExitOk);
  std::istringstream s(slurp(t.path / "sg" / "sigma_k1.csv"));
  std::string line;
  std::getline(s, line);
  CHECK(line == "n,sup");
  double prev = 1e300;
  while (std::getline(s, line)) {
    const double v = std::stod(line.substr(line.find(',') + 1));
    CHECK(v <= prev);
    prev = v;
  }

  CHECK(series_table({}, "n", "value").str() == "n,value\n");
}

TEST_CASE("identical config and seed give identical files across thread counts") {
  TempDir t;
  const auto cfg = write(t.path, "c.yaml", R"(
seed: 99
system: {kind: standard-map, k: 1.3}
orbits: {max_period: 3, grid_density: 20}
grassmann: {n_list: [1, 2, 4], basepoint_grid: 16, angle_grid: 64}
domination: {n_values: [1, 4, 16]}
)");
  for (Command c : {Command::orbits, Command::sigma, Command::domination, Command::transition}) {
    CAPTURE(to_string(c));
    const auto a = run_cli(c, cfg, t.path / "a", 1);
    const auto b = run_cli(c, cfg, t.path / "b", 3);
    REQUIRE(a.exit_code == kExitOk);
    CHECK(a.files == b.files);
    for (const auto& [name, text] : a.files) CHECK(slurp(t.path / "b" / name) == text);
  }
}

TEST_CASE("csv formatting") {
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(std::stod(format_real(oracle::log_cat_lambda())) == oracle::log_cat_lambda());
  CsvTable tb({"a", "b"});
  tb.add_row({"x,y", "q\"r"});
  CHECK(tb.str() == "a,b\n\"x,y\",\"q\"\"r\"\n");
  CHECK_THROWS(tb.add_row({"1"}));
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

}  // TEST_SUITE
