#pragma once

#include "pressure_lab/orbits.hpp"
#include "pressure_lab/potential.hpp"
#include "pressure_lab/system.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pressure_lab {

enum class Method { bowen, periodic, grassmann, sft };
enum class BoundKind { lower, upper, two_sided, heuristic };

std::string to_string(Method m);
std::string to_string(BoundKind b);

struct SeriesPoint {
  double x = 0.0;  // n for per-n series
  double value = 0.0;
};

struct PressureEstimate {
  double value = 0.0;
  Method method = Method::periodic;
  BoundKind bound_kind = BoundKind::heuristic;
  std::map<std::string, double> parameters;
  std::vector<SeriesPoint> series;  // per-n diagnostic sequence
  std::vector<std::string> flags;   // budget / sampling / structural warnings
  std::string note;                 // e.g. arg-max description

  bool has_flag(const std::string& f) const;
};

// ---------------------------------------------------------------- periodic

struct PeriodicPressure {
  PressureEstimate estimate;
  std::size_t argmax = 0;  // index into the catalog
};

/// max over the catalog of delta_phi. A lower bound: the catalog is a finite
/// part of the set of periodic orbits.
PeriodicPressure periodic_pressure(const OrbitCatalog& catalog, const SystemDef& sys,
                                   const Potential& phi);

// ---------------------------------------------------------------- bowen

struct BowenOptions {
  int n_min = 6;
  int n_max = 10;
  double epsilon = 0.05;
  /// Minimum number of samples per axis over the whole domain.
  int grid_density = 48;
  /// Samples drawn per predicted itinerary cylinder.
  double samples_per_cylinder = 3.0;
  std::int64_t max_samples = 200'000'000;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct BowenLevel {
  int n = 0;
  double log_q = 0.0;           // log of the spanning-set weight sum
  std::size_t centres = 0;      // cardinality of the spanning set
  std::int64_t samples = 0;
  double singleton_fraction = 0.0;  // Good-Turing unseen-mass proxy
};

struct BowenPressure {
  PressureEstimate estimate;
  std::vector<BowenLevel> levels;  // n = 1 .. last completed level
  std::vector<double> differences; // log Q_{n+1} - log Q_n for n in [n_min, n_max - 1]
  bool budget_exceeded = false;
};

/// Spanning-set pressure estimator. Every nonempty n-cylinder of a partition
/// into cells of diameter < epsilon lies inside the d_n-ball of any of its
/// points, so one centre per cylinder (the sampled point with the smallest
/// S_n phi) is an (n, epsilon)-spanning set. Headline: median of successive
/// differences of log Q_n over [n_min, n_max].
BowenPressure bowen_pressure(const SystemDef& sys, const Potential& phi, const BowenOptions& opt);

// ---------------------------------------------------------------- grassmann

struct GrassmannOptions {
  std::vector<int> n_list{1, 2, 4, 8, 16};
  int basepoint_grid = 64;
  int angle_grid = 256;
  int refine_steps = 20;     // golden-section steps in the angle
  int refine_basepoints = 8; // best grid basepoints refined by hill-climbing
  int hill_climb_steps = 40;
  std::uint64_t seed = 0;
  int threads = 1;
};

/// Basepoint, k-plane (angle for k = 1) and the n-step record of the best sample.
struct GrassmannSample {
  Point base;
  double angle = 0.0;
  int k = 1;
  int n = 1;
  double log_jacobian = 0.0;
  double birkhoff = 0.0;
  double value() const { return (log_jacobian + birkhoff) / n; }
};

struct SigmaK {
  PressureEstimate estimate;
  std::vector<GrassmannSample> best;  // one per n in n_list
  std::vector<double> per_n_sup;      // aligned with n_list
  std::vector<int> n_list;
};

/// Approximates sup over Grass_k of (1/n)(log|Jac(f^n, E)| + S_n phi(base(E)))
/// for each n; headline = min over n (each per-n sup bounds the limit from above).
/// k = 0 gives the pure Birkhoff sup.
SigmaK sigma_k(const SystemDef& sys, const Potential& phi, int k, const GrassmannOptions& opt);

struct GrassmannPressure {
  PressureEstimate estimate;
  int argmax_k = 1;
  std::vector<SigmaK> per_k;  // k = 1 .. 2
  std::optional<SigmaK> k0;
};

GrassmannPressure grassmann_pressure(const SystemDef& sys, const Potential& phi,
                                     const GrassmannOptions& opt, bool include_k0 = false);

// ---------------------------------------------------------------- symbolic

/// Subshift of finite type with a potential locally constant on one or two symbols.
class SftModel {
 public:
  /// phi(i) depends on the current symbol only.
  static SftModel with_symbol_potential(const Eigen::MatrixXi& transitions,
                                        const Eigen::VectorXd& phi);
  /// phi(i, j) depends on the current and next symbol.
  static SftModel with_edge_potential(const Eigen::MatrixXi& transitions,
                                      const Eigen::MatrixXd& phi);
  static SftModel full_shift(int symbols);
  static SftModel golden_mean();

  int alphabet() const { return static_cast<int>(transitions_.rows()); }
  const Eigen::MatrixXi& transitions() const { return transitions_; }
  const Eigen::MatrixXd& edge_potential() const { return phi_; }
  /// M_ij = B_ij exp(phi(i, j)).
  Eigen::MatrixXd weighted_matrix() const;
  bool irreducible() const;
  SftModel with_zero_potential() const;

 private:
  SftModel(Eigen::MatrixXi transitions, Eigen::MatrixXd phi);

  Eigen::MatrixXi transitions_;
  Eigen::MatrixXd phi_;
};

struct SftSpectrum {
  double spectral_radius = 0.0;
  Eigen::VectorXd right;  // Perron vector, normalised to sum 1
  Eigen::VectorXd left;
};

SftSpectrum sft_spectrum(const SftModel& model);
/// log spectral radius of the weighted transition matrix.
PressureEstimate sft_pressure(const SftModel& model);
double sft_entropy(const SftModel& model);

// ---------------------------------------------------------------- cross-check

struct CrossValidationOptions {
  OrbitSearchOptions orbits;
  BowenOptions bowen;
  GrassmannOptions grassmann;
  double tolerance = 0.05;
};

struct CrossValidation {
  PressureEstimate bowen;
  PressureEstimate periodic;
  PressureEstimate grassmann;
  double spread = 0.0;
  bool ordering_violated = false;  // periodic > grassmann + tolerance
  bool disagreement = false;       // spread > tolerance
  std::vector<std::string> flags;
};

CrossValidation cross_validate(const SystemDef& sys, const Potential& phi,
                               const CrossValidationOptions& opt);

}  // namespace pressure_lab
