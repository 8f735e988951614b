#ifndef FRAGILE_CPR_CONFIG_H_
#define FRAGILE_CPR_CONFIG_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fragile_cpr/game.h"
#include "fragile_cpr/resource.h"

namespace fragile_cpr {

// Malformed configuration; the message starts with the offending field path.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ExperimentType {
  kSolve,
  kFucSweep,
  kBounds,
  kKSpread,
  kAlphaTable,
  kAlphaSweep,
  kPoaSweep,
};

const char* ExperimentName(ExperimentType type);

struct IntRange {
  int lo = 0;
  int hi = 0;
  int step = 1;
};

struct SolverSettings {
  double sweep_tol = 1e-10;
  int max_sweeps = 100000;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int grid_n = kDefaultValidationGrid;
};

// One experiment over one resource. Players are stored expanded; the
// homogeneous shorthand {alpha, k, n} sets `homogeneous_spec`.
struct ExperimentConfig {
  Resource resource{RateOfReturn::Constant(1.0), FailureProb::Power(1.0)};
  std::vector<RiskProfile> players;
  bool homogeneous_spec = false;

  ExperimentType type = ExperimentType::kSolve;
  std::optional<IntRange> n_range;      // fuc_sweep, poa_sweep
  std::optional<IntRange> gamma_range;  // fuc_sweep (power failure only)
  int samples = 500;                    // k_spread
  std::vector<std::vector<double>> alpha_rows;  // alpha_table
  std::vector<double> alpha_grid;               // alpha_sweep; empty = default

  SolverSettings solver;
  std::optional<std::string> output;
};

// Parses a JSON document. Throws ConfigError; does not validate the
// resource assumptions (see ValidateConfig).
ExperimentConfig ParseConfig(const std::string& text);
ExperimentConfig LoadConfig(const std::string& path);

// Resource assumption check plus consistency of players with the experiment.
ValidationReport ValidateConfig(const ExperimentConfig& config);

}  // namespace fragile_cpr

#endif  // FRAGILE_CPR_CONFIG_H_
