#ifndef FRAGILE_CPR_RUNNER_H_
#define FRAGILE_CPR_RUNNER_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fragile_cpr/config.h"
#include "fragile_cpr/equilibrium.h"
#include "fragile_cpr/game.h"

namespace fragile_cpr {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitNotConverged = 2;

// An equilibrium failed its fixed-point re-check before being written.
class NonConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Command-line overrides of the config's solver block.
struct RunOverrides {
  std::optional<double> sweep_tol;
  std::optional<int> max_sweeps;
  std::optional<std::uint64_t> seed;
  std::optional<int> grid_n;
};

void ApplyOverrides(const RunOverrides& overrides, SolverSettings& settings);
SolverOptions ToSolverOptions(const SolverSettings& settings);

// Players and resource of the config as a game.
FragileCprGame BuildGame(const ExperimentConfig& config);

// Runs the experiment and writes its CSV. Does not catch: ConfigError,
// AssumptionViolation, TrivialGameError, NonConvergenceError.
void WriteExperiment(const ExperimentConfig& config, std::ostream& csv);

// Validates, runs and writes to config.output (or `out` when unset).
// Diagnostics go to `err`; returns one of the kExit codes.
int Run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int RunFile(const std::string& path, const RunOverrides& overrides,
            std::ostream& out, std::ostream& err);
// Prints each check; 0 when the config parses and passes every check.
int ValidateFile(const std::string& path, const RunOverrides& overrides,
                 std::ostream& out, std::ostream& err);

// fig1 fig2 fig3 fig4 table1 example2.
const std::vector<std::string>& ReproduceTargets();

// Writes repro_<target>_<panel>.csv files into out_dir, listing each path
// on `out`. Fails before writing anything if a target is unknown.
int Reproduce(const std::vector<std::string>& targets, const std::string& out_dir,
              const RunOverrides& overrides, std::ostream& out, std::ostream& err);

}  // namespace fragile_cpr

#endif  // FRAGILE_CPR_RUNNER_H_
