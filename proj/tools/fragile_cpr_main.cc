#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fragile_cpr/runner.h"

int main(int argc, char** argv) {
  CLI::App app{"Fragile CPR game solver and reproduction runner"};
  app.require_subcommand(1);

  fragile_cpr::RunOverrides overrides;
  auto add_solver_flags = [&](CLI::App* cmd) {
    cmd->add_option("--tol", overrides.sweep_tol, "Sweep tolerance")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-sweeps", overrides.max_sweeps, "Sweep budget")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", overrides.seed, "Seed for sampled experiments");
    cmd->add_option("--grid-n", overrides.grid_n, "Assumption-check grid size")
        ->check(CLI::Range(100, 100000000));
  };

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run the experiment in a config file");
  run->add_option("config", config_path, "Config path")->required();
  add_solver_flags(run);

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check a config without running it");
  validate->add_option("config", validate_path, "Config path")->required();
  add_solver_flags(validate);

  std::vector<std::string> targets;
  std::string out_dir = ".";
  auto* reproduce =
      app.add_subcommand("reproduce", "Regenerate figure and table datasets");
  reproduce->add_option("targets", targets, "fig1 fig2 fig3 fig4 table1 example2")
      ->required();
  reproduce->add_option("--out", out_dir, "Output directory");
  add_solver_flags(reproduce);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : fragile_cpr::kExitInvalid;
  }

  if (*run) return fragile_cpr::RunFile(config_path, overrides, std::cout, std::cerr);
  if (*validate) {
    return fragile_cpr::ValidateFile(validate_path, overrides, std::cout, std::cerr);
  }
  return fragile_cpr::Reproduce(targets, out_dir, overrides, std::cout, std::cerr);
}
