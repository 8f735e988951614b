#ifndef FRAGILE_CPR_EQUILIBRIUM_H_
#define FRAGILE_CPR_EQUILIBRIUM_H_

#include <optional>
#include <vector>

#include "fragile_cpr/game.h"

namespace fragile_cpr {

inline constexpr double kDefaultSweepTol = 1e-10;
inline constexpr int kDefaultMaxSweeps = 100000;

struct SolverOptions {
  std::optional<std::vector<double>> initial;  // all zeros when absent
  double sweep_tol = kDefaultSweepTol;
  int max_sweeps = kDefaultMaxSweeps;
};

struct EquilibriumResult {
  std::vector<double> investments;
  double total = 0.0;
  double fragility = 0.0;  // p(total)
  std::vector<int> support;  // players with total < ybar_i, ascending
  int sweeps = 0;
  bool converged = false;
  // max_i |x_i - B_i(y_i)| from one verification pass over the result.
  double residual = 0.0;
};

// Sequential (Gauss-Seidel) best-response dynamics in player order until the
// largest per-player change in a sweep drops below sweep_tol.
EquilibriumResult SolvePne(const FragileCprGame& game,
                           const SolverOptions& options = {});

struct HomogeneousSolution {
  double total = 0.0;
  double per_player = 0.0;
};

// Symmetric equilibrium of n copies of the game's (single) risk profile, from
// the first-order condition (x/n) f'(x) + alpha f(x) = 0 on the response
// interval. Throws TrivialGameError when ybar = 0.
HomogeneousSolution SolveHomogeneous(const FragileCprGame& game, int n);

// Utilitarian welfare sum_i x_i^alpha_i f_i(x_T).
double Welfare(const FragileCprGame& game, const std::vector<double>& investments);

// Largest |x_i f_i'(x_T) + alpha_i f_i(x_T)| over the support.
double FirstOrderResidual(const FragileCprGame& game,
                          const EquilibriumResult& result);

}  // namespace fragile_cpr

#endif  // FRAGILE_CPR_EQUILIBRIUM_H_
