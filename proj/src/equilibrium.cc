#include "fragile_cpr/equilibrium.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "fragile_cpr/best_response.h"
#include "fragile_cpr/roots.h"

namespace fragile_cpr {
namespace {

void RequireHomogeneous(const FragileCprGame& game) {
  if (!game.homogeneous()) {
    throw std::invalid_argument("routine requires homogeneous players");
  }
}

}  // namespace

EquilibriumResult SolvePne(const FragileCprGame& game,
                           const SolverOptions& options) {
  const int n = game.n();
  std::vector<ResponseRegion> regions;
  regions.reserve(n);
  for (int i = 0; i < n; ++i) regions.push_back(ComputeRegion(game, i));

  EquilibriumResult result;
  result.investments.assign(n, 0.0);
  if (options.initial) {
    if (static_cast<int>(options.initial->size()) != n) {
      throw std::invalid_argument("initial profile length must equal n");
    }
    for (int i = 0; i < n; ++i) {
      const double v = (*options.initial)[i];
      if (!(v >= 0.0 && v < 1.0)) {
        throw std::invalid_argument("initial investments must lie in [0, 1)");
      }
      result.investments[i] = v;
    }
  }

  auto& x = result.investments;
  double total = std::accumulate(x.begin(), x.end(), 0.0);
  for (int sweep = 1; sweep <= options.max_sweeps; ++sweep) {
    double max_change = 0.0;
    for (int i = 0; i < n; ++i) {
      const double others = std::max(total - x[i], 0.0);
      const double next = BestResponse(game, i, regions[i], others);
      max_change = std::max(max_change, std::abs(next - x[i]));
      x[i] = next;
      total = others + next;
    }
    // Resummed once per sweep so the running total cannot drift.
    total = std::accumulate(x.begin(), x.end(), 0.0);
    result.sweeps = sweep;
    if (max_change < options.sweep_tol) {
      result.converged = true;
      break;
    }
  }

  result.total = total;
  result.fragility = game.failure().ValueClamped(total);
  for (int i = 0; i < n; ++i) {
    if (total < regions[i].ybar) result.support.push_back(i);
    const double others = std::max(total - x[i], 0.0);
    result.residual = std::max(
        result.residual, std::abs(x[i] - BestResponse(game, i, regions[i], others)));
  }
  return result;
}

HomogeneousSolution SolveHomogeneous(const FragileCprGame& game, int n) {
  RequireHomogeneous(game);
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  const ResponseRegion region = ComputeRegion(game, 0);
  if (region.trivial()) {
    throw TrivialGameError("game is trivial: ybar = 0, nobody invests");
  }
  const double alpha = game.player(0).alpha;
  const double inv_n = 1.0 / n;
  auto foc = [&](double x) {
    const Derivs f = game.EffectiveRate(0, x);
    return x * inv_n * f.first + alpha * f.value;
  };
  const double lo = region.interval->first;
  const double hi = std::min(region.ybar, 1.0 - 1e-9);
  HomogeneousSolution sol;
  sol.total = foc(hi) >= 0.0 ? hi : Bisect(foc, lo, hi);
  sol.per_player = sol.total / n;
  return sol;
}

double Welfare(const FragileCprGame& game, const std::vector<double>& investments) {
  if (static_cast<int>(investments.size()) != game.n()) {
    throw std::invalid_argument("investment profile length must equal n");
  }
  const double total = std::accumulate(investments.begin(), investments.end(), 0.0);
  double sum = 0.0;
  for (int i = 0; i < game.n(); ++i) {
    sum += game.ExpectedUtility(i, investments[i], total - investments[i]);
  }
  return sum;
}

double FirstOrderResidual(const FragileCprGame& game,
                          const EquilibriumResult& result) {
  double worst = 0.0;
  if (result.total >= 1.0) return std::numeric_limits<double>::infinity();
  for (int i : result.support) {
    const Derivs f = game.EffectiveRate(i, result.total);
    worst = std::max(worst, std::abs(result.investments[i] * f.first +
                                     game.player(i).alpha * f.value));
  }
  return worst;
}

}  // namespace fragile_cpr
