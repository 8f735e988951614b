#include "fragile_cpr/heterogeneity.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "fragile_cpr/best_response.h"
#include "fragile_cpr/parallel.h"

namespace fragile_cpr {
namespace {

// Uniform double in [0, 1) from the top 53 bits; portable across standard
// libraries, unlike std::uniform_real_distribution.
double Uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

void RequireNontrivial(const FragileCprGame& game) {
  for (int i = 0; i < game.n(); ++i) {
    if (!ComputeRegion(game, i).trivial()) return;
  }
  throw TrivialGameError("game is trivial: ybar = 0 for every player");
}

}  // namespace

MeanPreservingFamily SampleMeanPreserving(int n, double k_mean, int count,
                                          std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (!(k_mean > 0.0)) throw std::invalid_argument("k_mean must be > 0");
  MeanPreservingFamily family{n, k_mean, {}};
  family.samples.reserve(count);
  std::mt19937_64 gen(seed);
  std::vector<double> k(n);
  while (static_cast<int>(family.samples.size()) < count) {
    double offset_sum = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
      const double d = k_mean * (2.0 * Uniform01(gen) - 1.0);
      k[i] = k_mean + d;
      offset_sum += d;
    }
    k[n - 1] = k_mean - offset_sum;
    if (std::any_of(k.begin(), k.end(), [](double v) { return v < 0.0; })) {
      continue;
    }
    std::sort(k.begin(), k.end());
    family.samples.push_back(k);
  }
  return family;
}

KSpreadReport FragilityUnderKSpread(const Resource& resource, double alpha,
                                    const MeanPreservingFamily& family,
                                    const SolverOptions& options) {
  const FragileCprGame homogeneous =
      FragileCprGame::Homogeneous(resource, {alpha, family.k_mean}, family.n);
  RequireNontrivial(homogeneous);

  KSpreadReport report;
  report.homogeneous_fragility = SolvePne(homogeneous, options).fragility;
  const int count = static_cast<int>(family.samples.size());
  report.sample_fragilities.assign(count, 0.0);
  ParallelFor(count, [&](int s) {
    std::vector<RiskProfile> players;
    players.reserve(family.samples[s].size());
    for (double k : family.samples[s]) players.push_back({alpha, k});
    const FragileCprGame game(std::move(players), resource);
    report.sample_fragilities[s] = SolvePne(game, options).fragility;
  });
  for (double frag : report.sample_fragilities) {
    if (frag < report.homogeneous_fragility - kFragilityNoise) {
      ++report.violations;
    }
  }
  report.min_at_homogeneous = report.violations == 0;
  return report;
}

std::pair<double, double> KMonotoneFragility(const Resource& resource,
                                             double alpha, double k1, double k2,
                                             int n,
                                             const SolverOptions& options) {
  if (k2 < k1) throw std::invalid_argument("k2 must be >= k1");
  const auto g1 = FragileCprGame::Homogeneous(resource, {alpha, k1}, n);
  const auto g2 = FragileCprGame::Homogeneous(resource, {alpha, k2}, n);
  RequireNontrivial(g1);
  RequireNontrivial(g2);
  return {SolvePne(g1, options).fragility, SolvePne(g2, options).fragility};
}

std::vector<AlphaRow> AlphaTable(const Resource& resource, double k,
                                 const std::vector<std::vector<double>>& rows,
                                 int n, const SolverOptions& options) {
  std::vector<AlphaRow> out;
  out.reserve(rows.size());
  for (const auto& alphas : rows) {
    if (static_cast<int>(alphas.size()) != n) {
      throw std::invalid_argument("alpha row length must equal n");
    }
    std::vector<RiskProfile> players;
    players.reserve(n);
    for (double a : alphas) players.push_back({a, k});
    const FragileCprGame game(std::move(players), resource);
    out.push_back({alphas, SolvePne(game, options)});
  }
  return out;
}

std::vector<double> DefaultAlphaGrid() {
  std::vector<double> grid;
  grid.reserve(100);
  for (int i = 1; i <= 99; ++i) grid.push_back(i / 100.0);
  grid.push_back(1.0);
  return grid;
}

AlphaCurve FragilityVsAlpha(const Resource& resource, double k, int n,
                            const std::vector<double>& alpha_grid,
                            const SolverOptions& options) {
  AlphaCurve curve;
  curve.alphas = alpha_grid;
  curve.fragilities.assign(alpha_grid.size(), 0.0);
  ParallelFor(static_cast<int>(alpha_grid.size()), [&](int i) {
    const auto game =
        FragileCprGame::Homogeneous(resource, {alpha_grid[i], k}, n);
    curve.fragilities[i] = SolvePne(game, options).fragility;
  });
  curve.rise_then_fall = IsRiseThenFall(curve.fragilities);
  curve.monotone = IsMonotone(curve.fragilities);
  return curve;
}

bool IsRiseThenFall(const std::vector<double>& values, double noise_tol) {
  if (values.size() < 3) return false;
  const auto argmax = static_cast<std::size_t>(
      std::max_element(values.begin(), values.end()) - values.begin());
  if (argmax == 0 || argmax + 1 == values.size()) return false;
  int last_sign = 0;
  int flips = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double d = values[i] - values[i - 1];
    if (std::abs(d) <= noise_tol) continue;
    const int sign = d > 0.0 ? 1 : -1;
    if (last_sign == 0 && sign < 0) return false;  // must rise first
    if (last_sign != 0 && sign != last_sign) ++flips;
    last_sign = sign;
  }
  return flips == 1 && last_sign < 0;
}

bool IsMonotone(const std::vector<double>& values, double noise_tol) {
  bool up = false;
  bool down = false;
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double d = values[i] - values[i - 1];
    if (d > noise_tol) up = true;
    if (d < -noise_tol) down = true;
  }
  return !(up && down);
}

}  // namespace fragile_cpr
