#ifndef FRAGILE_CPR_HETEROGENEITY_H_
#define FRAGILE_CPR_HETEROGENEITY_H_

#include <cstdint>
#include <utility>
#include <vector>

#include "fragile_cpr/equilibrium.h"
#include "fragile_cpr/game.h"

namespace fragile_cpr {

// Loss-aversion vectors with a common mean: each sample is sorted ascending,
// non-negative, and averages to k_mean.
struct MeanPreservingFamily {
  int n = 0;
  double k_mean = 0.0;
  std::vector<std::vector<double>> samples;
};

inline constexpr int kDefaultSpreadSamples = 500;
// Fragility differences below this are solver noise, not ordering.
inline constexpr double kFragilityNoise = 1e-10;

// Draws `count` vectors: n - 1 offsets uniform in [-k_mean, k_mean], the
// last offset balancing their sum; vectors with a negative entry are
// rejected and redrawn. Deterministic for a given seed.
MeanPreservingFamily SampleMeanPreserving(int n, double k_mean, int count,
                                          std::uint64_t seed);

struct KSpreadReport {
  double homogeneous_fragility = 0.0;
  std::vector<double> sample_fragilities;
  // Number of samples strictly less fragile than the homogeneous game.
  int violations = 0;
  bool min_at_homogeneous = true;
};

KSpreadReport FragilityUnderKSpread(const Resource& resource, double alpha,
                                    const MeanPreservingFamily& family,
                                    const SolverOptions& options = {});

// Equilibrium fragilities of two homogeneous games differing only in k.
// Requires k2 >= k1; throws TrivialGameError if either game is trivial.
std::pair<double, double> KMonotoneFragility(const Resource& resource,
                                             double alpha, double k1, double k2,
                                             int n,
                                             const SolverOptions& options = {});

struct AlphaRow {
  std::vector<double> alphas;
  EquilibriumResult equilibrium;
};

std::vector<AlphaRow> AlphaTable(const Resource& resource, double k,
                                 const std::vector<std::vector<double>>& rows,
                                 int n, const SolverOptions& options = {});

struct AlphaCurve {
  std::vector<double> alphas;
  std::vector<double> fragilities;
  bool rise_then_fall = false;
  bool monotone = true;
};

// {0.01, 0.02, ..., 0.99, 1.0}.
std::vector<double> DefaultAlphaGrid();

AlphaCurve FragilityVsAlpha(const Resource& resource, double k, int n,
                            const std::vector<double>& alpha_grid,
                            const SolverOptions& options = {});

// Discrete argmax interior and the sign of successive differences (ignoring
// steps below noise_tol) flips exactly once, from up to down.
bool IsRiseThenFall(const std::vector<double>& values, double noise_tol = 1e-6);
// Non-decreasing or non-increasing up to noise_tol.
bool IsMonotone(const std::vector<double>& values, double noise_tol = 1e-6);

}  // namespace fragile_cpr

#endif  // FRAGILE_CPR_HETEROGENEITY_H_
