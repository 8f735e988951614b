#ifndef FRAGILE_CPR_METRICS_H_
#define FRAGILE_CPR_METRICS_H_

#include <map>
#include <string>

#include "fragile_cpr/game.h"
#include "fragile_cpr/resource.h"

namespace fragile_cpr {

// Optimal investment of a lone user (best response of player 0 to y = 0).
double PrivateInvestment(const FragileCprGame& game);

// Fragility under competition p(x*_T) / p(x_pvt) for n homogeneous players.
// Throws std::invalid_argument for heterogeneous players and
// TrivialGameError when nobody would invest.
double ComputeFuc(const FragileCprGame& game, int n);

// Maximizer of x^alpha rbar(x) on [0, inf): finite only for strictly
// decreasing rbar, +inf otherwise.
double ComputeXStarR(const FragileCprGame& game);

// sup of x p'(x) / p(x) over (0, 1).
double ComputeZeta(const FailureProb& failure);

struct BoundEntry {
  double value = 0.0;
  bool applicable = false;
  bool holds = false;
};

// Names used in BoundsReport::bounds.
namespace bound_names {
inline constexpr const char* kRatioDecreasing = "ratio_decreasing";
inline constexpr const char* kFucDegree = "fuc_degree";
inline constexpr const char* kFucLowerExponential = "fuc_lower_exponential";
inline constexpr const char* kFucUpperLinear = "fuc_upper_linear";
inline constexpr const char* kRatioIncreasing = "ratio_increasing";
inline constexpr const char* kFucIncreasing = "fuc_increasing";
inline constexpr const char* kTrivial = "trivial";
inline constexpr const char* kDegreeTighter = "degree_tighter";
inline constexpr const char* kIncreasingTighter = "increasing_tighter";
}  // namespace bound_names

// Every bound on investment ratios and fragility for a homogeneous game,
// with applicability and a holds/violated verdict.
//
// Ratio bounds are checked against ybar / x_pvt. Upper bounds on fragility
// are checked against fuc_limit = p(ybar) / p(x_pvt), the supremum of the FuC
// over all n, so a verdict covers every number of players. The two tightness
// flags carry value 1 when the closed-form condition predicts the analytic
// bound to be at least as tight as the trivial one; `holds` then records
// whether the prediction matches the computed comparison.
struct BoundsReport {
  int n = 0;
  double x_pvt = 0.0;
  double ybar = 0.0;
  double fuc = 0.0;        // at n players
  double fuc_limit = 0.0;  // n -> infinity
  double investment_ratio = 0.0;
  double x_star_r = 0.0;
  double zeta = 0.0;
  std::map<std::string, BoundEntry> bounds;

  const BoundEntry& at(const std::string& name) const { return bounds.at(name); }
  // True when every applicable entry holds.
  bool all_hold() const;
};

BoundsReport EvaluateBounds(const FragileCprGame& game, int n);

struct SocialOptimum {
  double total = 0.0;
  double per_player = 0.0;
  double welfare = 0.0;
};

// Welfare-maximizing symmetric profile for n homogeneous players.
SocialOptimum ComputeSocialOptimum(const FragileCprGame& game, int n);

// Equilibrium welfare at or below this counts as vanished.
inline constexpr double kPoaWelfareFloor = 1e-15;

// Optimal welfare over equilibrium welfare; +inf when the latter vanishes.
double PriceOfAnarchy(const FragileCprGame& game, int n);

// Game whose rbar is replaced by its tangent line at the player's x_pvt.
// Requires a common alpha and a nontrivial game.
FragileCprGame TangentPerturbation(const FragileCprGame& game, int player);

}  // namespace fragile_cpr

#endif  // FRAGILE_CPR_METRICS_H_
