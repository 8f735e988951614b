#include "fragile_cpr/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fragile_cpr/best_response.h"
#include "fragile_cpr/equilibrium.h"
#include "fragile_cpr/roots.h"

namespace fragile_cpr {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Relative slack on upper-bound verdicts; several bounds are attained in
// the limit (constant rate of return), where the comparison is an equality
// up to rounding.
constexpr double kBoundSlack = 1e-9;

constexpr int kZetaGrid = 100000;
constexpr double kZetaTol = 1e-8;
constexpr double kXStarRFloor = 1e-9;
constexpr double kXStarRCeiling = 1e6;

void RequireHomogeneous(const FragileCprGame& game, const char* what) {
  if (!game.homogeneous()) {
    throw std::invalid_argument(std::string(what) +
                                " is defined only for homogeneous players");
  }
}

void RequireNontrivial(const FragileCprGame& game, int player) {
  if (ComputeRegion(game, player).trivial()) {
    throw TrivialGameError("game is trivial: ybar = 0, nobody invests");
  }
}

bool UpperHolds(double observed, double bound) {
  return observed <= bound * (1.0 + kBoundSlack);
}

// Symmetric-profile welfare n^(1-alpha) x^alpha f(x) at total x.
double SymmetricWelfare(const FragileCprGame& game, int n, double total) {
  const double alpha = game.player(0).alpha;
  if (total <= 0.0) return 0.0;
  return std::pow(static_cast<double>(n), 1.0 - alpha) *
         std::pow(total, alpha) * game.EffectiveRate(0, total).value;
}

}  // namespace

double PrivateInvestment(const FragileCprGame& game) {
  return BestResponse(game, 0, 0.0);
}

double ComputeFuc(const FragileCprGame& game, int n) {
  RequireHomogeneous(game, "fragility under competition");
  RequireNontrivial(game, 0);
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (n == 1) return 1.0;
  const double p_pvt = game.failure().ValueClamped(PrivateInvestment(game));
  const double p_eq = game.failure().ValueClamped(SolveHomogeneous(game, n).total);
  if (p_pvt <= 0.0) return p_eq > 0.0 ? kInf : 1.0;
  return p_eq / p_pvt;
}

double ComputeXStarR(const FragileCprGame& game) {
  if (!game.alpha_uniform()) {
    throw std::invalid_argument("x*_r requires a common alpha");
  }
  if (!game.rate().strictly_decreasing()) return kInf;
  const double alpha = game.player(0).alpha;
  // d/dx [x^alpha rbar(x)] = x^(alpha-1) [x rbar'(x) + alpha rbar(x)]; where
  // rbar is undefined the product has already turned down.
  auto foc = [&](double x) {
    const auto rb = game.rate().EvalRbarExtended(alpha, x);
    if (!rb) return -1.0;
    return x * rb->first + alpha * rb->value;
  };
  double hi = 2.0;
  while (foc(hi) > 0.0) {
    hi *= 2.0;
    if (hi > kXStarRCeiling) return kInf;
  }
  return Bisect(foc, kXStarRFloor, hi);
}

double ComputeZeta(const FailureProb& failure) {
  if (auto gamma = failure.PowerExponent()) return *gamma;
  const auto& c = std::get<PolynomialFailure>(failure.family()).coeffs;
  auto elasticity = [&](double x) {
    const Derivs d = failure.Eval(x);
    return d.value > 0.0 ? x * d.first / d.value : 0.0;
  };

  double best = -kInf;
  int best_i = 1;
  for (int i = 1; i < kZetaGrid; ++i) {
    const double e = elasticity(static_cast<double>(i) / kZetaGrid);
    if (e > best) {
      best = e;
      best_i = i;
    }
  }
  const double lo = static_cast<double>(best_i - 1) / kZetaGrid;
  const double hi = static_cast<double>(std::min(best_i + 1, kZetaGrid)) / kZetaGrid;
  best = std::max(best, elasticity(GoldenSectionMax(elasticity, lo, hi, kZetaTol)));

  // The supremum over the open interval may sit at either end.
  best = std::max(best, elasticity(1.0));
  if (c[0] == 0.0) {
    for (std::size_t j = 1; j < c.size(); ++j) {
      if (c[j] > 0.0) {
        best = std::max(best, static_cast<double>(j));
        break;
      }
    }
  }
  return best;
}

bool BoundsReport::all_hold() const {
  for (const auto& [name, entry] : bounds) {
    if (entry.applicable && !entry.holds) return false;
  }
  return true;
}

BoundsReport EvaluateBounds(const FragileCprGame& game, int n) {
  RequireHomogeneous(game, "bounds report");
  const ResponseRegion region = ComputeRegion(game, 0);
  if (region.trivial()) {
    throw TrivialGameError("game is trivial: ybar = 0, nobody invests");
  }
  const RiskProfile prof = game.player(0);
  const double alpha = prof.alpha;
  const double k = prof.k;
  const FailureProb& p = game.failure();

  BoundsReport rep;
  rep.n = n;
  rep.x_pvt = BestResponse(game, 0, region, 0.0);
  rep.ybar = region.ybar;
  rep.fuc = ComputeFuc(game, n);
  const double p_pvt = p.ValueClamped(rep.x_pvt);
  const double p_ybar = p.ValueClamped(rep.ybar);
  rep.fuc_limit = p_pvt > 0.0 ? p_ybar / p_pvt : kInf;
  rep.investment_ratio = rep.ybar / rep.x_pvt;
  rep.x_star_r = ComputeXStarR(game);
  rep.zeta = ComputeZeta(p);

  using namespace bound_names;
  const bool decreasing = game.rate().strictly_decreasing();
  auto& b = rep.bounds;
  for (const char* name : {kRatioDecreasing, kFucDegree, kFucLowerExponential, kFucUpperLinear,
                           kRatioIncreasing, kFucIncreasing, kTrivial, kDegreeTighter,
                           kIncreasingTighter}) {
    b[name] = BoundEntry{std::numeric_limits<double>::quiet_NaN(), false, false};
  }

  const double trivial = 1.0 / p_pvt;
  b[kTrivial] = {trivial, true, UpperHolds(rep.fuc_limit, trivial)};

  if (decreasing) {
    const double ratio_bound = 1.0 + 2.0 / alpha;
    b[kRatioDecreasing] = {ratio_bound, true, rep.investment_ratio < ratio_bound};

    if (auto degree = p.PolynomialDegree()) {
      const double v = std::pow(ratio_bound, *degree);
      b[kFucDegree] = {v, true, UpperHolds(rep.fuc_limit, v)};
    }

    const Derivs rb0 = game.Rbar(0, 0.0);
    const Derivs rb1 = game.Rbar(0, 1.0);
    const auto gamma = p.PowerExponent();
    if (gamma && k > 0.0 && rep.x_star_r < 1.0) {
      const double v =
          rb1.value / (rb1.value + k) * std::pow(1.0 / rep.x_star_r, *gamma);
      b[kFucLowerExponential] = {v, true, v <= rep.fuc_limit};
    }
    if (k > 0.0 && rep.x_star_r > 1.0 && std::abs(rep.x_star_r - 1.0) > 1e-9) {
      const double v =
          rb0.value / (rb0.value + k) *
          (1.0 + (rep.zeta * (rb0.value + k) + k * alpha) /
                     (rb1.first + alpha * rb1.value));
      b[kFucUpperLinear] = {v, true, UpperHolds(rep.fuc_limit, v)};
    }

    if (p.IsIdentity()) {
      const double x = alpha / (alpha + 2.0);
      const Derivs rb = game.Rbar(0, x);
      const bool predicted =
          2.0 * x * rb.first + alpha * rb.value <= k * alpha * (1.0 + alpha);
      const bool actual = ratio_bound <= trivial;
      b[kDegreeTighter] = {predicted ? 1.0 : 0.0, true, predicted == actual};
    }
  } else {
    const double ratio_bound = 1.0 + 1.0 / alpha;
    b[kRatioIncreasing] = {ratio_bound, true,
                      UpperHolds(rep.investment_ratio, ratio_bound)};
    const double fuc_bound = 1.0 + rep.zeta / alpha;
    b[kFucIncreasing] = {fuc_bound, true, UpperHolds(rep.fuc_limit, fuc_bound)};

    if (auto gamma = p.PowerExponent()) {
      const double x = std::pow(alpha / (alpha + *gamma), 1.0 / *gamma);
      const Derivs rb = game.Rbar(0, x);
      const bool predicted = x * rb.first <= k * alpha * (1.0 + alpha / *gamma);
      const bool actual = 1.0 + *gamma / alpha <= trivial;
      b[kIncreasingTighter] = {predicted ? 1.0 : 0.0, true, predicted == actual};
    }
  }
  return rep;
}

SocialOptimum ComputeSocialOptimum(const FragileCprGame& game, int n) {
  RequireHomogeneous(game, "social optimum");
  RequireNontrivial(game, 0);
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  // Symmetric welfare is n^(1-alpha) X^alpha f(X); its stationary point on
  // the region where f > 0 solves X f'(X) + alpha f(X) = 0.
  const ResponseRegion region = ComputeRegion(game, 0);
  const double alpha = game.player(0).alpha;
  auto foc = [&](double x) {
    const Derivs f = game.EffectiveRate(0, x);
    return x * f.first + alpha * f.value;
  };
  const double lo = std::max(region.positive_from, 1e-15);
  const double hi = std::min(region.ybar, 1.0);
  SocialOptimum opt;
  opt.total = foc(hi) >= 0.0 ? hi : Bisect(foc, lo, hi);
  opt.per_player = opt.total / n;
  opt.welfare = SymmetricWelfare(game, n, opt.total);
  return opt;
}

double PriceOfAnarchy(const FragileCprGame& game, int n) {
  const SocialOptimum opt = ComputeSocialOptimum(game, n);
  const double eq = SymmetricWelfare(game, n, SolveHomogeneous(game, n).total);
  if (eq <= kPoaWelfareFloor) return kInf;
  return opt.welfare / eq;
}

FragileCprGame TangentPerturbation(const FragileCprGame& game, int player) {
  if (!game.alpha_uniform()) {
    throw std::invalid_argument("tangent perturbation requires a common alpha");
  }
  RequireNontrivial(game, player);
  const double x_pvt = BestResponse(game, player, 0.0);
  const Derivs rb = game.Rbar(player, x_pvt);
  return game.WithRate(
      RateOfReturn::DirectAffine(rb.value - x_pvt * rb.first, rb.first));
}

}  // namespace fragile_cpr
