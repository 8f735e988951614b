#include "fragile_cpr/best_response.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fragile_cpr/roots.h"

namespace fragile_cpr {
namespace {

// Lower end of the search bracket for the first-order condition; keeps the
// x^(alpha-1) factor finite.
constexpr double kBracketFloor = 1e-15;
// Cap on totals when k = 0 and f(1) = 0.
constexpr double kUpperCap = 1.0 - 1e-9;

}  // namespace

ResponseRegion ComputeRegion(const FragileCprGame& game, int player) {
  auto f = [&](double x) { return game.EffectiveRate(player, x).value; };
  auto df = [&](double x) { return game.EffectiveRate(player, x).first; };

  ResponseRegion region;
  if (game.rate().monotonicity() == Monotonicity::kDecreasing) {
    if (f(0.0) <= 0.0) return region;
    region.ybar = Bisect(f, 0.0, 1.0);
    region.interval = std::make_pair(0.0, region.ybar);
    return region;
  }

  // Increasing rbar: f is concave, so its maximizer zhat is where f' = 0.
  double zhat = 0.0;
  if (df(0.0) > 0.0) zhat = Bisect(df, 0.0, 1.0);
  if (f(zhat) <= 0.0) return region;
  region.zhat = zhat;
  region.ybar = Bisect(f, zhat, 1.0);
  region.interval = std::make_pair(zhat, region.ybar);
  region.positive_from = f(0.0) > 0.0 ? 0.0 : Bisect(f, 0.0, zhat);
  return region;
}

double BestResponse(const FragileCprGame& game, int player, double y) {
  return BestResponse(game, player, ComputeRegion(game, player), y);
}

double BestResponse(const FragileCprGame& game, int player,
                    const ResponseRegion& region, double y) {
  if (region.trivial() || y >= region.ybar) return 0.0;
  y = std::max(y, 0.0);
  const double alpha = game.player(player).alpha;
  // Factored first-order condition: x f'(x + y) + alpha f(x + y).
  auto foc = [&](double x) {
    const Derivs f = game.EffectiveRate(player, x + y);
    return x * f.first + alpha * f.value;
  };

  const double lo = y < region.positive_from
                        ? region.positive_from - y
                        : kBracketFloor;
  const double hi = std::min({region.ybar - y, 1.0 - y, kUpperCap - y});
  if (!(hi > lo)) return 0.0;
  if (foc(lo) <= 0.0) return 0.0;
  const double x = foc(hi) >= 0.0 ? hi : Bisect(foc, lo, hi);
  // Zero utility ties resolve to the safe resource.
  if (game.ExpectedUtility(player, x, y) <= 0.0) return 0.0;
  return x;
}

double OptimalShare(const FragileCprGame& game, int player, double x_total) {
  const Derivs f = game.EffectiveRate(player, x_total);
  if (!(f.value > 0.0 && f.first < 0.0)) {
    std::ostringstream msg;
    msg << "optimal share undefined at x_T=" << x_total << " (f=" << f.value
        << ", f'=" << f.first << "); requires f > 0 and f' < 0";
    throw std::domain_error(msg.str());
  }
  return -game.player(player).alpha * f.value / f.first;
}

double BruteForceBestResponse(const FragileCprGame& game, int player, double y,
                              int grid_n) {
  double best_x = 0.0;
  double best_u = 0.0;  // utility of x = 0
  for (int j = 1; j <= grid_n; ++j) {
    const double x = static_cast<double>(j) / grid_n;
    const double u = game.ExpectedUtility(player, x, y);
    if (u > best_u) {
      best_u = u;
      best_x = x;
    }
  }
  return best_x;
}

}  // namespace fragile_cpr
