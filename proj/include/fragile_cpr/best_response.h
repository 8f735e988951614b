#ifndef FRAGILE_CPR_BEST_RESPONSE_H_
#define FRAGILE_CPR_BEST_RESPONSE_H_

#include <optional>
#include <utility>

#include "fragile_cpr/game.h"

namespace fragile_cpr {

// Where a player's effective rate of return supports positive investment.
//
// ybar is the total investment of the others at and above which zero is the
// unique best response. When ybar > 0, every positive best response puts
// the total inside `interval` = (lo, ybar), on which f > 0 and f' < 0.
// For increasing rbar, lo = zhat is the maximizer of the concave f.
struct ResponseRegion {
  double ybar = 0.0;
  std::optional<std::pair<double, double>> interval;
  std::optional<double> zhat;
  // Smallest total at which f turns positive (0 unless f(0) <= 0 with an
  // increasing rbar).
  double positive_from = 0.0;

  bool trivial() const { return ybar <= 0.0; }
};

ResponseRegion ComputeRegion(const FragileCprGame& game, int player);

// Unique best response to the others' total y. Zero iff y >= ybar.
double BestResponse(const FragileCprGame& game, int player, double y);
// Same, with the region precomputed.
double BestResponse(const FragileCprGame& game, int player,
                    const ResponseRegion& region, double y);

// g(x_T) = -alpha f(x_T) / f'(x_T), the positive-response share implied by
// the first-order condition. Throws std::domain_error unless f > 0 > f'.
double OptimalShare(const FragileCprGame& game, int player, double x_total);

// Grid argmax of the expected utility over {0, 1/grid_n, ..., 1}; ties go to
// the smaller investment. Test oracle only.
double BruteForceBestResponse(const FragileCprGame& game, int player, double y,
                              int grid_n);

}  // namespace fragile_cpr

#endif  // FRAGILE_CPR_BEST_RESPONSE_H_
