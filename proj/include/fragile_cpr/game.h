#ifndef FRAGILE_CPR_GAME_H_
#define FRAGILE_CPR_GAME_H_

#include <stdexcept>
#include <string>
#include <vector>

#include "fragile_cpr/resource.h"

namespace fragile_cpr {

// Prospect-theory risk attitude of one player: sensitivity alpha in (0, 1]
// and loss-aversion index k >= 0.
struct RiskProfile {
  double alpha = 1.0;
  double k = 1.0;

  bool operator==(const RiskProfile&) const = default;
};

// Thrown when the resource violates the structural assumptions of the model.
class AssumptionViolation : public std::invalid_argument {
 public:
  explicit AssumptionViolation(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

// Thrown by routines that need some player to invest (ybar > 0).
class TrivialGameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A Fragile CPR game: n players, each splitting a unit endowment between a
// safe resource with return 1 and a CPR that fails with probability
// p(x_T). Immutable after construction.
class FragileCprGame {
 public:
  // Validates profiles and the resource; throws std::invalid_argument or
  // AssumptionViolation.
  FragileCprGame(std::vector<RiskProfile> players, Resource resource,
                 int validation_grid = kDefaultValidationGrid);

  static FragileCprGame Homogeneous(const Resource& resource,
                                    RiskProfile profile, int n);

  int n() const { return static_cast<int>(players_.size()); }
  const std::vector<RiskProfile>& players() const { return players_; }
  const RiskProfile& player(int i) const;
  const Resource& resource() const { return resource_; }
  const RateOfReturn& rate() const { return resource_.rate; }
  const FailureProb& failure() const { return resource_.failure; }

  bool homogeneous() const;
  bool alpha_uniform() const;

  // Player-specific rbar_i(x) = (r(x) - 1)^alpha_i on [0, 1].
  Derivs Rbar(int i, double x_total) const;

  // Effective rate of return f_i(x) = rbar_i(x)(1 - p(x)) - k_i p(x) with
  // analytic first and second derivatives. Domain [0, 1].
  Derivs EffectiveRate(int i, double x_total) const;

  // x_i^alpha_i * f_i(x_i + y_i), with failure certain once x_T >= 1.
  double ExpectedUtility(int i, double x_i, double y_i) const;

  // Copy of the game with a different resource (same players).
  FragileCprGame WithRate(const RateOfReturn& rate) const;

 private:
  void CheckIndex(int i) const;

  std::vector<RiskProfile> players_;
  Resource resource_;
};

}  // namespace fragile_cpr

#endif  // FRAGILE_CPR_GAME_H_
