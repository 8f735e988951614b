#include "fragile_cpr/game.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fragile_cpr {

AssumptionViolation::AssumptionViolation(ValidationReport report)
    : std::invalid_argument("resource violates model assumptions:\n" +
                            report.FailureSummary()),
      report_(std::move(report)) {}

FragileCprGame::FragileCprGame(std::vector<RiskProfile> players,
                               Resource resource, int validation_grid)
    : players_(std::move(players)), resource_(std::move(resource)) {
  if (players_.empty()) {
    throw std::invalid_argument("game needs at least one player");
  }
  for (std::size_t i = 0; i < players_.size(); ++i) {
    const auto& p = players_[i];
    if (!(p.alpha > 0.0 && p.alpha <= 1.0)) {
      std::ostringstream msg;
      msg << "player " << i << ": alpha=" << p.alpha << " must be in (0, 1]";
      throw std::invalid_argument(msg.str());
    }
    if (!(p.k >= 0.0) || !std::isfinite(p.k)) {
      std::ostringstream msg;
      msg << "player " << i << ": k=" << p.k << " must be >= 0";
      throw std::invalid_argument(msg.str());
    }
  }
  if (resource_.rate.direct_mode() && !alpha_uniform()) {
    throw std::invalid_argument(
        "a directly specified rbar requires all players to share alpha");
  }
  ValidationReport report =
      ValidateAssumptions(resource_.rate, resource_.failure, validation_grid);
  if (!report.ok()) throw AssumptionViolation(std::move(report));
}

FragileCprGame FragileCprGame::Homogeneous(const Resource& resource,
                                           RiskProfile profile, int n) {
  if (n < 1) throw std::invalid_argument("game needs at least one player");
  return FragileCprGame(std::vector<RiskProfile>(n, profile), resource);
}

const RiskProfile& FragileCprGame::player(int i) const {
  CheckIndex(i);
  return players_[i];
}

bool FragileCprGame::homogeneous() const {
  return std::all_of(players_.begin(), players_.end(),
                     [&](const RiskProfile& p) { return p == players_[0]; });
}

bool FragileCprGame::alpha_uniform() const {
  return std::all_of(players_.begin(), players_.end(), [&](const RiskProfile& p) {
    return p.alpha == players_[0].alpha;
  });
}

Derivs FragileCprGame::Rbar(int i, double x_total) const {
  CheckIndex(i);
  return resource_.rate.EvalRbar(players_[i].alpha, x_total);
}

Derivs FragileCprGame::EffectiveRate(int i, double x_total) const {
  CheckIndex(i);
  const double k = players_[i].k;
  const Derivs rb = resource_.rate.EvalRbar(players_[i].alpha, x_total);
  const Derivs p = resource_.failure.Eval(x_total);
  Derivs f;
  f.value = rb.value * (1.0 - p.value) - k * p.value;
  f.first = rb.first * (1.0 - p.value) - (rb.value + k) * p.first;
  f.second = rb.second * (1.0 - p.value) - 2.0 * rb.first * p.first -
             (rb.value + k) * p.second;
  return f;
}

double FragileCprGame::ExpectedUtility(int i, double x_i, double y_i) const {
  CheckIndex(i);
  if (x_i <= 0.0) return 0.0;
  const RiskProfile& prof = players_[i];
  const double scale = std::pow(x_i, prof.alpha);
  const double x_total = std::clamp(x_i + y_i, 0.0, static_cast<double>(n()));
  if (x_total >= 1.0) return -prof.k * scale;
  return scale * EffectiveRate(i, x_total).value;
}

FragileCprGame FragileCprGame::WithRate(const RateOfReturn& rate) const {
  return FragileCprGame(players_, Resource{rate, resource_.failure});
}

void FragileCprGame::CheckIndex(int i) const {
  if (i < 0 || i >= n()) {
    std::ostringstream msg;
    msg << "player index " << i << " out of range [0, " << n() << ")";
    throw std::out_of_range(msg.str());
  }
}

}  // namespace fragile_cpr
