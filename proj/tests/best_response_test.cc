#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "fragile_cpr/best_response.h"
#include "test_support.h"

namespace fc = fragile_cpr;
using fc::testing::AffineSpec;
using fc::testing::Rng;

TEST_CASE("decreasing rbar: ybar is the root of f") {
  const fc::Resource res{fc::RateOfReturn::DirectAffine(2.0, -1.0), fc::FailureProb::Power(1.0)};
  const fc::FragileCprGame game({{1.0, 2.0}}, res);
  const fc::ResponseRegion region = fc::ComputeRegion(game, 0);
  // (2 - x)(1 - x) - 2x = 0
  CHECK(region.ybar == doctest::Approx((5.0 - std::sqrt(17.0)) / 2.0).epsilon(1e-12));
  REQUIRE(region.interval.has_value());
  CHECK(region.interval->first == 0.0);
  CHECK(region.interval->second == region.ybar);
  CHECK_FALSE(region.zhat.has_value());
}

TEST_CASE("increasing rbar: interval starts at the peak of f") {
  const fc::Resource res{fc::RateOfReturn::DirectPowerShift(0.1, 0.5), fc::FailureProb::Power(2.0)};
  const fc::FragileCprGame game({{1.0, 1.0}}, res);
  const fc::ResponseRegion region = fc::ComputeRegion(game, 0);
  auto f = [](double x) { return std::sqrt(x + 0.1) * (1 - x * x) - x * x; };
  auto fp = [](double x) {
    return 0.5 / std::sqrt(x + 0.1) * (1 - x * x) - 2 * x * std::sqrt(x + 0.1) - 2 * x;
  };
  CHECK(region.ybar == doctest::Approx(fc::testing::RefBisect(f, 0.3, 1.0)).epsilon(1e-12));
  REQUIRE(region.zhat.has_value());
  CHECK(*region.zhat == doctest::Approx(fc::testing::RefBisect(fp, 0.0, 1.0)).epsilon(1e-10));
  CHECK(region.ybar == doctest::Approx(0.6855).epsilon(2e-4));
  CHECK(*region.zhat == doctest::Approx(0.2493).epsilon(4e-4));
}

TEST_CASE("f(0) <= 0 with decreasing rbar makes the game trivial") {
  const fc::Resource res{fc::RateOfReturn::Affine(3.0, -1.0),
                         fc::FailureProb::Polynomial({0.5, 0.5})};
  const fc::FragileCprGame game({{1.0, 3.0}}, res);
  const auto region = fc::ComputeRegion(game, 0);
  CHECK(region.trivial());
  CHECK_FALSE(region.interval.has_value());
  CHECK(fc::BestResponse(game, 0, 0.0) == 0.0);
}

TEST_CASE("increasing rbar with f(0) <= 0 still invests past the zero of f") {
  const fc::Resource res{fc::RateOfReturn::DirectAffine(0.5, 4.0),
                         fc::FailureProb::Polynomial({0.2, 0.8})};
  const fc::FragileCprGame game({{0.8, 2.0}}, res);
  const auto region = fc::ComputeRegion(game, 0);
  CHECK(game.EffectiveRate(0, 0.0).value <= 0.0);
  CHECK_FALSE(region.trivial());
  CHECK(region.positive_from > 0.0);
  CHECK(game.EffectiveRate(0, region.positive_from).value ==
        doctest::Approx(0.0).epsilon(1e-12));
  const double br = fc::BestResponse(game, 0, 0.0);
  CHECK(br > region.positive_from);
  CHECK(br < region.ybar);
}

TEST_CASE("best response is zero from ybar on and positive below it") {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const AffineSpec spec = fc::testing::RandomAffine(rng);
    const auto game = spec.Game(2);
    const auto region = fc::ComputeRegion(game, 0);
    if (region.trivial()) continue;
    CHECK(fc::BestResponse(game, 0, region.ybar) == 0.0);
    CHECK(fc::BestResponse(game, 0, std::min(1.0, region.ybar + 0.01)) == 0.0);
    const double y = rng.Uniform(0.0, 0.999) * region.ybar;
    const double br = fc::BestResponse(game, 0, y);
    CHECK(br > 0.0);
    CHECK(br + y < region.ybar);
  }
}

TEST_CASE("best response satisfies the first-order condition") {
  Rng rng(32);
  for (int trial = 0; trial < 200; ++trial) {
    const AffineSpec spec = fc::testing::RandomAffine(rng);
    const auto game = spec.Game(2);
    const auto region = fc::ComputeRegion(game, 0);
    if (region.trivial()) continue;
    const double y = rng.Uniform(0.0, 0.95) * region.ybar;
    const double x = fc::BestResponse(game, 0, y);
    const fc::Derivs f = game.EffectiveRate(0, x + y);
    CHECK(std::abs(x * f.first + spec.alpha * f.value) < 1e-9);
  }
}

TEST_CASE("best response matches a grid search over expected utility") {
  Rng rng(33);
  for (int trial = 0; trial < 60; ++trial) {
    const AffineSpec spec = fc::testing::RandomAffine(rng);
    const auto game = spec.Game(2);
    const double y = rng.Uniform(0.0, 0.8);
    const double ref = fc::testing::RefBestResponse(spec, y, 20001);
    CHECK(std::abs(fc::BestResponse(game, 0, y) - ref) < 1e-4);
    // The library grid spans [0, 1] rather than [0, 1 - y].
    CHECK(std::abs(fc::BruteForceBestResponse(game, 0, y, 20000) - ref) < 2e-4);
  }
}

TEST_CASE("optimal share is defined only where f > 0 > f'") {
  const fc::Resource res{fc::RateOfReturn::DirectPowerShift(0.1, 0.5), fc::FailureProb::Power(2.0)};
  const fc::FragileCprGame game({{0.6, 1.0}}, res);
  const auto region = fc::ComputeRegion(game, 0);
  const double mid = 0.5 * (region.interval->first + region.interval->second);
  const fc::Derivs f = game.EffectiveRate(0, mid);
  CHECK(fc::OptimalShare(game, 0, mid) == doctest::Approx(-0.6 * f.value / f.first));
  CHECK_THROWS_AS(fc::OptimalShare(game, 0, 0.1), std::domain_error);
  CHECK_THROWS_AS(fc::OptimalShare(game, 0, 0.9), std::domain_error);
}

TEST_CASE("player index is checked") {
  const auto game = AffineSpec{}.Game(2);
  CHECK_THROWS_AS(fc::BestResponse(game, 2, 0.0), std::out_of_range);
  CHECK_THROWS_AS(fc::ComputeRegion(game, -1), std::out_of_range);
}
