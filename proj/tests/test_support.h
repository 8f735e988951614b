#ifndef FRAGILE_CPR_TESTS_TEST_SUPPORT_H_
#define FRAGILE_CPR_TESTS_TEST_SUPPORT_H_

// Generators and reference formulas shared by the test binaries. Reference
// code evaluates the model in closed form from raw parameters and never
// calls into the library's numerics.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "fragile_cpr/game.h"
#include "fragile_cpr/resource.h"

namespace fragile_cpr::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double Uniform(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(gen_() >> 11) * 0x1.0p-53);
  }
  int Int(int lo, int hi) {
    return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool Coin() { return (gen_() & 1u) != 0; }

 private:
  std::mt19937_64 gen_;
};

// r(x) = c0 + c1 x, p(x) = x^gamma, one (alpha, k) for every player.
struct AffineSpec {
  double c0 = 2.0;
  double c1 = -0.5;
  double gamma = 1.0;
  double alpha = 0.5;
  double k = 1.0;

  Resource MakeResource() const {
    return {RateOfReturn::Affine(c0, c1), FailureProb::Power(gamma)};
  }
  RiskProfile Profile() const { return {alpha, k}; }
  FragileCprGame Game(int n) const {
    return FragileCprGame::Homogeneous(MakeResource(), Profile(), n);
  }

  double Rbar(double x) const { return std::pow(c0 - 1.0 + c1 * x, alpha); }
  double P(double x) const { return x >= 1.0 ? 1.0 : std::pow(x, gamma); }
  double F(double x) const { return Rbar(std::min(x, 1.0)) * (1.0 - P(x)) - k * P(x); }
  double Eu(double x, double y) const { return std::pow(x, alpha) * F(x + y); }
};

inline AffineSpec RandomDecreasing(Rng& rng) {
  AffineSpec s;
  s.c0 = rng.Uniform(1.3, 6.0);
  // keeps r(1) = c0 + c1 > 1
  s.c1 = -rng.Uniform(0.05, 0.95) * (s.c0 - 1.0);
  s.gamma = rng.Coin() ? 1.0 : rng.Uniform(1.0, 5.0);
  s.alpha = rng.Uniform(0.2, 1.0);
  s.k = rng.Uniform(0.1, 3.0);
  return s;
}

inline AffineSpec RandomIncreasing(Rng& rng) {
  AffineSpec s;
  s.c0 = rng.Uniform(1.05, 6.0);
  s.c1 = rng.Uniform(0.05, 4.0);
  s.gamma = rng.Coin() ? 1.0 : rng.Uniform(1.0, 5.0);
  s.alpha = rng.Uniform(0.2, 1.0);
  s.k = rng.Uniform(0.1, 3.0);
  return s;
}

inline AffineSpec RandomAffine(Rng& rng) {
  return rng.Coin() ? RandomDecreasing(rng) : RandomIncreasing(rng);
}

// Plain bisection on a sign change, fixed iteration count.
inline double RefBisect(const std::function<double(double)>& fn, double lo,
                        double hi) {
  double flo = fn(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = fn(mid);
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Argmax of `fn` over an evenly spaced grid of `points` on [lo, hi]; ties
// keep the smaller argument.
inline double GridArgmax(const std::function<double(double)>& fn, double lo,
                         double hi, int points) {
  double best_x = lo;
  double best = fn(lo);
  for (int i = 1; i < points; ++i) {
    const double x = lo + (hi - lo) * i / (points - 1);
    const double v = fn(x);
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  return best_x;
}

// Best response of a player of `spec` when the others invest y: the grid
// argmax of the expected utility, with 0 whenever no grid point beats it.
inline double RefBestResponse(const AffineSpec& spec, double y, int points) {
  if (y >= 1.0) return 0.0;
  const double x = GridArgmax([&](double v) { return spec.Eu(v, y); }, 0.0,
                              1.0 - y, points);
  return spec.Eu(x, y) > 0.0 ? x : 0.0;
}

// Central finite differences.
inline double Fd1(const std::function<double(double)>& fn, double x, double h) {
  return (fn(x + h) - fn(x - h)) / (2.0 * h);
}
inline double Fd2(const std::function<double(double)>& fn, double x, double h) {
  return (fn(x + h) - 2.0 * fn(x) + fn(x - h)) / (h * h);
}

inline bool RelClose(double a, double b, double rel, double abs_floor = 1e-12) {
  return std::abs(a - b) <= rel * std::max(std::abs(b), abs_floor) + abs_floor;
}

}  // namespace fragile_cpr::testing

#endif  // FRAGILE_CPR_TESTS_TEST_SUPPORT_H_
