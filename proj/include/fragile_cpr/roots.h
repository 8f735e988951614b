#ifndef FRAGILE_CPR_ROOTS_H_
#define FRAGILE_CPR_ROOTS_H_

#include <cmath>

namespace fragile_cpr {

// Residual tolerance that root-finding results are checked against.
inline constexpr double kRootTol = 1e-12;
inline constexpr int kMaxBisectIterations = 200;

// Bisection for a root of fn on [lo, hi], where fn(lo) > 0 >= fn(hi) or
// fn(lo) <= 0 < fn(hi). With the default xtol of 0 the bracket is halved
// until it cannot be split in double precision (about 60 steps on [0, 1]).
template <class Fn>
double Bisect(Fn&& fn, double lo, double hi, double xtol = 0.0,
              int max_iter = kMaxBisectIterations) {
  const bool lo_positive = fn(lo) > 0.0;
  for (int it = 0; it < max_iter && hi - lo > xtol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if ((fn(mid) > 0.0) == lo_positive) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Golden-section search for the maximizer of a unimodal fn on [lo, hi].
template <class Fn>
double GoldenSectionMax(Fn&& fn, double lo, double hi, double xtol = 1e-8) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = hi - inv_phi * (hi - lo);
  double b = lo + inv_phi * (hi - lo);
  double fa = fn(a);
  double fb = fn(b);
  while (hi - lo > xtol) {
    if (fa < fb) {
      lo = a;
      a = b;
      fa = fb;
      b = lo + inv_phi * (hi - lo);
      fb = fn(b);
    } else {
      hi = b;
      b = a;
      fb = fa;
      a = hi - inv_phi * (hi - lo);
      fa = fn(a);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace fragile_cpr

#endif  // FRAGILE_CPR_ROOTS_H_
