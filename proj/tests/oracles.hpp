#ifndef REVSHARE_TESTS_ORACLES_HPP
#define REVSHARE_TESTS_ORACLES_HPP

#include <cmath>
#include <functional>
#include <numbers>

// Reference values that do not touch the library's Lambert W.

namespace testing_oracle {

// W0(x) for x >= 0 by bisection on w e^w = x.
inline double bisect_w(double x) {
  double lo = 0.0;
  double hi = std::max(1.0, std::log(x + 1.0) + 1.0);
  while (hi * std::exp(hi) < x) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid * std::exp(mid) < x) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

inline double w_of(double r, double c) { return bisect_w(r * std::numbers::e / c); }

// Brute maximization of f over [lo, hi]: dense scan then repeated zoom.
inline double scan_max(const std::function<double(double)>& f, double lo, double hi) {
  for (int round = 0; round < 12; ++round) {
    const int m = 400;
    double best = lo, best_v = f(lo);
    for (int i = 1; i <= m; ++i) {
      const double x = lo + (hi - lo) * i / m;
      const double v = f(x);
      if (v > best_v) best_v = v, best = x;
    }
    const double step = (hi - lo) / m;
    lo = std::max(lo, best - step);
    hi = std::min(hi, best + step);
  }
  return 0.5 * (lo + hi);
}

}  // namespace testing_oracle

#endif
