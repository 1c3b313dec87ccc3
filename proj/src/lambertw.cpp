#include "revshare/lambertw.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "revshare/errors.hpp"

namespace revshare {
namespace {

constexpr double kBranchPoint = -1.0 / std::numbers::e;

double InitialGuess(double x) {
  if (x > std::numbers::e) {
    const double l = std::log(x);
    return l - std::log(l);
  }
  if (x > 0.0) return x;
  // Square-root expansion around the branch point; adequate on [-1/e, 0].
  const double p = std::sqrt(2.0 * (std::numbers::e * x + 1.0));
  return -1.0 + p - p * p / 3.0;
}

bool Accept(double w, double x, double tol) {
  return std::abs(w * std::exp(w) - x) <= tol * std::max(1.0, std::abs(x));
}

// Halley on f(w) = w e^w - x. Returns NaN if it does not settle.
double Halley(double x, const WConfig& cfg) {
  double w = InitialGuess(x);
  for (int i = 0; i < cfg.max_iterations; ++i) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    if (denom == 0.0 || !std::isfinite(denom)) break;
    const double step = f / denom;
    const double next = w - step;
    if (!std::isfinite(next) || next < -1.0) break;
    w = next;
    if (std::abs(step) <= cfg.rel_tolerance * std::max(1.0, std::abs(w))) {
      return w;
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double Bisect(double x, const WConfig& cfg) {
  double lo = 0.0;
  double hi = std::max(1.0, std::log(x) + 1.0);
  if (x < 0.0) {
    lo = -1.0;
    hi = 0.0;
  }
  // Enough halvings to hit adjacent doubles on any bracket used here.
  const int budget = std::max(cfg.max_iterations, 200);
  for (int i = 0; i < budget; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) return mid;
    if (mid * std::exp(mid) < x) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= cfg.rel_tolerance * std::max(1.0, std::abs(mid))) {
      return 0.5 * (lo + hi);
    }
  }
  throw ConvergenceError("lambert_w0: bisection did not converge for x = " +
                         std::to_string(x));
}

}  // namespace

double lambert_w0(double x, const WConfig& cfg) {
  if (!(cfg.rel_tolerance > 0.0) || cfg.max_iterations < 1) {
    throw DomainError("lambert_w0: invalid WConfig");
  }
  if (std::isnan(x) || x < kBranchPoint) {
    throw DomainError("lambert_w0: argument below -1/e");
  }
  if (x == 0.0) return 0.0;
  if (x == kBranchPoint) return -1.0;
  if (std::isinf(x)) return x;

  const double w = Halley(x, cfg);
  if (std::isfinite(w) && Accept(w, x, std::max(cfg.rel_tolerance, 4e-16))) {
    return w;
  }
  // Near the branch point Halley loses its cubic rate and the residual test
  // is limited by cancellation, so bisection is the reference there too.
  return Bisect(x, cfg);
}

double log_x_over_w(double x, const WConfig& cfg) {
  if (!(x > 0.0)) throw DomainError("log_x_over_w: argument must be positive");
  return std::log(x) - std::log(lambert_w0(x, cfg));
}

}  // namespace revshare
