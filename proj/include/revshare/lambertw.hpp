#ifndef REVSHARE_LAMBERTW_HPP
#define REVSHARE_LAMBERTW_HPP

namespace revshare {

struct WConfig {
  double rel_tolerance = 1e-14;
  int max_iterations = 100;
};

/// Principal branch W0 of the Lambert W function, the inverse of w -> w*e^w
/// on w >= -1.
///
/// Halley iteration from log(x) - log(log(x)) (x > e) or x (x <= e), falling
/// back to bisection when Halley fails to settle. The result satisfies
/// |w*e^w - x| <= rel_tolerance * max(1, |x|) up to rounding in exp.
///
/// Throws DomainError for x < -1/e or NaN, ConvergenceError if neither
/// route converges.
double lambert_w0(double x, const WConfig& cfg = {});

/// log(x / W0(x)). Equal to W0(x) for every x > 0; kept as a separate entry
/// point so the identity can be checked where the equilibrium algebra uses it.
/// Throws DomainError for x <= 0.
double log_x_over_w(double x, const WConfig& cfg = {});

}  // namespace revshare

#endif  // REVSHARE_LAMBERTW_HPP
