#pragma once

#include <cstddef>
#include <functional>

namespace dualhop::numerics {

using Integrand = std::function<double(double)>;

struct QuadratureOptions {
  /// Relative tolerance on the integral value.
  double rel_tol = 1e-8;
  /// Lower bound on |value| used when converting rel_tol into an absolute
  /// target, so integrals near zero still terminate.
  double floor = 1e-12;
  /// Maximum number of subintervals kept by the adaptive scheme.
  std::size_t max_intervals = 2000;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  /// True iff error_estimate <= rel_tol * max(|value|, floor).
  bool converged = false;
};

/// Globally adaptive Gauss-Kronrod (7/15) quadrature on [lo, hi].
///
/// The rule is open: f is never evaluated at lo or hi, so integrable
/// endpoint singularities are tolerated. Subdivision stops when the summed
/// error estimate meets the target, when the interval budget is exhausted,
/// or when every remaining subinterval is already at rounding-error level
/// (further bisection cannot help). The last two cases return the best
/// estimate with converged = false.
QuadratureResult integrate_finite(const Integrand& f, double lo, double hi,
                                  const QuadratureOptions& options = {});

/// Integral of f over [lo, inf) via x = lo + scale * t / (1 - t), t in [0, 1).
/// `scale` should be of the order of the width of the integrand's mass.
QuadratureResult integrate_semi_infinite(const Integrand& f, double lo,
                                         const QuadratureOptions& options = {},
                                         double scale = 1.0);

/// Gaussian tail probability Q(x) = P[N(0,1) > x].
double gaussian_q(double x);

/// Regularized lower incomplete gamma P(k, x), k > 0, x >= 0.
double regularized_lower_gamma(double k, double x);

/// Regularized upper incomplete gamma Q(k, x) = 1 - P(k, x), computed
/// directly so small upper tails keep their relative accuracy.
double regularized_upper_gamma(double k, double x);

}  // namespace dualhop::numerics
