#pragma once

#include <cmath>
#include <limits>

namespace dualhop::numerics::detail {

// Both routines take log(Gamma(k)) precomputed so callers holding a fixed
// shape avoid repeated lgamma calls.

// Series for P(k, x); converges quickly for x < k + 1.
inline double gamma_series(double k, double x, double log_gamma_k) {
  double term = 1.0 / k;
  double sum = term;
  for (int n = 1; n < 100000; ++n) {
    term *= x / (k + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-16) {
      break;
    }
  }
  return sum * std::exp(k * std::log(x) - x - log_gamma_k);
}

// Modified Lentz continued fraction for Q(k, x); used for x >= k + 1.
inline double gamma_continued_fraction(double k, double x, double log_gamma_k) {
  constexpr double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  double b = x + 1.0 - k;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 100000; ++i) {
    const double an = -i * (i - k);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) {
      break;
    }
  }
  return std::exp(k * std::log(x) - x - log_gamma_k) * h;
}

inline double lower_gamma_p(double k, double x, double log_gamma_k) {
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < k + 1.0) return gamma_series(k, x, log_gamma_k);
  return 1.0 - gamma_continued_fraction(k, x, log_gamma_k);
}

inline double upper_gamma_q(double k, double x, double log_gamma_k) {
  if (x <= 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < k + 1.0) return 1.0 - gamma_series(k, x, log_gamma_k);
  return gamma_continued_fraction(k, x, log_gamma_k);
}

}  // namespace dualhop::numerics::detail
