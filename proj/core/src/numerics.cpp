#include "dualhop/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "detail/incomplete_gamma.hpp"

namespace dualhop::numerics {
namespace {

constexpr double kEpsilon = std::numeric_limits<double>::epsilon();

// Kronrod abscissae on [0, 1]; odd indices are the 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double lo;
  double hi;
  double value;
  double error;
  double roundoff;  // error level below which bisection cannot help

  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gauss_kronrod15(const Integrand& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double abs_half = std::abs(half);

  std::array<double, 7> fv1{};
  std::array<double, 7> fv2{};

  const double fc = f(center);
  double gauss = fc * kWg[3];
  double kronrod = fc * kWgk[7];
  double abs_sum = std::abs(kronrod);

  for (std::size_t j = 0; j < 3; ++j) {
    const std::size_t k = 2 * j + 1;
    const double dx = half * kXgk[k];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    fv1[k] = f1;
    fv2[k] = f2;
    gauss += kWg[j] * (f1 + f2);
    kronrod += kWgk[k] * (f1 + f2);
    abs_sum += kWgk[k] * (std::abs(f1) + std::abs(f2));
  }
  for (std::size_t j = 0; j < 4; ++j) {
    const std::size_t k = 2 * j;
    const double dx = half * kXgk[k];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    fv1[k] = f1;
    fv2[k] = f2;
    kronrod += kWgk[k] * (f1 + f2);
    abs_sum += kWgk[k] * (std::abs(f1) + std::abs(f2));
  }

  const double mean = 0.5 * kronrod;
  double asc = kWgk[7] * std::abs(fc - mean);
  for (std::size_t j = 0; j < 7; ++j) {
    asc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));
  }

  const double value = kronrod * half;
  const double resabs = abs_sum * abs_half;
  const double resasc = asc * abs_half;
  double error = std::abs((kronrod - gauss) * half);
  if (resasc != 0.0 && error != 0.0) {
    error = resasc * std::min(1.0, std::pow(200.0 * error / resasc, 1.5));
  }
  const double roundoff = 50.0 * kEpsilon * resabs;
  error = std::max(error, roundoff);
  return {lo, hi, value, error, roundoff};
}

bool at_roundoff(const Segment& s) {
  const double width_floor =
      4.0 * kEpsilon * std::max({std::abs(s.lo), std::abs(s.hi), 1e-300});
  return s.error <= s.roundoff * (1.0 + 1e-9) || (s.hi - s.lo) <= width_floor;
}

}  // namespace

QuadratureResult integrate_finite(const Integrand& f, double lo, double hi,
                                  const QuadratureOptions& options) {
  if (!(lo < hi)) {
    throw std::invalid_argument("integrate_finite: requires lo < hi");
  }
  if (!(options.rel_tol > 0.0)) {
    throw std::invalid_argument("integrate_finite: rel_tol must be positive");
  }

  std::vector<Segment> active;
  std::vector<Segment> frozen;
  active.reserve(64);

  auto target = [&](double value) {
    return options.rel_tol * std::max(std::abs(value), options.floor);
  };

  Segment first = gauss_kronrod15(f, lo, hi);
  std::size_t evaluations = 15;
  double value = first.value;
  double error = first.error;
  double frozen_error = 0.0;
  if (at_roundoff(first)) {
    frozen.push_back(first);
    frozen_error = first.error;
  } else {
    active.push_back(first);
  }

  while (error > target(value) && !active.empty() &&
         active.size() + frozen.size() < options.max_intervals) {
    if (!std::isfinite(value) || frozen_error > target(value)) {
      break;
    }
    std::pop_heap(active.begin(), active.end());
    const Segment worst = active.back();
    active.pop_back();

    const double mid = 0.5 * (worst.lo + worst.hi);
    const Segment left = gauss_kronrod15(f, worst.lo, mid);
    const Segment right = gauss_kronrod15(f, mid, worst.hi);
    evaluations += 30;

    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    for (const Segment& child : {left, right}) {
      if (at_roundoff(child)) {
        frozen.push_back(child);
        frozen_error += child.error;
      } else {
        active.push_back(child);
        std::push_heap(active.begin(), active.end());
      }
    }
  }

  // Re-sum to drop the drift of the incremental updates.
  value = 0.0;
  error = 0.0;
  for (const auto* pool : {&active, &frozen}) {
    for (const Segment& s : *pool) {
      value += s.value;
      error += s.error;
    }
  }

  QuadratureResult result;
  result.value = value;
  result.error_estimate = error;
  result.evaluations = evaluations;
  result.converged = std::isfinite(value) && error <= target(value);
  return result;
}

QuadratureResult integrate_semi_infinite(const Integrand& f, double lo,
                                         const QuadratureOptions& options,
                                         double scale) {
  if (!(scale > 0.0)) {
    throw std::invalid_argument("integrate_semi_infinite: scale must be positive");
  }
  const Integrand mapped = [&](double t) {
    const double one_minus = 1.0 - t;
    const double x = lo + scale * t / one_minus;
    const double fx = f(x);
    if (fx == 0.0) {
      return 0.0;
    }
    return fx * scale / (one_minus * one_minus);
  };
  return integrate_finite(mapped, 0.0, 1.0, options);
}

double gaussian_q(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double regularized_lower_gamma(double k, double x) {
  if (!(k > 0.0) || !(x >= 0.0)) {
    throw std::domain_error("regularized_lower_gamma: requires k > 0, x >= 0");
  }
  return detail::lower_gamma_p(k, x, std::lgamma(k));
}

double regularized_upper_gamma(double k, double x) {
  if (!(k > 0.0) || !(x >= 0.0)) {
    throw std::domain_error("regularized_upper_gamma: requires k > 0, x >= 0");
  }
  return detail::upper_gamma_q(k, x, std::lgamma(k));
}

}  // namespace dualhop::numerics
