#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "dualhop/random.hpp"

namespace dualhop {

/// Gamma-distributed SNR (linear scale) parameterized by shape and mean.
///
/// Nakagami-m fading over L independent equal-power branches gives a Gamma
/// law with shape m*L. Immutable after construction.
class GammaSnr {
 public:
  /// Throws std::invalid_argument unless shape > 0 and mean > 0.
  GammaSnr(double shape, double mean);

  double shape() const { return shape_; }
  double mean() const { return mean_; }
  double scale() const { return mean_ / shape_; }

  double pdf(double gamma) const;
  double cdf(double gamma) const;
  /// 1 - cdf, accurate in the upper tail.
  double ccdf(double gamma) const;

  /// One draw (Marsaglia-Tsang; shape < 1 is boosted through shape + 1).
  double sample(Rng& rng) const;
  std::vector<double> sample(Rng& rng, std::size_t n) const;

  friend bool operator==(const GammaSnr& a, const GammaSnr& b) {
    return a.shape_ == b.shape_ && a.mean_ == b.mean_;
  }

 private:
  double shape_;
  double mean_;
  double log_gamma_shape_;
};

/// Nakagami-m envelope with mean SNR -> Gamma(shape m) SNR law.
/// Throws std::invalid_argument for m < 0.5 or mean_snr <= 0.
GammaSnr from_nakagami(double m, double mean_snr);

/// Law of the maximum of `exponent` i.i.d. copies of `base`; the SNR of a
/// hop with transmit antenna selection.
struct PowerOfGamma {
  GammaSnr base;
  int exponent;
};

using HopDistribution = std::variant<GammaSnr, PowerOfGamma>;

/// Validating constructor for the selection law (exponent >= 1).
HopDistribution make_power_of_gamma(const GammaSnr& base, int exponent);

double pdf(const HopDistribution& d, double gamma);
double cdf(const HopDistribution& d, double gamma);
double ccdf(const HopDistribution& d, double gamma);
double sample(const HopDistribution& d, Rng& rng);

/// Characteristic SNR scale of the law, used to scale quadrature maps.
double typical_scale(const HopDistribution& d);

}  // namespace dualhop
