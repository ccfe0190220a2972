#pragma once

#include <cmath>
#include <random>

#include "dualhop/fading.hpp"

namespace dualhop::detail {

// Marsaglia & Tsang squeeze/rejection sampler. For shape < 1 a draw at
// shape + 1 is multiplied by U^(1/shape).
class GammaSampler {
 public:
  explicit GammaSampler(const GammaSnr& law)
      : boost_(law.shape() < 1.0),
        inv_shape_(1.0 / law.shape()),
        d_((boost_ ? law.shape() + 1.0 : law.shape()) - 1.0 / 3.0),
        c_(1.0 / std::sqrt(9.0 * d_)),
        scale_(law.scale()) {}

  double operator()(Rng& rng) {
    double x = 0.0;
    double v = 0.0;
    for (;;) {
      do {
        x = normal_(rng);
        v = 1.0 + c_ * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform_(rng);
      const double x2 = x * x;
      if (u < 1.0 - 0.0331 * x2 * x2) break;
      if (std::log(u) < 0.5 * x2 + d_ * (1.0 - v + std::log(v))) break;
    }
    double g = d_ * v;
    if (boost_) {
      g *= std::pow(uniform_(rng), inv_shape_);
    }
    return g * scale_;
  }

 private:
  bool boost_;
  double inv_shape_;
  double d_;
  double c_;
  double scale_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace dualhop::detail
