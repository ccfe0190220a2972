#include "dualhop/fading.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "detail/gamma_sampler.hpp"
#include "detail/incomplete_gamma.hpp"

namespace dualhop {

GammaSnr::GammaSnr(double shape, double mean) : shape_(shape), mean_(mean) {
  if (!(shape > 0.0) || !std::isfinite(shape)) {
    throw std::invalid_argument("GammaSnr: shape must be positive, got " + std::to_string(shape));
  }
  if (!(mean > 0.0) || !std::isfinite(mean)) {
    throw std::invalid_argument("GammaSnr: mean must be positive, got " + std::to_string(mean));
  }
  log_gamma_shape_ = std::lgamma(shape_);
}

double GammaSnr::pdf(double gamma) const {
  if (gamma < 0.0) return 0.0;
  const double theta = scale();
  if (gamma == 0.0) {
    if (shape_ < 1.0) return std::numeric_limits<double>::infinity();
    return shape_ == 1.0 ? 1.0 / theta : 0.0;
  }
  return std::exp((shape_ - 1.0) * std::log(gamma) - gamma / theta - log_gamma_shape_ -
                  shape_ * std::log(theta));
}

double GammaSnr::cdf(double gamma) const {
  if (gamma <= 0.0) return 0.0;
  return numerics::detail::lower_gamma_p(shape_, gamma / scale(), log_gamma_shape_);
}

double GammaSnr::ccdf(double gamma) const {
  if (gamma <= 0.0) return 1.0;
  return numerics::detail::upper_gamma_q(shape_, gamma / scale(), log_gamma_shape_);
}

double GammaSnr::sample(Rng& rng) const { return detail::GammaSampler(*this)(rng); }

std::vector<double> GammaSnr::sample(Rng& rng, std::size_t n) const {
  detail::GammaSampler draw(*this);
  std::vector<double> out(n);
  for (double& x : out) x = draw(rng);
  return out;
}

GammaSnr from_nakagami(double m, double mean_snr) {
  if (!(m >= 0.5)) {
    throw std::invalid_argument("from_nakagami: fading figure m must be >= 0.5, got " +
                                std::to_string(m));
  }
  return GammaSnr(m, mean_snr);
}

HopDistribution make_power_of_gamma(const GammaSnr& base, int exponent) {
  if (exponent < 1) {
    throw std::invalid_argument("PowerOfGamma: exponent must be >= 1");
  }
  return PowerOfGamma{base, exponent};
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

double pdf(const HopDistribution& d, double gamma) {
  return std::visit(
      Overloaded{[&](const GammaSnr& g) { return g.pdf(gamma); },
                 [&](const PowerOfGamma& p) {
                   if (p.exponent == 1) return p.base.pdf(gamma);
                   return p.exponent * std::pow(p.base.cdf(gamma), p.exponent - 1) *
                          p.base.pdf(gamma);
                 }},
      d);
}

double cdf(const HopDistribution& d, double gamma) {
  return std::visit(Overloaded{[&](const GammaSnr& g) { return g.cdf(gamma); },
                               [&](const PowerOfGamma& p) {
                                 return std::pow(p.base.cdf(gamma), p.exponent);
                               }},
                    d);
}

double ccdf(const HopDistribution& d, double gamma) {
  return std::visit(Overloaded{[&](const GammaSnr& g) { return g.ccdf(gamma); },
                               [&](const PowerOfGamma& p) {
                                 // 1 - (1 - q)^n without cancellation for small q.
                                 const double q = p.base.ccdf(gamma);
                                 return -std::expm1(p.exponent * std::log1p(-q));
                               }},
                    d);
}

double sample(const HopDistribution& d, Rng& rng) {
  return std::visit(Overloaded{[&](const GammaSnr& g) { return g.sample(rng); },
                               [&](const PowerOfGamma& p) {
                                 detail::GammaSampler draw(p.base);
                                 double best = 0.0;
                                 for (int i = 0; i < p.exponent; ++i) {
                                   best = std::max(best, draw(rng));
                                 }
                                 return best;
                               }},
                    d);
}

double typical_scale(const HopDistribution& d) {
  return std::visit(Overloaded{[](const GammaSnr& g) { return g.mean(); },
                               [](const PowerOfGamma& p) { return p.base.mean(); }},
                    d);
}

}  // namespace dualhop
