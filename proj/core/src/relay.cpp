#include "dualhop/relay.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "detail/parallel.hpp"
#include "dualhop/numerics.hpp"

namespace dualhop {

std::string_view to_string(Combiner combiner) {
  return combiner == Combiner::Exact ? "exact" : "harmonic";
}

std::optional<Combiner> parse_combiner(std::string_view text) {
  if (text == "exact") return Combiner::Exact;
  if (text == "harmonic") return Combiner::Harmonic;
  return std::nullopt;
}

void LinkScenario::validate() const {
  try {
    hop1.validate();
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("hop1: ") + e.what());
  }
  try {
    hop2.validate();
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("hop2: ") + e.what());
  }
  if (hop1.n_rx != hop2.n_tx) {
    throw std::invalid_argument("relay antenna count mismatch: hop1.n_rx = " +
                                std::to_string(hop1.n_rx) +
                                ", hop2.n_tx = " + std::to_string(hop2.n_tx));
  }
}

double equivalent_snr(double g1, double g2, Combiner combiner) {
  if (combiner == Combiner::Exact) {
    return g1 * g2 / (g1 + g2 + 1.0);
  }
  const double sum = g1 + g2;
  return sum > 0.0 ? g1 * g2 / sum : 0.0;
}

CdfEvaluation end_to_end_cdf(const HopDistribution& d1, const HopDistribution& d2, double gamma,
                             Combiner combiner, double tol) {
  if (!(gamma >= 0.0)) {
    throw std::invalid_argument("end_to_end_cdf: gamma must be >= 0");
  }
  if (!(tol > 0.0 && tol <= 1e-2)) {
    throw std::invalid_argument("end_to_end_cdf: tol must lie in (0, 1e-2]");
  }
  CdfEvaluation out;
  if (gamma == 0.0) {
    return out;
  }
  if (std::isinf(gamma)) {
    out.value = 1.0;
    return out;
  }

  // With delta = g2 - gamma > 0 the hop-1 threshold is gamma + c / delta.
  const double c = combiner == Combiner::Exact ? gamma * (gamma + 1.0) : gamma * gamma;
  const double certain = cdf(d2, gamma);

  const numerics::Integrand integrand = [&](double delta) {
    const double density = pdf(d2, gamma + delta);
    if (density == 0.0) return 0.0;
    return cdf(d1, gamma + c / delta) * density;
  };
  numerics::QuadratureOptions options;
  options.rel_tol = tol;
  options.floor = std::max(certain, 1e-15);
  const auto tail = numerics::integrate_semi_infinite(integrand, 0.0, options, typical_scale(d2));

  const double raw = certain + tail.value;
  out.value = std::clamp(raw, 0.0, 1.0);
  out.error_estimate = tail.error_estimate;
  out.evaluations = tail.evaluations;
  out.converged = tail.converged;
  out.clamped_beyond_tolerance = std::abs(raw - out.value) > tail.error_estimate + tol;
  return out;
}

std::vector<CdfEvaluation> end_to_end_cdf_grid(const HopDistribution& d1,
                                               const HopDistribution& d2,
                                               std::span<const double> grid, Combiner combiner,
                                               double tol, unsigned threads) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0) || (i > 0 && !(grid[i] > grid[i - 1]))) {
      throw std::invalid_argument("end_to_end_cdf_grid: grid must be nonnegative and increasing");
    }
  }
  std::vector<CdfEvaluation> out(grid.size());
  detail::parallel_for(grid.size(), threads, [&](std::size_t i) {
    out[i] = end_to_end_cdf(d1, d2, grid[i], combiner, tol);
  });
  for (std::size_t i = 1; i < out.size(); ++i) {
    out[i].value = std::max(out[i].value, out[i - 1].value);
  }
  return out;
}

}  // namespace dualhop
