#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "dualhop/diversity.hpp"
#include "dualhop/fading.hpp"

namespace dualhop {

/// How the relay output SNR is formed from the two hop SNRs.
enum class Combiner {
  Exact,     ///< g1*g2 / (g1 + g2 + 1), CSI-assisted amplify-and-forward
  Harmonic,  ///< g1*g2 / (g1 + g2), high-SNR approximation (upper bound)
};

std::string_view to_string(Combiner combiner);
std::optional<Combiner> parse_combiner(std::string_view text);

/// Source -> relay -> destination link without a direct path.
struct LinkScenario {
  HopConfig hop1;  ///< S -> R
  HopConfig hop2;  ///< R -> D
  Combiner combiner = Combiner::Exact;

  /// Validates both hops and that the relay antenna count agrees
  /// (hop1.n_rx == hop2.n_tx). Throws std::invalid_argument.
  void validate() const;
};

/// End-to-end SNR of the relayed link. Symmetric, never above min(g1, g2).
double equivalent_snr(double g1, double g2, Combiner combiner);

struct CdfEvaluation {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;
  /// The raw quadrature value left [0, 1] by more than its error budget.
  bool clamped_beyond_tolerance = false;
};

/// P[equivalent SNR <= gamma] for independent hop SNRs d1, d2.
///
/// Conditioning on the hop-2 SNR g2: for g2 <= gamma the event is certain,
/// which contributes F2(gamma) exactly; for g2 > gamma it holds iff
/// g1 <= gamma (g2 + 1) / (g2 - gamma) (or gamma g2 / (g2 - gamma) for the
/// harmonic combiner), and that part is integrated adaptively to relative
/// tolerance `tol`. Throws std::invalid_argument for gamma < 0 or tol
/// outside (0, 1e-2].
CdfEvaluation end_to_end_cdf(const HopDistribution& d1, const HopDistribution& d2,
                             double gamma, Combiner combiner, double tol = 1e-8);

/// end_to_end_cdf on an increasing grid, evaluated on `threads` workers.
/// Output is clamped and made nondecreasing; identical for any thread count.
std::vector<CdfEvaluation> end_to_end_cdf_grid(const HopDistribution& d1,
                                               const HopDistribution& d2,
                                               std::span<const double> grid, Combiner combiner,
                                               double tol = 1e-8, unsigned threads = 1);

}  // namespace dualhop
