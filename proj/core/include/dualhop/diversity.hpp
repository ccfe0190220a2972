#pragma once

#include <optional>
#include <string_view>

#include "dualhop/fading.hpp"

namespace dualhop {

/// Antenna processing applied on one hop.
enum class Scheme {
  Mrc,      ///< 1 x n_rx, maximal-ratio combining at the receiver
  Stbc,     ///< n_tx x 1, orthogonal space-time block code
  StbcMrc,  ///< n_tx x n_rx, STBC at the transmitter and MRC at the receiver
  TasMrc,   ///< best single transmit antenna, MRC at the receiver
};

std::string_view to_string(Scheme scheme);
std::optional<Scheme> parse_scheme(std::string_view text);

/// One hop of the link. mean_branch_snr is the mean SNR of a single Tx-Rx
/// branch when the whole transmit power feeds that branch (linear scale).
struct HopConfig {
  int n_tx = 1;
  int n_rx = 1;
  double m = 1.0;
  double mean_branch_snr = 1.0;
  Scheme scheme = Scheme::Mrc;

  /// Throws std::invalid_argument describing the first violated constraint.
  void validate() const;
};

// Each throws std::invalid_argument when cfg.scheme does not match or the
// antenna counts violate that scheme's shape.

/// Gamma{m*n_rx, n_rx*mean}: MRC sums branch SNRs with full array gain.
HopDistribution mrc_effective(const HopConfig& cfg);

/// Gamma{m*n_tx, mean}: power split 1/n_tx across transmit antennas, so the
/// mean is preserved and only the diversity order grows.
HopDistribution stbc_effective(const HopConfig& cfg);

/// Gamma{m*n_tx*n_rx, n_rx*mean}.
HopDistribution mimo_effective(const HopConfig& cfg);

/// PowerOfGamma{Gamma{m*n_rx, n_rx*mean}, n_tx}.
HopDistribution tas_effective(const HopConfig& cfg);

/// Dispatches on cfg.scheme.
HopDistribution effective_distribution(const HopConfig& cfg);

}  // namespace dualhop
