#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dualhop/fading.hpp"
#include "dualhop/numerics.hpp"
#include "dualhop/relay.hpp"

namespace dualhop {

/// M-PSK with the constants (a, b) of the SEP approximation a*Q(sqrt(2 b g)).
///
/// BPSK uses a = 1, b = 1 (exact). M >= 4 uses the nearest-neighbour
/// approximation a = 2, b = sin^2(pi / M).
class PskModulation {
 public:
  /// Throws std::invalid_argument unless order is a power of two >= 2.
  static PskModulation with_order(int order);
  static PskModulation bpsk() { return with_order(2); }

  int order() const { return order_; }
  double a() const { return a_; }
  double b() const { return b_; }
  /// "BPSK", "PSK8", "PSK16", ... (the scenario-file spelling).
  std::string name() const;

 private:
  PskModulation(int order, double a, double b) : order_(order), a_(a), b_(b) {}
  int order_;
  double a_;
  double b_;
};

/// Accepts "BPSK", "QPSK", "PSK<M>" and "<M>PSK"/"<M>-PSK".
std::optional<PskModulation> parse_modulation(std::string_view text);

/// Symbol error probability at a fixed SNR: a * Q(sqrt(2 b gamma)).
double conditional_sep(const PskModulation& mod, double gamma);

using CdfFunction = std::function<double(double)>;

/// Average SER from the CDF F of the SNR:
///   (a/2) sqrt(b/pi) * integral_0^inf gamma^(-1/2) e^(-b gamma) F(gamma) dgamma,
/// evaluated as integral_0^inf 2 e^(-b u^2) F(u^2) du to remove the
/// singularity at the origin. `atoms` lists SNR values where F may jump
/// (point masses); the range is split there so no jump hides between nodes.
numerics::QuadratureResult ser_from_cdf(const PskModulation& mod, const CdfFunction& cdf,
                                        double tol = 1e-7, std::span<const double> atoms = {});

/// Average SER by direct averaging of conditional_sep against the pdf.
numerics::QuadratureResult ser_direct(const PskModulation& mod, const HopDistribution& dist,
                                      double tol = 1e-7);

/// ser_from_cdf over the relayed link's end-to-end CDF. Inner CDF integrals
/// run at tol / 100; any inner failure marks the result unconverged.
numerics::QuadratureResult ser_end_to_end(const PskModulation& mod, const HopDistribution& d1,
                                          const HopDistribution& d2, Combiner combiner,
                                          double tol = 1e-7);

struct SerPoint {
  double hop2_snr_db = 0.0;
  double analytical = 0.0;
  double error_estimate = 0.0;
  bool converged = true;
  std::optional<double> mc;
  std::optional<double> mc_halfwidth;
};

/// SER against the mean branch SNR of the R-D hop.
struct SerCurve {
  PskModulation modulation;
  double hop1_snr_db;
  std::vector<SerPoint> rows;  // sorted by hop2_snr_db

  bool all_converged() const;
  std::vector<double> failed_points_db() const;
};

struct SweepOptions {
  double tol = 1e-7;
  unsigned threads = 1;
  /// When set, adds semi-analytic Monte-Carlo columns.
  std::optional<std::uint64_t> mc_seed;
  std::size_t mc_samples = 1'000'000;
};

/// Scenario with both hops' mean_branch_snr replaced by the given dB values.
LinkScenario with_hop_snrs(LinkScenario scenario, double hop1_db, double hop2_db);

/// Sweeps the R-D mean branch SNR over `hop2_db_grid` (sorted) with the S-R
/// mean fixed at hop1_db. Unconverged points are flagged, not thrown.
///
/// The Monte-Carlo columns reuse one set of unit-mean hop draws across the
/// whole grid (hop SNRs scale linearly with the branch mean), so every
/// point is an unbiased estimate and points are positively correlated.
SerCurve ser_sweep(const LinkScenario& scenario, const PskModulation& mod,
                   std::span<const double> hop2_db_grid, double hop1_db,
                   const SweepOptions& options = {});

/// Several modulations over the same sweep, sharing the Monte-Carlo draws.
std::vector<SerCurve> ser_sweep(const LinkScenario& scenario,
                                std::span<const PskModulation> modulations,
                                std::span<const double> hop2_db_grid, double hop1_db,
                                const SweepOptions& options = {});

double db_to_linear(double db);

}  // namespace dualhop
