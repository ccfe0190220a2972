#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "dualhop/diversity.hpp"
#include "dualhop/random.hpp"
#include "dualhop/relay.hpp"
#include "dualhop/ser.hpp"

namespace dualhop {

/// Monte-Carlo run parameters.
///
/// Trials are grouped in fixed blocks of kMcBlockSize; block b draws from
/// substream_seed(master_seed, tag, b). Workers claim whole blocks, so the
/// samples do not depend on worker_count.
struct McRun {
  std::uint64_t master_seed = 1;
  std::size_t n_samples = 100'000;
  unsigned worker_count = 1;
};

inline constexpr std::size_t kMcBlockSize = 8192;

/// Stream tags keeping the hops of one run independent.
inline constexpr std::uint64_t kHop1Stream = 1;
inline constexpr std::uint64_t kHop2Stream = 2;

/// Branch-level simulation of one hop: every trial draws n_tx * n_rx
/// i.i.d. Gamma{m, mean_branch_snr} branch SNRs, then applies the scheme
/// (MRC sum, STBC sum / n_tx, TAS max over per-antenna MRC sums).
std::vector<double> simulate_hop(const HopConfig& cfg, const McRun& run,
                                 std::uint64_t stream = kHop1Stream);

/// Samples of the end-to-end SNR: independent hop-1 and hop-2 draws paired
/// trial by trial through equivalent_snr.
std::vector<double> simulate_end_to_end(const LinkScenario& scenario, const McRun& run);

/// Fraction of samples <= each grid point. Sorts a copy once and merges.
/// Throws std::invalid_argument for empty samples or an unsorted grid.
std::vector<double> empirical_cdf(std::span<const double> samples, std::span<const double> grid);

/// sup_x |F_n(x) - F(x)| between the samples and a reference CDF.
double ks_distance(std::span<const double> samples, const std::function<double(double)>& cdf);

struct McEstimate {
  double estimate = 0.0;
  /// 95% normal-approximation half-width, 1.96 * s / sqrt(n).
  double halfwidth = 0.0;
};

/// Semi-analytic SER: mean of conditional_sep over end-to-end SNR samples.
McEstimate mc_ser(const PskModulation& mod, std::span<const double> eq_samples);

/// Symbol-level BPSK check: one antipodal symbol per sample through real
/// Gaussian noise at that SNR, counting sign errors.
McEstimate mc_bpsk_symbol_errors(std::span<const double> eq_samples, const McRun& run);

}  // namespace dualhop
