#include "dualhop/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "detail/gamma_sampler.hpp"
#include "detail/parallel.hpp"

namespace dualhop {
namespace {

constexpr std::uint64_t kSymbolStream = 3;

std::size_t block_count(std::size_t n) { return (n + kMcBlockSize - 1) / kMcBlockSize; }

// Calls fill(rng, first, last) for each block on its own substream.
template <class Fill>
void for_each_block(const McRun& run, std::uint64_t stream, Fill&& fill) {
  detail::parallel_for(block_count(run.n_samples), run.worker_count, [&](std::size_t b) {
    Rng rng(substream_seed(run.master_seed, stream, b));
    const std::size_t first = b * kMcBlockSize;
    const std::size_t last = std::min(first + kMcBlockSize, run.n_samples);
    fill(rng, first, last);
  });
}

}  // namespace

std::vector<double> simulate_hop(const HopConfig& cfg, const McRun& run, std::uint64_t stream) {
  cfg.validate();
  const GammaSnr branch(cfg.m, cfg.mean_branch_snr);
  const int n_tx = cfg.n_tx;
  const int n_rx = cfg.n_rx;
  const Scheme scheme = cfg.scheme;

  std::vector<double> out(run.n_samples);
  for_each_block(run, stream, [&](Rng& rng, std::size_t first, std::size_t last) {
    detail::GammaSampler draw(branch);
    for (std::size_t t = first; t < last; ++t) {
      double value = 0.0;
      switch (scheme) {
        case Scheme::Mrc:
        case Scheme::StbcMrc:
        case Scheme::Stbc: {
          double sum = 0.0;
          for (int i = 0; i < n_tx * n_rx; ++i) sum += draw(rng);
          value = sum / n_tx;
          break;
        }
        case Scheme::TasMrc: {
          for (int tx = 0; tx < n_tx; ++tx) {
            double sum = 0.0;
            for (int rx = 0; rx < n_rx; ++rx) sum += draw(rng);
            value = std::max(value, sum);
          }
          break;
        }
      }
      out[t] = value;
    }
  });
  return out;
}

std::vector<double> simulate_end_to_end(const LinkScenario& scenario, const McRun& run) {
  scenario.validate();
  std::vector<double> eq = simulate_hop(scenario.hop1, run, kHop1Stream);
  const std::vector<double> hop2 = simulate_hop(scenario.hop2, run, kHop2Stream);
  for (std::size_t t = 0; t < eq.size(); ++t) {
    eq[t] = equivalent_snr(eq[t], hop2[t], scenario.combiner);
  }
  return eq;
}

std::vector<double> empirical_cdf(std::span<const double> samples, std::span<const double> grid) {
  if (samples.empty()) {
    throw std::invalid_argument("empirical_cdf: no samples");
  }
  if (!std::is_sorted(grid.begin(), grid.end())) {
    throw std::invalid_argument("empirical_cdf: grid must be sorted");
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());

  std::vector<double> out(grid.size());
  std::size_t below = 0;
  const double n = static_cast<double>(sorted.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    while (below < sorted.size() && sorted[below] <= grid[i]) ++below;
    out[i] = static_cast<double>(below) / n;
  }
  return out;
}

double ks_distance(std::span<const double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) {
    throw std::invalid_argument("ks_distance: no samples");
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    worst = std::max({worst, (i + 1) / n - f, f - i / n});
  }
  return worst;
}

McEstimate mc_ser(const PskModulation& mod, std::span<const double> eq_samples) {
  if (eq_samples.empty()) {
    throw std::invalid_argument("mc_ser: no samples");
  }
  // Welford keeps the variance stable when most terms are tiny.
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t n = 0;
  for (double g : eq_samples) {
    const double p = conditional_sep(mod, g);
    ++n;
    const double delta = p - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (p - mean);
  }
  McEstimate out;
  out.estimate = mean;
  if (n > 1) {
    const double sd = std::sqrt(m2 / static_cast<double>(n - 1));
    out.halfwidth = 1.96 * sd / std::sqrt(static_cast<double>(n));
  }
  return out;
}

McEstimate mc_bpsk_symbol_errors(std::span<const double> eq_samples, const McRun& run) {
  if (eq_samples.empty()) {
    throw std::invalid_argument("mc_bpsk_symbol_errors: no samples");
  }
  McRun symbols = run;
  symbols.n_samples = eq_samples.size();
  std::vector<unsigned char> wrong(eq_samples.size());
  for_each_block(symbols, kSymbolStream, [&](Rng& rng, std::size_t first, std::size_t last) {
    std::normal_distribution<double> noise(0.0, 1.0);
    for (std::size_t t = first; t < last; ++t) {
      // Unit-energy +1 symbol; noise variance 1 / (2 gamma) rescaled to 1.
      const double received = std::sqrt(2.0 * eq_samples[t]) + noise(rng);
      wrong[t] = received < 0.0 ? 1 : 0;
    }
  });
  std::size_t errors = 0;
  for (unsigned char w : wrong) errors += w;
  const double n = static_cast<double>(eq_samples.size());
  const double p = static_cast<double>(errors) / n;
  return {p, 1.96 * std::sqrt(p * (1.0 - p) / n)};
}

}  // namespace dualhop
