#include "dualhop/diversity.hpp"

#include <stdexcept>
#include <string>

namespace dualhop {

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::Mrc: return "MRC";
    case Scheme::Stbc: return "STBC";
    case Scheme::StbcMrc: return "STBC_MRC";
    case Scheme::TasMrc: return "TAS_MRC";
  }
  return "?";
}

std::optional<Scheme> parse_scheme(std::string_view text) {
  if (text == "MRC") return Scheme::Mrc;
  if (text == "STBC") return Scheme::Stbc;
  if (text == "STBC_MRC") return Scheme::StbcMrc;
  if (text == "TAS_MRC") return Scheme::TasMrc;
  return std::nullopt;
}

void HopConfig::validate() const {
  if (n_tx < 1) throw std::invalid_argument("n_tx must be >= 1");
  if (n_rx < 1) throw std::invalid_argument("n_rx must be >= 1");
  if (!(m >= 0.5)) throw std::invalid_argument("m must be >= 0.5, got " + std::to_string(m));
  if (!(mean_branch_snr > 0.0)) throw std::invalid_argument("mean_branch_snr must be positive");
  if (scheme == Scheme::Mrc && n_tx != 1) {
    throw std::invalid_argument("scheme MRC requires n_tx = 1, got " + std::to_string(n_tx));
  }
  if (scheme == Scheme::Stbc && n_rx != 1) {
    throw std::invalid_argument("scheme STBC requires n_rx = 1, got " + std::to_string(n_rx));
  }
}

namespace {

void expect_scheme(const HopConfig& cfg, Scheme want) {
  if (cfg.scheme != want) {
    throw std::invalid_argument("expected scheme " + std::string(to_string(want)) + ", got " +
                                std::string(to_string(cfg.scheme)));
  }
  cfg.validate();
}

GammaSnr combined_receive_law(const HopConfig& cfg) {
  return GammaSnr(cfg.m * cfg.n_rx, cfg.mean_branch_snr * cfg.n_rx);
}

}  // namespace

HopDistribution mrc_effective(const HopConfig& cfg) {
  expect_scheme(cfg, Scheme::Mrc);
  return combined_receive_law(cfg);
}

HopDistribution stbc_effective(const HopConfig& cfg) {
  expect_scheme(cfg, Scheme::Stbc);
  return GammaSnr(cfg.m * cfg.n_tx, cfg.mean_branch_snr);
}

HopDistribution mimo_effective(const HopConfig& cfg) {
  expect_scheme(cfg, Scheme::StbcMrc);
  return GammaSnr(cfg.m * cfg.n_tx * cfg.n_rx, cfg.mean_branch_snr * cfg.n_rx);
}

HopDistribution tas_effective(const HopConfig& cfg) {
  expect_scheme(cfg, Scheme::TasMrc);
  if (cfg.n_tx == 1) return combined_receive_law(cfg);
  return make_power_of_gamma(combined_receive_law(cfg), cfg.n_tx);
}

HopDistribution effective_distribution(const HopConfig& cfg) {
  switch (cfg.scheme) {
    case Scheme::Mrc: return mrc_effective(cfg);
    case Scheme::Stbc: return stbc_effective(cfg);
    case Scheme::StbcMrc: return mimo_effective(cfg);
    case Scheme::TasMrc: return tas_effective(cfg);
  }
  throw std::invalid_argument("unknown scheme");
}

}  // namespace dualhop
