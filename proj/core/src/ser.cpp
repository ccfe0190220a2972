#include "dualhop/ser.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "detail/parallel.hpp"
#include "dualhop/montecarlo.hpp"

namespace dualhop {

PskModulation PskModulation::with_order(int order) {
  if (order < 2 || !std::has_single_bit(static_cast<unsigned>(order))) {
    throw std::invalid_argument("PSK order must be a power of two >= 2, got " +
                                std::to_string(order));
  }
  if (order == 2) return PskModulation(2, 1.0, 1.0);
  const double s = std::sin(std::numbers::pi / order);
  return PskModulation(order, 2.0, s * s);
}

std::string PskModulation::name() const {
  return order_ == 2 ? std::string("BPSK") : "PSK" + std::to_string(order_);
}

std::optional<PskModulation> parse_modulation(std::string_view text) {
  if (text == "BPSK") return PskModulation::bpsk();
  if (text == "QPSK") return PskModulation::with_order(4);
  std::string_view digits;
  if (text.starts_with("PSK")) {
    digits = text.substr(3);
  } else if (text.ends_with("-PSK")) {
    digits = text.substr(0, text.size() - 4);
  } else if (text.ends_with("PSK")) {
    digits = text.substr(0, text.size() - 3);
  }
  int order = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), order);
  if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size()) {
    return std::nullopt;
  }
  if (order < 2 || !std::has_single_bit(static_cast<unsigned>(order))) return std::nullopt;
  return PskModulation::with_order(order);
}

double conditional_sep(const PskModulation& mod, double gamma) {
  return mod.a() * numerics::gaussian_q(std::sqrt(2.0 * mod.b() * std::max(gamma, 0.0)));
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

numerics::QuadratureResult ser_from_cdf(const PskModulation& mod, const CdfFunction& cdf,
                                        double tol, std::span<const double> atoms) {
  const double b = mod.b();
  const numerics::Integrand integrand = [&](double u) {
    const double kernel = 2.0 * std::exp(-b * u * u);
    if (kernel == 0.0) return 0.0;
    return kernel * cdf(u * u);
  };
  numerics::QuadratureOptions options;
  options.rel_tol = tol;
  options.floor = 1e-14;

  std::vector<double> cuts;
  for (double g : atoms) {
    if (g > 0.0 && std::isfinite(g)) cuts.push_back(std::sqrt(g));
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  numerics::QuadratureResult result;
  result.converged = true;
  auto accumulate = [&](const numerics::QuadratureResult& piece) {
    result.value += piece.value;
    result.error_estimate += piece.error_estimate;
    result.evaluations += piece.evaluations;
    result.converged = result.converged && piece.converged;
  };
  double lo = 0.0;
  for (double cut : cuts) {
    accumulate(numerics::integrate_finite(integrand, lo, cut, options));
    lo = cut;
  }
  accumulate(numerics::integrate_semi_infinite(integrand, lo, options, 1.0 / std::sqrt(b)));

  const double prefactor = 0.5 * mod.a() * std::sqrt(b / std::numbers::pi);
  result.value *= prefactor;
  result.error_estimate *= prefactor;
  return result;
}

numerics::QuadratureResult ser_direct(const PskModulation& mod, const HopDistribution& dist,
                                      double tol) {
  // gamma = u^2 keeps the integrand finite for shapes down to 1/2.
  const numerics::Integrand integrand = [&](double u) {
    const double density = pdf(dist, u * u);
    if (density == 0.0) return 0.0;
    return conditional_sep(mod, u * u) * density * 2.0 * u;
  };
  numerics::QuadratureOptions options;
  options.rel_tol = tol;
  options.floor = 1e-14;
  return numerics::integrate_semi_infinite(integrand, 0.0, options,
                                           std::sqrt(typical_scale(dist)));
}

numerics::QuadratureResult ser_end_to_end(const PskModulation& mod, const HopDistribution& d1,
                                          const HopDistribution& d2, Combiner combiner,
                                          double tol) {
  const double inner_tol = std::min(tol / 100.0, 1e-2);
  bool inner_ok = true;
  const CdfFunction cdf = [&](double gamma) {
    const CdfEvaluation e = end_to_end_cdf(d1, d2, gamma, combiner, inner_tol);
    inner_ok = inner_ok && e.converged;
    return e.value;
  };
  auto result = ser_from_cdf(mod, cdf, tol);
  result.converged = result.converged && inner_ok;
  return result;
}

bool SerCurve::all_converged() const {
  for (const auto& row : rows) {
    if (!row.converged) return false;
  }
  return true;
}

std::vector<double> SerCurve::failed_points_db() const {
  std::vector<double> out;
  for (const auto& row : rows) {
    if (!row.converged) out.push_back(row.hop2_snr_db);
  }
  return out;
}

LinkScenario with_hop_snrs(LinkScenario scenario, double hop1_db, double hop2_db) {
  scenario.hop1.mean_branch_snr = db_to_linear(hop1_db);
  scenario.hop2.mean_branch_snr = db_to_linear(hop2_db);
  return scenario;
}

std::vector<SerCurve> ser_sweep(const LinkScenario& scenario,
                                std::span<const PskModulation> modulations,
                                std::span<const double> hop2_db_grid, double hop1_db,
                                const SweepOptions& options) {
  if (modulations.empty()) {
    throw std::invalid_argument("ser_sweep: no modulations given");
  }
  if (hop2_db_grid.empty()) {
    throw std::invalid_argument("ser_sweep: empty SNR grid");
  }
  for (std::size_t i = 1; i < hop2_db_grid.size(); ++i) {
    if (!(hop2_db_grid[i] > hop2_db_grid[i - 1])) {
      throw std::invalid_argument("ser_sweep: SNR grid must be strictly increasing");
    }
  }
  with_hop_snrs(scenario, hop1_db, hop2_db_grid.front()).validate();

  std::vector<SerCurve> curves;
  for (const auto& mod : modulations) {
    curves.push_back(SerCurve{mod, hop1_db, std::vector<SerPoint>(hop2_db_grid.size())});
  }

  std::vector<double> unit_hop1;
  std::vector<double> unit_hop2;
  if (options.mc_seed) {
    const McRun run{*options.mc_seed, options.mc_samples, options.threads};
    LinkScenario unit = with_hop_snrs(scenario, 0.0, 0.0);
    unit_hop1 = simulate_hop(unit.hop1, run, kHop1Stream);
    unit_hop2 = simulate_hop(unit.hop2, run, kHop2Stream);
  }

  detail::parallel_for(hop2_db_grid.size(), options.threads, [&](std::size_t i) {
    const LinkScenario point = with_hop_snrs(scenario, hop1_db, hop2_db_grid[i]);
    const HopDistribution d1 = effective_distribution(point.hop1);
    const HopDistribution d2 = effective_distribution(point.hop2);

    std::vector<double> eq;
    if (options.mc_seed) {
      const double s1 = point.hop1.mean_branch_snr;
      const double s2 = point.hop2.mean_branch_snr;
      eq.resize(unit_hop1.size());
      for (std::size_t t = 0; t < eq.size(); ++t) {
        eq[t] = equivalent_snr(s1 * unit_hop1[t], s2 * unit_hop2[t], scenario.combiner);
      }
    }

    for (std::size_t c = 0; c < curves.size(); ++c) {
      SerPoint& row = curves[c].rows[i];
      row.hop2_snr_db = hop2_db_grid[i];
      const auto q = ser_end_to_end(curves[c].modulation, d1, d2, scenario.combiner, options.tol);
      row.analytical = q.value;
      row.error_estimate = q.error_estimate;
      row.converged = q.converged;
      if (options.mc_seed) {
        const McEstimate est = mc_ser(curves[c].modulation, eq);
        row.mc = est.estimate;
        row.mc_halfwidth = est.halfwidth;
      }
    }
  });
  return curves;
}

SerCurve ser_sweep(const LinkScenario& scenario, const PskModulation& mod,
                   std::span<const double> hop2_db_grid, double hop1_db,
                   const SweepOptions& options) {
  return std::move(ser_sweep(scenario, std::span(&mod, 1), hop2_db_grid, hop1_db, options).front());
}

}  // namespace dualhop
