#include "dualhop/ser.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dualhop/numerics.hpp"

namespace dualhop {
namespace {

HopConfig hop(int n_tx, int n_rx, double m, double mean, Scheme scheme) {
  return HopConfig{n_tx, n_rx, m, mean, scheme};
}

LinkScenario fig5_scenario() {
  return {hop(3, 3, 1.0, 1.0, Scheme::StbcMrc), hop(3, 3, 1.0, 1.0, Scheme::StbcMrc),
          Combiner::Exact};
}

std::vector<double> db_grid(double lo, double hi, double step) {
  std::vector<double> out;
  for (double x = lo; x <= hi + 1e-9; x += step) out.push_back(x);
  return out;
}

TEST(PskModulation, Constants) {
  const auto bpsk = PskModulation::bpsk();
  EXPECT_EQ(bpsk.a(), 1.0);
  EXPECT_EQ(bpsk.b(), 1.0);
  const auto psk8 = PskModulation::with_order(8);
  EXPECT_EQ(psk8.a(), 2.0);
  EXPECT_NEAR(psk8.b(), std::pow(std::sin(std::numbers::pi / 8), 2), 1e-16);
  EXPECT_EQ(psk8.name(), "PSK8");
  EXPECT_THROW(PskModulation::with_order(6), std::invalid_argument);
  EXPECT_THROW(PskModulation::with_order(1), std::invalid_argument);
}

TEST(PskModulation, Parse) {
  EXPECT_EQ(parse_modulation("BPSK")->order(), 2);
  EXPECT_EQ(parse_modulation("PSK16")->order(), 16);
  EXPECT_EQ(parse_modulation("8-PSK")->order(), 8);
  EXPECT_EQ(parse_modulation("8PSK")->order(), 8);
  EXPECT_FALSE(parse_modulation("PSK6").has_value());
  EXPECT_FALSE(parse_modulation("QAM16").has_value());
  EXPECT_FALSE(parse_modulation("PSK").has_value());
}

TEST(ConditionalSep, BpskAtZero) { EXPECT_DOUBLE_EQ(conditional_sep(PskModulation::bpsk(), 0.0), 0.5); }

TEST(ConditionalSep, BpskTenToMinusThree) {
  // mpmath: Q(sqrt(2 * 4.774))
  EXPECT_NEAR(conditional_sep(PskModulation::bpsk(), 4.774), 0.0010008370009033725, 1e-15);
  EXPECT_NEAR(conditional_sep(PskModulation::bpsk(), 4.774), 1.0e-3, 1e-5);
}

TEST(ConditionalSep, EightPsk) {
  const auto psk8 = PskModulation::with_order(8);
  EXPECT_DOUBLE_EQ(conditional_sep(psk8, 0.0), 1.0);
  EXPECT_NEAR(conditional_sep(psk8, 10.0), 0.087005021294011416, 1e-14);
}

TEST(ConditionalSep, StrictlyDecreasing) {
  for (int order : {2, 8, 16}) {
    const auto mod = PskModulation::with_order(order);
    double prev = conditional_sep(mod, 0.0);
    for (double g = 0.1; g < 60.0; g += 0.1) {
      const double p = conditional_sep(mod, g);
      EXPECT_LT(p, prev);
      EXPECT_GT(p, 0.0);
      prev = p;
    }
  }
}

TEST(SerFromCdf, AlwaysFailingLinkGivesHalfA) {
  for (int order : {2, 8, 16}) {
    const auto mod = PskModulation::with_order(order);
    const auto r = ser_from_cdf(mod, [](double) { return 1.0; });
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.value, mod.a() / 2.0, 1e-9) << order;
  }
}

TEST(SerFromCdf, StepCdfReducesToConditionalSep) {
  for (int order : {2, 8, 16}) {
    const auto mod = PskModulation::with_order(order);
    for (double g0 : {0.3, 2.0, 7.5}) {
      const double atoms[] = {g0};
      const auto r =
          ser_from_cdf(mod, [g0](double g) { return g >= g0 ? 1.0 : 0.0; }, 1e-10, atoms);
      EXPECT_NEAR(r.value, conditional_sep(mod, g0), 1e-8) << order << " " << g0;
    }
  }
}

TEST(SerFromCdf, MatchesDirectAveragingForRayleigh) {
  const GammaSnr law(1.0, 10.0);
  const auto mod = PskModulation::bpsk();
  const auto by_cdf = ser_from_cdf(mod, [&](double g) { return law.cdf(g); });
  const auto direct = ser_direct(mod, law);
  EXPECT_NEAR(by_cdf.value, direct.value, 1e-6);
  EXPECT_NEAR(by_cdf.value, 0.023268705377203842, 1e-8);
}

TEST(SerDirect, RayleighBpskClosedForm) {
  const auto mod = PskModulation::bpsk();
  for (double mean : {1.0, 10.0, 100.0}) {
    const double closed = 0.5 * (1.0 - std::sqrt(mean / (1.0 + mean)));
    EXPECT_NEAR(ser_direct(mod, GammaSnr(1.0, mean)).value, closed, 1e-6) << mean;
  }
}

TEST(SerDirect, NakagamiReferenceValues) {
  // mpmath direct averages; see tests/oracles/oracle_values.py.
  const auto mod = PskModulation::bpsk();
  EXPECT_NEAR(ser_direct(mod, GammaSnr(2.0, 5.0)).value, 0.017054711583704813, 1e-9);
  EXPECT_NEAR(ser_direct(mod, GammaSnr(0.5, 3.0)).value, 0.12337585721442493, 1e-9);
  EXPECT_NEAR(ser_direct(mod, GammaSnr(4.5, 2.0)).value, 0.038276411885350521, 1e-9);
}

TEST(SerForms, IntegrationByPartsIdentityOnRandomLaws) {
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> shape(0.5, 20.0);
  std::uniform_real_distribution<double> log_mean(-1.0, 2.5);
  for (int trial = 0; trial < 15; ++trial) {
    const auto mod = PskModulation::with_order(2 << (trial % 4));
    const GammaSnr g(shape(rng), std::pow(10.0, log_mean(rng)));
    const HopDistribution law =
        trial % 3 == 0 ? make_power_of_gamma(g, 1 + trial % 4) : HopDistribution(g);
    const auto by_cdf = ser_from_cdf(mod, [&](double x) { return cdf(law, x); });
    const auto direct = ser_direct(mod, law);
    EXPECT_NEAR(by_cdf.value, direct.value, 1e-6) << trial;
    EXPECT_GE(by_cdf.value, 0.0);
    EXPECT_LE(by_cdf.value, mod.a() / 2.0);
  }
}

TEST(SerFromCdf, LargerBNeverIncreasesSer) {
  const GammaSnr law(2.0, 4.0);
  const auto cdf_fn = [&](double g) { return law.cdf(g); };
  double prev = 0.0;
  for (int order : {64, 32, 16, 8, 4}) {
    const double ser = ser_from_cdf(PskModulation::with_order(order), cdf_fn).value;
    if (prev > 0.0) {
      EXPECT_LE(ser, prev);
    }
    prev = ser;
  }
}

TEST(SerEndToEnd, MonotoneInMeansAndAntennas) {
  const auto mod = PskModulation::with_order(8);
  auto ser_of = [&](const LinkScenario& s) {
    return ser_end_to_end(mod, effective_distribution(s.hop1), effective_distribution(s.hop2),
                          s.combiner)
        .value;
  };
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> mean(0.5, 20.0);
  std::uniform_int_distribution<int> antennas(1, 3);
  for (int trial = 0; trial < 6; ++trial) {
    const int relay = antennas(rng);
    LinkScenario base{hop(1, relay, 1.0, mean(rng), Scheme::Mrc),
                      hop(relay, 1, 1.0, mean(rng), Scheme::Stbc), Combiner::Exact};
    const double s0 = ser_of(base);

    LinkScenario better_mean = base;
    better_mean.hop1.mean_branch_snr *= 1.5;
    EXPECT_LE(ser_of(better_mean), s0);

    better_mean = base;
    better_mean.hop2.mean_branch_snr *= 1.5;
    EXPECT_LE(ser_of(better_mean), s0);

    LinkScenario more_relay = base;
    more_relay.hop1.n_rx += 1;
    more_relay.hop2.n_tx += 1;
    EXPECT_LE(ser_of(more_relay), s0);
  }
}

TEST(SerSweep, Fig5ShapeAndOrdering) {
  const auto grid = db_grid(0.0, 20.0, 2.0);
  const PskModulation mods[] = {PskModulation::bpsk(), PskModulation::with_order(8),
                                PskModulation::with_order(16)};
  const auto curves = ser_sweep(fig5_scenario(), mods, grid, 3.0);
  ASSERT_EQ(curves.size(), 3u);
  for (const auto& curve : curves) {
    ASSERT_TRUE(curve.all_converged());
    for (std::size_t i = 1; i < curve.rows.size(); ++i) {
      EXPECT_LT(curve.rows[i].analytical, curve.rows[i - 1].analytical);
    }
    for (const auto& row : curve.rows) {
      EXPECT_GT(row.analytical, 0.0);
      EXPECT_LT(row.analytical, curve.modulation.a() / 2.0);
      EXPECT_FALSE(row.mc.has_value());
    }
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_LT(curves[0].rows[i].analytical, curves[1].rows[i].analytical);
    EXPECT_LT(curves[1].rows[i].analytical, curves[2].rows[i].analytical);
  }
}

TEST(SerSweep, SaturatesAtHopOneSer) {
  const auto mod = PskModulation::bpsk();
  const double grid[] = {40.0, 50.0};
  const auto curve = ser_sweep(fig5_scenario(), mod, grid, 3.0);
  const LinkScenario s = with_hop_snrs(fig5_scenario(), 3.0, 0.0);
  const double hop1_only = ser_direct(mod, effective_distribution(s.hop1)).value;
  EXPECT_NEAR(curve.rows.back().analytical, hop1_only, 1e-3 * hop1_only + 1e-9);
  EXPECT_GT(curve.rows.back().analytical, hop1_only);
}

TEST(SerSweep, MonteCarloColumnsAreThreadInvariant) {
  const auto mod = PskModulation::with_order(8);
  const double grid[] = {0.0, 5.0, 10.0};
  SweepOptions options;
  options.mc_seed = 11;
  options.mc_samples = 50'000;
  const auto one = ser_sweep(fig5_scenario(), mod, grid, 2.0, options);
  options.threads = 3;
  const auto three = ser_sweep(fig5_scenario(), mod, grid, 2.0, options);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(one.rows[i].analytical, three.rows[i].analytical);
    EXPECT_EQ(*one.rows[i].mc, *three.rows[i].mc);
    EXPECT_EQ(*one.rows[i].mc_halfwidth, *three.rows[i].mc_halfwidth);
    EXPECT_NEAR(*one.rows[i].mc, one.rows[i].analytical, 3.0 * *one.rows[i].mc_halfwidth);
  }
}

TEST(SerSweep, UnattainableToleranceMarksPoints) {
  const auto mod = PskModulation::bpsk();
  const double grid[] = {5.0};
  SweepOptions options;
  options.tol = 1e-30;
  const auto curve = ser_sweep(fig5_scenario(), mod, grid, 3.0, options);
  EXPECT_FALSE(curve.all_converged());
  EXPECT_EQ(curve.failed_points_db(), std::vector<double>{5.0});
  EXPECT_GT(curve.rows[0].analytical, 0.0);
}

TEST(SerSweep, ValidatesInputs) {
  const auto mod = PskModulation::bpsk();
  const double unsorted[] = {3.0, 1.0};
  EXPECT_THROW(ser_sweep(fig5_scenario(), mod, unsorted, 3.0), std::invalid_argument);
  EXPECT_THROW(ser_sweep(fig5_scenario(), mod, std::span<const double>{}, 3.0),
               std::invalid_argument);
  LinkScenario broken = fig5_scenario();
  broken.hop2.n_tx = 2;
  const double grid[] = {1.0};
  EXPECT_THROW(ser_sweep(broken, mod, grid, 3.0), std::invalid_argument);
}

}  // namespace
}  // namespace dualhop
