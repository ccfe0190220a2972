#include <benchmark/benchmark.h>

#include "dualhop/dualhop.hpp"

namespace {

using namespace dualhop;

void BM_RegularizedLowerGamma(benchmark::State& state) {
  const double k = static_cast<double>(state.range(0));
  double x = 0.0;
  for (auto _ : state) {
    x = x > 3.0 * k ? 0.01 : x + 0.37;
    benchmark::DoNotOptimize(numerics::regularized_lower_gamma(k, x));
  }
}
BENCHMARK(BM_RegularizedLowerGamma)->Arg(1)->Arg(9)->Arg(36);

LinkScenario mimo(int n) {
  LinkScenario s;
  s.hop1 = HopConfig{n, n, 1.0, db_to_linear(3.0), Scheme::StbcMrc};
  s.hop2 = HopConfig{n, n, 1.0, db_to_linear(10.0), Scheme::StbcMrc};
  return s;
}

void BM_EndToEndCdf(benchmark::State& state) {
  const auto s = mimo(static_cast<int>(state.range(0)));
  const auto d1 = effective_distribution(s.hop1);
  const auto d2 = effective_distribution(s.hop2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(end_to_end_cdf(d1, d2, 3.0, s.combiner, 1e-8).value);
  }
}
BENCHMARK(BM_EndToEndCdf)->Arg(1)->Arg(3)->Arg(4);

void BM_EndToEndCdfTas(benchmark::State& state) {
  LinkScenario s = mimo(3);
  s.hop2.scheme = Scheme::TasMrc;
  const auto d1 = effective_distribution(s.hop1);
  const auto d2 = effective_distribution(s.hop2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(end_to_end_cdf(d1, d2, 3.0, s.combiner, 1e-8).value);
  }
}
BENCHMARK(BM_EndToEndCdfTas);

void BM_SerEndToEnd(benchmark::State& state) {
  const auto s = mimo(3);
  const auto d1 = effective_distribution(s.hop1);
  const auto d2 = effective_distribution(s.hop2);
  const auto mod = PskModulation::with_order(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ser_end_to_end(mod, d1, d2, s.combiner, 1e-7).value);
  }
}
BENCHMARK(BM_SerEndToEnd)->Arg(2)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_SimulateHop(benchmark::State& state) {
  const HopConfig hop{3, 3, static_cast<double>(state.range(0)) / 2.0, 2.0, Scheme::StbcMrc};
  const McRun run{7, 100'000, 1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_hop(hop, run).data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(run.n_samples));
}
BENCHMARK(BM_SimulateHop)->Arg(1)->Arg(2)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
