#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "risfox/cascade.hpp"
#include "risfox/foxh.hpp"
#include "risfox/gamma.hpp"
#include "risfox/metrics.hpp"
#include "risfox/montecarlo.hpp"

using namespace risfox;

static void BM_LnGammaComplex(benchmark::State& st) {
  specfun::cplx z(2.5, -30.0);
  for (auto _ : st) {
    benchmark::DoNotOptimize(specfun::ln_gamma(z));
    z += specfun::cplx(0.0, 1e-3);
  }
}
BENCHMARK(BM_LnGammaComplex);

static void BM_FoxH11(benchmark::State& st) {
  specfun::FoxHParams p;
  p.m = 1;
  p.n = 1;
  p.upper = {{0.0, 1.0}};
  p.lower = {{0.0, 1.0}};
  for (auto _ : st) benchmark::DoNotOptimize(specfun::fox_h(p, 0.7));
}
BENCHMARK(BM_FoxH11);

static void BM_ElementCdf(benchmark::State& st) {
  const cascade::ElementConfig cfg;
  for (auto _ : st) benchmark::DoNotOptimize(cascade::zi_cdf(cfg, 0.01));
}
BENCHMARK(BM_ElementCdf)->Unit(benchmark::kMicrosecond);

// Exact sum CDF: an N-fold contour integral.
static void BM_ExactSumCdf(benchmark::State& st) {
  const std::vector<cascade::ElementConfig> cfgs(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(cascade::zris_exact(cfgs, 0.02 * st.range(0), cascade::Which::cdf));
}
BENCHMARK(BM_ExactSumCdf)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_BoundCdf(benchmark::State& st) {
  const std::vector<cascade::ElementConfig> cfgs(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(cascade::zris_bound(cfgs, 0.02 * st.range(0), cascade::Which::cdf));
}
BENCHMARK(BM_BoundCdf)->Arg(2)->Arg(10)->Arg(50)->Unit(benchmark::kMicrosecond);

static void BM_Outage(benchmark::State& st) {
  mc::ScenarioConfig sc;
  sc.N = 10;
  const auto cfgs = sc.element_configs();
  const auto s = sc.snr_config();
  for (auto _ : st) benchmark::DoNotOptimize(metrics::outage(s, cfgs, 1.0, metrics::OutageMethod::bound));
}
BENCHMARK(BM_Outage)->Unit(benchmark::kMicrosecond);

static void BM_Simulate(benchmark::State& st) {
  mc::ScenarioConfig sc;
  sc.N = static_cast<int>(st.range(0));
  mc::MCConfig m;
  m.trials = 100000;
  m.threads = 1;
  for (auto _ : st) benchmark::DoNotOptimize(mc::simulate(sc, m));
  st.SetItemsProcessed(st.iterations() * m.trials * sc.N);
}
BENCHMARK(BM_Simulate)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
