#include <benchmark/benchmark.h>

#include <random>

#include "dimac/dirinfo.hpp"
#include "dimac/exponents.hpp"
#include "dimac/regions.hpp"
#include "dimac/simulate.hpp"

using namespace dimac;

namespace {

const FsMac& gilbert_elliott() {
  static const FsMac ch = gilbert_elliott_mac(0.3, 0.3, 0.0, 0.1);
  return ch;
}

InputPolicies uniform_inputs(const FsMac& ch, std::size_t n) {
  return InputPolicies::uniform(ch.in1(), ch.in2(), ch.out(), n);
}

}  // namespace

static void BM_CausalLaw(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(channel_causal_law(gilbert_elliott(), S0Mode::stationary(), n));
  }
}
BENCHMARK(BM_CausalLaw)->DenseRange(1, 6);

static void BM_InfoTriple(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto law = channel_causal_law(gilbert_elliott(), S0Mode::stationary(), n);
  const auto w = policy_weights(uniform_inputs(gilbert_elliott(), n), law.shape());
  for (auto _ : state) benchmark::DoNotOptimize(info_triple(w, law));
}
BENCHMARK(BM_InfoTriple)->DenseRange(1, 6);

static void BM_GallagerSum(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto law = channel_causal_law(gilbert_elliott(), S0Mode::given(0), n);
  const auto w = policy_weights(uniform_inputs(gilbert_elliott(), n), law.shape());
  for (auto _ : state) {
    for (ErrorType t : {ErrorType::One, ErrorType::Two, ErrorType::Three}) {
      benchmark::DoNotOptimize(gallager_log2_sum(t, 0.5, w, law));
    }
  }
}
BENCHMARK(BM_GallagerSum)->DenseRange(2, 8, 2);

static void BM_RegionUnionIid(benchmark::State& state) {
  RegionRequest req;
  req.n = 2;
  req.resolution = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(region_union(gilbert_elliott(), req));
}
BENCHMARK(BM_RegionUnionIid)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_MinkowskiSum(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<geom::Point> a, b;
  for (int k = 0; k < state.range(0); ++k) {
    a.push_back({u(rng), u(rng)});
    b.push_back({u(rng), u(rng)});
  }
  const auto ha = geom::convex_hull(a);
  const auto hb = geom::convex_hull(b);
  for (auto _ : state) benchmark::DoNotOptimize(geom::minkowski_sum(ha, hb));
}
BENCHMARK(BM_MinkowskiSum)->Range(16, 4096);

static void BM_EnsembleTrials(benchmark::State& state) {
  const FsMac bsc = additive_modq_mac(2, NoiseChain::bernoulli(0.1));
  SimConfig cfg;
  cfg.K = static_cast<std::size_t>(state.range(0));
  cfg.M1 = 4;
  cfg.M2 = 2;
  cfg.trials = 200;
  for (auto _ : state) benchmark::DoNotOptimize(run_ensemble(bsc, uniform_inputs(bsc, 1), cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.trials));
}
BENCHMARK(BM_EnsembleTrials)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
