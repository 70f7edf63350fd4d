#include <benchmark/benchmark.h>

#include <netotc/generators.hpp>
#include <netotc/otc.hpp>

namespace {

using namespace netotc;

Network connected_sbm(Index block, std::uint64_t seed) {
  for (;; ++seed) {
    Network g = gen_sbm({block, block, block}, 0.7, 0.1, seed).network;
    if (is_strongly_connected(g)) return g;
  }
}

void BM_ExactOtc(benchmark::State& state) {
  const Network g1 = connected_sbm(state.range(0), 1);
  const Network g2 = connected_sbm(state.range(0), 2);
  const CostMatrix c = cost_degree(g1, g2, true);
  for (auto _ : state) benchmark::DoNotOptimize(solve_exact_otc(g1, g2, c).rho);
  state.counters["states"] = static_cast<double>(g1.size() * g2.size());
}
BENCHMARK(BM_ExactOtc)->Arg(2)->Arg(4)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_EntropicOtc(benchmark::State& state) {
  const Network g1 = connected_sbm(state.range(0), 1);
  const Network g2 = connected_sbm(state.range(0), 2);
  const CostMatrix c = cost_degree(g1, g2, true);
  for (auto _ : state) benchmark::DoNotOptimize(solve_entropic_otc(g1, g2, c).rho);
  state.counters["states"] = static_cast<double>(g1.size() * g2.size());
}
BENCHMARK(BM_EntropicOtc)->Arg(2)->Arg(4)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_LpOracle(benchmark::State& state) {
  const auto stick = static_cast<Index>(state.range(0) - 3);
  const Network g1 = gen_lollipop({3, 3}, {stick, stick}, 0.0, 1);
  const CostMatrix c = cost_degree(g1, g1, false);
  for (auto _ : state) benchmark::DoNotOptimize(solve_lp_oracle(g1, g1, c).rho);
}
BENCHMARK(BM_LpOracle)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace
