#include <random>

#include <benchmark/benchmark.h>

#include <netotc/transport.hpp>

namespace {

using namespace netotc;

struct Instance {
  Eigen::VectorXd mu, nu;
  Eigen::MatrixXd cost;
};

Instance random_instance(Eigen::Index n) {
  std::mt19937_64 rng(n);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Instance in{Eigen::VectorXd(n), Eigen::VectorXd(n), Eigen::MatrixXd(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    in.mu(i) = unit(rng) + 0.1;
    in.nu(i) = unit(rng) + 0.1;
  }
  in.mu /= in.mu.sum();
  in.nu /= in.nu.sum();
  for (Eigen::Index i = 0; i < in.cost.size(); ++i) in.cost(i) = unit(rng);
  return in;
}

void BM_ExactTransport(benchmark::State& state) {
  const Instance in = random_instance(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ot_exact(in.mu, in.nu, in.cost).value);
}
BENCHMARK(BM_ExactTransport)->RangeMultiplier(2)->Range(4, 64);

void BM_Sinkhorn(benchmark::State& state) {
  const Instance in = random_instance(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ot_sinkhorn(in.mu, in.nu, in.cost, 100.0, 50).coupling.plan(0, 0));
}
BENCHMARK(BM_Sinkhorn)->RangeMultiplier(2)->Range(4, 64);

}  // namespace
