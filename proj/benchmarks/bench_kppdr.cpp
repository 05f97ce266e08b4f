#include <benchmark/benchmark.h>

#include <random>

#include "kppdr/chain.hpp"
#include "kppdr/linalg.hpp"
#include "kppdr/mixsim.hpp"
#include "kppdr/numsolve.hpp"
#include "kppdr/optimal.hpp"

namespace {

kppdr::SymmetricMatrix random_symmetric(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  kppdr::SymmetricMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      m.set(i, j, 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0);
  return m;
}

void BM_EigenvaluesSymmetric(benchmark::State& state) {
  const kppdr::SymmetricMatrix m = random_symmetric(static_cast<int>(state.range(0)), 99);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kppdr::eigenvalues_symmetric(m));
  }
}
BENCHMARK(BM_EigenvaluesSymmetric)->Arg(12)->Arg(24)->Arg(48)->Arg(96);

void BM_AssembleAndSlem(benchmark::State& state) {
  const kppdr::TopologySpec spec{kppdr::Family::Symmetric, static_cast<int>(state.range(0)), 4, {}};
  const kppdr::OrbitProbabilities probs = kppdr::optimal_probabilities(spec).probs;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kppdr::slem(kppdr::assemble(spec, probs)));
  }
}
BENCHMARK(BM_AssembleAndSlem)->Arg(4)->Arg(8)->Arg(12);

void BM_MinimizeSlem(benchmark::State& state) {
  const kppdr::TopologySpec spec{kppdr::Family::Symmetric, 4, 2, {}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(kppdr::minimize_slem(spec));
  }
}
BENCHMARK(BM_MinimizeSlem)->Unit(benchmark::kMillisecond);

void BM_Simulate(benchmark::State& state) {
  const kppdr::TopologySpec spec{kppdr::Family::SemiSymmetric, 6, 3, {}};
  const kppdr::TransitionMatrix p = kppdr::assemble(spec, kppdr::optimal_probabilities(spec).probs);
  kppdr::TrialConfig cfg;
  cfg.trials = static_cast<int>(state.range(0));
  cfg.iterations = 100;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kppdr::simulate(p, cfg));
  }
}
BENCHMARK(BM_Simulate)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
