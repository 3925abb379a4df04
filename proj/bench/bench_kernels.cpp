// Serial reference kernels versus their OpenMP counterparts, plus candidate
// generation with and without concurrent trajectories.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "seedsel/degradation.hpp"
#include "seedsel/diffusion.hpp"
#include "seedsel/kernels.hpp"
#include "seedsel/selection.hpp"

using namespace seedsel;

namespace {

Image random_image(std::mt19937_64& gen, int size) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Image img(size, size);
  for (double& v : img.values()) v = u(gen);
  return img;
}

std::vector<Image> reference_set(int count, int size) {
  std::mt19937_64 gen(1);
  std::vector<Image> refs;
  for (int i = 0; i < count; ++i) refs.push_back(random_image(gen, size));
  return refs;
}

void BM_Distances(benchmark::State& state, Exec exec) {
  const auto refs = reference_set(static_cast<int>(state.range(0)), 32);
  std::mt19937_64 gen(2);
  const Image x = random_image(gen, 32);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::scaled_distances(x, refs, 0.7, exec));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_WeightedSum(benchmark::State& state, Exec exec) {
  const auto refs = reference_set(static_cast<int>(state.range(0)), 32);
  const std::vector<double> weights(refs.size(), 1.0 / static_cast<double>(refs.size()));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::weighted_sum(refs, weights, exec));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Candidates(benchmark::State& state, Exec exec) {
  const auto refs = reference_set(64, 32);
  const DenoiserSpec denoiser = DenoiserSpec::empirical(refs);
  const NoiseSchedule sched = build_schedule(20, 1e-4, 0.2);
  std::mt19937_64 gen(3);
  const Image truth = random_image(gen, 32);
  const DegradationConfig op{1.0, 0.3, 0};
  const GuidanceConfig guidance{1.0, degrade(truth, op), op};
  const SamplerConfig sampler{&sched, &denoiser, &guidance, 0.0, Exec::serial};
  SelectionConfig cfg;
  cfg.num_candidates = 5;
  cfg.truncation_step = 10;
  for (auto _ : state) {
    benchmark::DoNotOptimize(generate_candidates(truth, cfg, sampler, exec));
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_Distances, serial, Exec::serial)->Arg(64)->Arg(512);
BENCHMARK_CAPTURE(BM_Distances, omp, Exec::parallel)->Arg(64)->Arg(512);
BENCHMARK_CAPTURE(BM_WeightedSum, serial, Exec::serial)->Arg(64)->Arg(512);
BENCHMARK_CAPTURE(BM_WeightedSum, omp, Exec::parallel)->Arg(64)->Arg(512);
BENCHMARK_CAPTURE(BM_Candidates, serial, Exec::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Candidates, omp, Exec::parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
