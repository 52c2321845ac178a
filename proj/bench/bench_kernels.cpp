#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "negw/filters.hpp"
#include "negw/kernels.hpp"
#include "negw/weights.hpp"

using namespace negw;

namespace {

Signal noisy_steps(std::size_t n) {
  std::mt19937_64 rng(n);
  std::normal_distribution<double> noise(0.0, 0.05);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = (i * 4 / n) % 2 == 0 ? 0.0 : 0.2;
  for (double& v : y) v += noise(rng);
  return Signal(std::move(y));
}

struct Fixture {
  explicit Fixture(std::size_t n)
      : guide(noisy_steps(n)), w(bilateral_weights(guide, {})), d(n), v(guide.vector()), out(n) {
    kernels::serial::row_sums(w, d);
  }
  Signal guide;
  WeightMatrix w;
  std::vector<double> d, v, out;
};

template <bool Parallel>
void BM_LaplacianApply(benchmark::State& state) {
  Fixture f(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    if constexpr (Parallel) kernels::parallel::laplacian_apply(f.w, f.v, f.out);
    else kernels::serial::laplacian_apply(f.w, f.v, f.out);
    benchmark::DoNotOptimize(f.out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_FilterApply(benchmark::State& state) {
  Fixture f(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    if constexpr (Parallel) kernels::parallel::filter_apply(f.w, f.d, f.v, f.out);
    else kernels::serial::filter_apply(f.w, f.d, f.v, f.out);
    benchmark::DoNotOptimize(f.out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_BilateralFill(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Signal guide = noisy_steps(n);
  const WeightParams params{};
  std::vector<std::vector<double>> bands{std::vector<double>(n), std::vector<double>(n - 1)};
  for (auto _ : state) {
    if constexpr (Parallel) kernels::parallel::bilateral_fill(guide.values(), params, bands);
    else kernels::serial::bilateral_fill(guide.values(), params, bands);
    benchmark::DoNotOptimize(bands[1].data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_CgGuidedFilter(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Signal guide = noisy_steps(n);
  const GraphLaplacian gl = build_laplacian(bilateral_weights(guide, {}));
  for (auto _ : state) benchmark::DoNotOptimize(cg_guided_filter(gl, guide, 15));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 15);
}

constexpr std::int64_t kSmall = 1 << 10;
constexpr std::int64_t kLarge = 1 << 22;

}  // namespace

BENCHMARK(BM_LaplacianApply<false>)->RangeMultiplier(16)->Range(kSmall, kLarge);
BENCHMARK(BM_LaplacianApply<true>)->RangeMultiplier(16)->Range(kSmall, kLarge)->UseRealTime();
BENCHMARK(BM_FilterApply<false>)->RangeMultiplier(16)->Range(kSmall, kLarge);
BENCHMARK(BM_FilterApply<true>)->RangeMultiplier(16)->Range(kSmall, kLarge)->UseRealTime();
BENCHMARK(BM_BilateralFill<false>)->RangeMultiplier(16)->Range(kSmall, kLarge);
BENCHMARK(BM_BilateralFill<true>)->RangeMultiplier(16)->Range(kSmall, kLarge)->UseRealTime();
BENCHMARK(BM_CgGuidedFilter)->RangeMultiplier(16)->Range(kSmall, kLarge)->UseRealTime();

BENCHMARK_MAIN();
