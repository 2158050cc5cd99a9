#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "fchs/grid.hpp"
#include "fchs/kernels.hpp"
#include "fchs/scenarios.hpp"

namespace {

using fchs::Complex;
namespace ks = fchs::kernels::serial;
namespace kp = fchs::kernels::parallel;

std::vector<Complex> random_complex(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<Complex> out(n);
  for (auto& z : out) z = {normal(rng), normal(rng)};
  return out;
}

std::vector<double> random_real(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<double> out(n);
  for (auto& x : out) x = uni(rng);
  return out;
}

template <auto Fn>
void BM_Scale(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto data = random_complex(n, 1);
  const auto factor = random_real(n, 2);
  for (auto _ : state) {
    Fn(data, factor);
    benchmark::DoNotOptimize(data.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}

template <auto Fn>
void BM_WeightedNorm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto data = random_complex(n, 3);
  const auto w = random_real(n, 4);
  for (auto _ : state) benchmark::DoNotOptimize(Fn(data, w));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}

template <auto Fn>
void BM_Leray(benchmark::State& state) {
  const fchs::GridSpec grid(3, static_cast<int>(state.range(0)));
  auto v = fchs::random_divfree(grid, 1.0, 5);
  std::vector<std::span<Complex>> comps;
  for (std::size_t c = 0; c < 3; ++c) comps.push_back(v[c]);
  std::vector<std::span<const double>> kvec;
  for (int a = 0; a < 3; ++a) kvec.push_back(grid.wavenumbers(a));
  for (auto _ : state) {
    Fn(comps, kvec, grid.wavenumber_squared());
    benchmark::DoNotOptimize(v[0].data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.modes()));
}

template <auto Fn>
void BM_Gagliardo(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<double> coords;
  std::vector<double> values;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double x = -4.0 + 8.0 * i / n;
      const double y = -4.0 + 8.0 * j / n;
      coords.push_back(x);
      coords.push_back(y);
      values.push_back(std::exp(-(x * x + y * y)));
    }
  const fchs::kernels::PointCloud cloud{2, coords, values};
  for (auto _ : state) benchmark::DoNotOptimize(Fn(cloud, 0.5));
}

}  // namespace

BENCHMARK(BM_Scale<ks::scale>)->Arg(1 << 12)->Arg(1 << 18);
BENCHMARK(BM_Scale<kp::scale>)->Arg(1 << 12)->Arg(1 << 18);
BENCHMARK(BM_WeightedNorm<ks::weighted_norm2>)->Arg(1 << 12)->Arg(1 << 18);
BENCHMARK(BM_WeightedNorm<kp::weighted_norm2>)->Arg(1 << 12)->Arg(1 << 18);
BENCHMARK(BM_Leray<ks::leray_project>)->Arg(32)->Arg(64);
BENCHMARK(BM_Leray<kp::leray_project>)->Arg(32)->Arg(64);
BENCHMARK(BM_Gagliardo<ks::gagliardo_pair_sum>)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Gagliardo<kp::gagliardo_pair_sum>)->Arg(32)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
