// Serial vs OpenMP dense rank kernels.

#include <benchmark/benchmark.h>

#include <random>

#include "gradlab/kernels.hpp"

namespace {

using namespace gradlab::kernels;

DenseModP random_mod_p(std::size_t n, std::uint32_t p) {
  std::mt19937 rng(static_cast<unsigned>(n));
  DenseModP m{n, n, std::vector<std::uint32_t>(n * n)};
  for (auto& x : m.data) x = static_cast<std::uint32_t>(rng() % p);
  return m;
}

DenseZ random_z(std::size_t n) {
  std::mt19937 rng(static_cast<unsigned>(n));
  DenseZ m{n, n, {}};
  for (std::size_t i = 0; i < n * n; ++i) m.data.emplace_back(static_cast<long>(rng() % 7) - 3);
  return m;
}

constexpr std::uint32_t kPrime = 65521;

void BM_RankModPSerial(benchmark::State& state) {
  const auto base = random_mod_p(static_cast<std::size_t>(state.range(0)), kPrime);
  for (auto _ : state) {
    auto m = base;
    benchmark::DoNotOptimize(serial::rank_mod_p(m, kPrime));
  }
}

void BM_RankModPOmp(benchmark::State& state) {
  const auto base = random_mod_p(static_cast<std::size_t>(state.range(0)), kPrime);
  for (auto _ : state) {
    auto m = base;
    benchmark::DoNotOptimize(omp::rank_mod_p(m, kPrime));
  }
}

void BM_BareissSerial(benchmark::State& state) {
  const auto base = random_z(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto m = base;
    benchmark::DoNotOptimize(serial::rank_bareiss(m));
  }
}

void BM_BareissOmp(benchmark::State& state) {
  const auto base = random_z(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto m = base;
    benchmark::DoNotOptimize(omp::rank_bareiss(m));
  }
}

}  // namespace

BENCHMARK(BM_RankModPSerial)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RankModPOmp)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BareissSerial)->Arg(32)->Arg(64)->Arg(96)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BareissOmp)->Arg(32)->Arg(64)->Arg(96)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
