#include <random>

#include <benchmark/benchmark.h>

#include "chebcap/dense.hpp"

using namespace chebcap;

namespace {

IMat random_imat(int n, unsigned seed) {
  std::mt19937_64 g(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0), w(0.0, 1e-8);
  IMat m(n, n);
  for (auto& x : m.data) {
    const double c = d(g), r = w(g);
    x = Interval(c - r, c + r);
  }
  return m;
}

CIMat random_cimat(int n, unsigned seed) {
  CIMat m(n, n);
  m.re = random_imat(n, seed);
  m.im = random_imat(n, seed + 1);
  return m;
}

void BM_imat_mul_serial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const IMat a = random_imat(n, 1), b = random_imat(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(imat_mul_serial(a, b));
}

void BM_imat_mul_parallel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const IMat a = random_imat(n, 1), b = random_imat(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(imat_mul(a, b));
  state.counters["threads"] = worker_threads();
}

void BM_cimat_mul_serial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CIMat a = random_cimat(n, 3), b = random_cimat(n, 5);
  for (auto _ : state) benchmark::DoNotOptimize(cimat_mul_serial(a, b));
}

void BM_cimat_mul_parallel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CIMat a = random_cimat(n, 3), b = random_cimat(n, 5);
  for (auto _ : state) benchmark::DoNotOptimize(cimat_mul(a, b));
  state.counters["threads"] = worker_threads();
}

}  // namespace

BENCHMARK(BM_imat_mul_serial)->Arg(64)->Arg(128)->Arg(201)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_imat_mul_parallel)->Arg(64)->Arg(128)->Arg(201)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_cimat_mul_serial)->Arg(64)->Arg(128)->Arg(201)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_cimat_mul_parallel)->Arg(64)->Arg(128)->Arg(201)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
