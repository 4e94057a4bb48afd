// OpenMP kernels against the serial reference loops.
// Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <complex>
#include <random>
#include <vector>

#include "inls/kernels.hpp"

namespace k = inls::kernels;
using k::cplx;

namespace {

struct Data {
  std::vector<cplx> u, m;
  std::vector<double> w;

  explicit Data(std::size_t n) : u(n), m(n), w(n) {
    std::mt19937_64 rng(42);
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> pos(0.0, 2.0);
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = {g(rng), g(rng)};
      m[i] = std::polar(1.0, g(rng));
      w[i] = pos(rng);
    }
  }
};

template <auto Fn>
void reduce(benchmark::State& state) {
  const Data d(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Fn(d.u, d.w, 3.0));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Fn>
void norm(benchmark::State& state) {
  const Data d(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Fn(d.u, d.w));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Fn>
void nonlinear_phase(benchmark::State& state) {
  Data d(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    Fn(d.u, d.w, 1e-3, 3.0);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Fn>
void linear_phase(benchmark::State& state) {
  Data d(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    Fn(d.u, d.w, 1e-3);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Fn>
void mul(benchmark::State& state) {
  Data d(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    Fn(d.u, d.m);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

#define INLS_PAIR(kind, name)                                                            \
  BENCHMARK(kind<k::name>)->Name("omp/" #name)->RangeMultiplier(8)->Range(1 << 12, 1 << 21); \
  BENCHMARK(kind<k::serial::name>)->Name("serial/" #name)->RangeMultiplier(8)->Range(1 << 12, 1 << 21)

INLS_PAIR(norm, weighted_norm_sq);
INLS_PAIR(reduce, weighted_power_sum);
INLS_PAIR(reduce, max_weighted_power);
INLS_PAIR(nonlinear_phase, apply_nonlinear_phase);
INLS_PAIR(linear_phase, apply_phase);
INLS_PAIR(mul, multiply);

BENCHMARK_MAIN();
