#include <cmath>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "rdf/kernels.hpp"
#include "rdf/perturbation.hpp"
#include "rdf/potentials.hpp"

namespace {

using rdf::kernels::cplx;

struct Problem {
  std::vector<double> ws, inner;
  std::vector<cplx> outer, out;
};

Problem make_problem(std::size_t n) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Problem p;
  p.ws.resize(n);
  p.inner.resize(n);
  p.outer.resize(n);
  p.out.resize(n);
  const double omega = 0.05;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = 1e-2 * std::exp(14.0 * double(i) / double(n));
    p.ws[i] = u(rng) * r * r * r;
    p.inner[i] = std::sin(omega * r) / (omega * r);
    p.outer[i] = cplx(std::cos(omega * r), std::sin(omega * r)) / r;
  }
  return p;
}

template <void (*Kernel)(std::span<const double>, std::span<const double>, std::span<const cplx>,
                         std::span<cplx>)>
void BM_green(benchmark::State &state) {
  Problem p = make_problem(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    Kernel(p.ws, p.inner, p.outer, p.out);
    benchmark::DoNotOptimize(p.out.data());
  }
  state.SetComplexityN(state.range(0));
  state.counters["threads"] = rdf::kernels::max_threads();
}

BENCHMARK(BM_green<rdf::kernels::green_sum_serial>)->Name("green_serial")->RangeMultiplier(2)->Range(500, 4000);
BENCHMARK(BM_green<rdf::kernels::green_sum_parallel>)->Name("green_parallel")->RangeMultiplier(2)->Range(500, 8000);
BENCHMARK(BM_green<rdf::kernels::green_sum_prefix>)->Name("green_prefix")->RangeMultiplier(2)->Range(500, 8000);

void BM_first_order_source(benchmark::State &state) {
  const rdf::PhysParams p{0.2, 1};
  const auto sol = rdf::solve_radial({1, -1, 1}, p);
  const auto set = rdf::build_eta_set();
  const auto map = rdf::build_s_map();
  for (auto _ : state) benchmark::DoNotOptimize(rdf::first_order_source(sol, p, set, map));
}
BENCHMARK(BM_first_order_source)->Unit(benchmark::kMillisecond);

void BM_solve_radial(benchmark::State &state) {
  const rdf::PhysParams p{0.2, 1};
  for (auto _ : state) benchmark::DoNotOptimize(rdf::solve_radial({2, -1, 1}, p));
}
BENCHMARK(BM_solve_radial)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
