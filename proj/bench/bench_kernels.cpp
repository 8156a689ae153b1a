// Serial reference against the OpenMP kernels.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "airywell/airy.hpp"
#include "airywell/kernels.hpp"

using namespace airywell;

namespace {

std::vector<double> box_grid(double z_c, int points)
{
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i) g[i] = z_c * (i + 0.5) / points;
  return g;
}

std::vector<double> some_coeffs(int n)
{
  std::vector<double> c(n);
  for (int m = 0; m < n; ++m) c[m] = 1.0 / (1.0 + m * m);
  return c;
}

template <Matrix (*Assemble)(const Potential&, double, int)>
void bm_hamiltonian(benchmark::State& state)
{
  const auto pot = Potential::dwp(3.0);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Assemble(pot, 30.0, n));
  state.SetComplexityN(n);
}

template <std::vector<double> (*Expand)(std::span<const double>, double, std::span<const double>)>
void bm_expand(benchmark::State& state)
{
  const auto coeffs = some_coeffs(200);
  const auto grid = box_grid(30.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Expand(coeffs, 30.0, grid));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <std::vector<double> (*Sample)(const std::function<double(double)>&, std::span<const double>)>
void bm_sample_airy(benchmark::State& state)
{
  std::vector<double> grid(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = -20.0 + 25.0 * i / grid.size();
  const std::function<double(double)> f = [](double x) { return airy::airy_eval(x).ai; };
  for (auto _ : state) benchmark::DoNotOptimize(Sample(f, grid));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(bm_hamiltonian<kernels::serial::assemble_hamiltonian>)->Name("hamiltonian/serial")->Arg(100)->Arg(200)->Arg(400);
BENCHMARK(bm_hamiltonian<kernels::omp::assemble_hamiltonian>)->Name("hamiltonian/omp")->Arg(100)->Arg(200)->Arg(400)->UseRealTime();
BENCHMARK(bm_expand<kernels::serial::expand_basis>)->Name("expand_basis/serial")->Arg(801)->Arg(8001);
BENCHMARK(bm_expand<kernels::omp::expand_basis>)->Name("expand_basis/omp")->Arg(801)->Arg(8001)->UseRealTime();
BENCHMARK(bm_sample_airy<kernels::serial::sample>)->Name("sample_airy/serial")->Arg(10000);
BENCHMARK(bm_sample_airy<kernels::omp::sample>)->Name("sample_airy/omp")->Arg(10000)->UseRealTime();

BENCHMARK_MAIN();
