// Serial vs OpenMP timings for the hot spectral loops.
//
//   ./bench_kernels --benchmark_filter=Trapezoid

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "gwdk/bar.hpp"
#include "gwdk/gw_field.hpp"
#include "gwdk/ifo.hpp"

namespace {

using gwdk::Execution;

constexpr double kTwoPi = 6.283185307179586;

gwdk::IfoParams aligo() {
  return gwdk::IfoParams::make(kTwoPi * 400.0, kTwoPi * 2.82e14, 4000.0, 40.0, kTwoPi * 1.0,
                               kTwoPi * 1e-6, 1.0e6, std::nullopt);
}

gwdk::BarParams niobe() {
  return gwdk::BarParams::make(1000.0, 3.0, std::nullopt, kTwoPi * 1000.0, kTwoPi * 1e-5,
                               kTwoPi * 1000.0, kTwoPi * 100.0);
}

Execution mode(const benchmark::State& state) {
  return state.range(1) == 0 ? Execution::serial : Execution::parallel;
}

void Trapezoid(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = static_cast<double>(i) * 1e-3;
    y[i] = std::exp(-x[i]);
  }
  const auto exec = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(gwdk::kernels::trapezoid(exec, x, y));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

void IfoBudget(benchmark::State& state) {
  const auto p = aligo();
  const auto grid = gwdk::FrequencyGrid::symmetric_uniform(kTwoPi * 5000.0,
                                                           static_cast<std::size_t>(state.range(0)));
  const double w0 = kTwoPi * 60.0;
  const auto s_hh = gwdk::strain_psd(
      gwdk::CoherentState(w0, gwdk::Envelope::gaussian(w0, 1.0, 1e30), 1e49), grid);
  const auto exec = mode(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gwdk::ifo_output_spectra(p, s_hh, {}, exec));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.size()));
}

void BarSpectrum(benchmark::State& state) {
  const auto p = niobe();
  const auto grid = gwdk::FrequencyGrid::symmetric_lorentzian(
      p.omega_m, 0.5 * p.gamma_m, static_cast<std::size_t>(state.range(0)));
  const auto s_hh = gwdk::strain_psd(gwdk::VacuumState{}, grid);
  const auto exec = mode(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gwdk::bar_position_spectrum(p, s_hh, p.omega_m, exec));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.size()));
}

}  // namespace

BENCHMARK(Trapezoid)->ArgsProduct({{1 << 12, 1 << 16, 1 << 20, 1 << 23}, {0, 1}});
BENCHMARK(IfoBudget)->ArgsProduct({{1 << 10, 1 << 14, 1 << 18}, {0, 1}});
BENCHMARK(BarSpectrum)->ArgsProduct({{1 << 10, 1 << 14, 1 << 18}, {0, 1}});

BENCHMARK_MAIN();
