// bench_batch.cpp - serial reference against the OpenMP kernels

#include <benchmark/benchmark.h>

#include <vector>

#include "licore/batch.hpp"
#include "licore/cell.hpp"
#include "licore/units.hpp"

using namespace licore;

namespace {

const double omega0 = units::freq_from_thz(377.0);
const double gamma_rb = units::freq_from_thz(5.75e-6);

std::vector<AtomDriveConfig> detuning_sweep(std::size_t n) {
    std::vector<AtomDriveConfig> out;
    for (std::size_t i = 0; i < n; ++i) {
        const double delta = units::freq_from_thz(-25.0 + 50.0 * (static_cast<double>(i) + 0.5) / n);
        out.push_back(AtomDriveConfig::from_detuning(omega0, gamma_rb, units::freq_from_thz(0.01), delta));
    }
    return out;
}

batch::Execution mode(const benchmark::State& state) {
    return state.range(1) ? batch::Execution::Parallel : batch::Execution::Serial;
}

void BM_FloquetFlows(benchmark::State& state) {
    const auto configs = detuning_sweep(static_cast<std::size_t>(state.range(0)));
    const BathSpectrum hot = FlatHotSpectrum(units::freq_from_thz(0.05), units::temp_from_kelvin(500.0));
    const BathSpectrum cold = CubicColdSpectrum(gamma_rb, omega0, 0.0);
    for (auto _ : state) benchmark::DoNotOptimize(batch::floquet_flows(configs, hot, cold, mode(state)));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_DetuningScan(benchmark::State& state) {
    const auto cell = CellConfig::with_absorption_length(10.0, 9.0, 1e12, 1.0, 500.0);
    const auto tmpl = AtomDriveConfig(omega0, gamma_rb, units::freq_from_thz(5e-4), omega0);
    const BathSpectrum hot = FlatHotSpectrum(units::freq_from_thz(0.05), units::temp_from_kelvin(500.0));
    std::vector<double> deltas;
    const auto n = static_cast<std::size_t>(state.range(0));
    for (std::size_t i = 0; i < n; ++i) deltas.push_back(units::freq_from_thz(-25.0 + 50.0 * (i + 0.5) / n));
    ScanOptions opts;
    opts.execution = mode(state);
    for (auto _ : state) benchmark::DoNotOptimize(detuning_scan(cell, tmpl, hot, deltas, nullptr, opts));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

} // namespace

// second argument: 0 serial reference, 1 OpenMP
BENCHMARK(BM_FloquetFlows)->ArgsProduct({{1000, 100000}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DetuningScan)->ArgsProduct({{200, 2000}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
