#include "licore/batch.hpp"

#include <exception>

#include <omp.h>

#include "licore/floquet.hpp"

namespace licore::batch {

void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body, Execution mode, int jobs) {
    if (mode == Execution::Serial) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    const auto count = static_cast<long long>(n);
    const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
    for (long long i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
}

namespace {

template <class Kernel>
std::vector<PointResult> run(std::size_t n, Kernel kernel, Execution mode, int jobs) {
    std::vector<PointResult> out(n);
    for_each_index(
        n,
        [&](std::size_t i) {
            try {
                out[i].flow = kernel(i);
            } catch (const std::exception& e) {
                out[i].ok = false;
                out[i].error = e.what();
            }
        },
        mode, jobs);
    return out;
}

} // namespace

std::vector<PointResult> floquet_flows(std::span<const AtomDriveConfig> configs, const BathSpectrum& hot,
                                       const BathSpectrum& cold, Execution mode, int jobs) {
    return run(
        configs.size(), [&](std::size_t i) { return solve_floquet(configs[i], hot, cold).flow; }, mode, jobs);
}

std::vector<PointResult> weak_flows(std::span<const AtomDriveConfig> configs, const BathSpectrum& hot,
                                    Execution mode, int jobs) {
    return run(
        configs.size(), [&](std::size_t i) { return energy_flow_weak(configs[i], hot); }, mode, jobs);
}

int max_threads() { return omp_get_max_threads(); }

} // namespace licore::batch
