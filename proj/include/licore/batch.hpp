// batch.hpp - grid evaluation of the per-point solvers
//
// Each kernel has an OpenMP implementation and a plain serial loop that is
// kept as the reference for tests and benchmarks. Results are written by grid
// index, so both produce identical output regardless of scheduling.

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "licore/atom.hpp"
#include "licore/rate_model.hpp"
#include "licore/spectra.hpp"

namespace licore::batch {

enum class Execution { Serial, Parallel };

// Runs body(i) for i in [0, n). jobs <= 0 leaves the OpenMP default.
void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body, Execution mode, int jobs = 0);

struct PointResult {
    EnergyFlowReport flow;
    bool ok = true;
    std::string error;
};

std::vector<PointResult> floquet_flows(std::span<const AtomDriveConfig> configs, const BathSpectrum& hot,
                                       const BathSpectrum& cold, Execution mode, int jobs = 0);

std::vector<PointResult> weak_flows(std::span<const AtomDriveConfig> configs, const BathSpectrum& hot,
                                    Execution mode, int jobs = 0);

int max_threads();

} // namespace licore::batch
