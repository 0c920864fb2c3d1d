// draws.hpp - seeded random parameter generators for property tests
#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace licore::testing {

class Draws {
public:
    explicit Draws(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

    // Uniform in log10 between lo and hi (both > 0).
    double log_uniform(double lo, double hi) { return std::pow(10.0, uniform(std::log10(lo), std::log10(hi))); }

    double sign() { return std::bernoulli_distribution(0.5)(engine_) ? 1.0 : -1.0; }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

inline double rel_err(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

} // namespace licore::testing
