// spectra.hpp - bath coupling spectra G(omega) obeying the KMS relation
//
// Every spectrum is defined for all real omega. Positive omega is emission
// into the bath; negative omega is absorption from it and is fixed by
// G(-w) = exp(-w/T) G(w).

#pragma once

#include <filesystem>
#include <span>
#include <variant>
#include <vector>

namespace licore {

// Flat hot-bath ansatz: G(w) = G0 for w >= 0.
class FlatHotSpectrum {
public:
    FlatHotSpectrum(double plateau, double temperature);

    double operator()(double omega) const noexcept;
    double temperature() const noexcept { return temperature_; }
    double plateau() const noexcept { return plateau_; }

private:
    double plateau_;
    double temperature_;
};

// Radiative vacuum: G(w) = gamma (w/omega0)^3 for w > 0. T = 0 is exact.
class CubicColdSpectrum {
public:
    CubicColdSpectrum(double gamma, double omega0, double temperature = 0.0);

    double operator()(double omega) const noexcept;
    double temperature() const noexcept { return temperature_; }
    double gamma() const noexcept { return gamma_; }
    double omega0() const noexcept { return omega0_; }

private:
    double gamma_;
    double omega0_;
    double temperature_;
};

// Piecewise-linear table over strictly increasing omega, clamped outside.
// Construction rejects tables that violate KMS by more than kms_tolerance.
class TabulatedSpectrum {
public:
    struct Node {
        double omega;
        double value;
    };

    TabulatedSpectrum(std::vector<Node> nodes, double temperature, double kms_tolerance = 1e-6);

    // Skips the KMS screen; used to build deliberately broken tables in tests.
    static TabulatedSpectrum unchecked(std::vector<Node> nodes, double temperature);

    double operator()(double omega) const noexcept;
    double temperature() const noexcept { return temperature_; }
    const std::vector<Node>& nodes() const noexcept { return nodes_; }

    // Positive table abscissae whose mirror image is also inside the table.
    std::vector<double> mirrored_grid() const;

private:
    TabulatedSpectrum(std::vector<Node> nodes, double temperature, bool);

    std::vector<Node> nodes_;
    double temperature_;
};

using BathSpectrum = std::variant<FlatHotSpectrum, CubicColdSpectrum, TabulatedSpectrum>;

double evaluate(const BathSpectrum& spectrum, double omega);
double temperature(const BathSpectrum& spectrum);

// exp(-w/T), exactly 0 at T = 0 for w > 0.
double boltzmann_weight(double omega, double temperature) noexcept;

// max over the grid of |G(-w) - exp(-w/T) G(w)| / max(exp(-w/T) G(w), floor).
double kms_check(const BathSpectrum& spectrum, std::span<const double> positive_omegas);

// Reads `omega_thz,g_rate` (both columns in THz, rates as ordinary-frequency
// equivalents) and returns a KMS-screened table in internal units.
TabulatedSpectrum load_spectrum_csv(const std::filesystem::path& path, double temperature,
                                    double kms_tolerance = 1e-6);

} // namespace licore
