// atom.hpp - laser-driven two-level atom parameters

#pragma once

#include <cmath>

namespace licore {

// Two-level atom driven by a single laser. All frequencies are internal
// angular frequencies (rad/ps); laser_power is carried in watts for the
// cell-level bookkeeping only.
class AtomDriveConfig {
public:
    AtomDriveConfig(double omega0, double gamma, double g, double nu, double laser_power_watt = 0.0);

    // Convenience: build from the detuning instead of the laser frequency.
    static AtomDriveConfig from_detuning(double omega0, double gamma, double g, double delta,
                                         double laser_power_watt = 0.0);

    double omega0() const noexcept { return omega0_; }
    double gamma() const noexcept { return gamma_; }
    double g() const noexcept { return g_; }
    double nu() const noexcept { return nu_; }
    double laser_power_watt() const noexcept { return laser_power_; }

    // Signed detuning omega0 - nu; positive means red detuned.
    double detuning() const noexcept { return omega0_ - nu_; }
    // Dressed splitting sqrt(4 g^2 + detuning^2).
    double rabi() const noexcept { return std::hypot(2.0 * g_, detuning()); }
    // Omega - delta and Omega + delta without cancellation (4g^2 / (Omega +- delta)).
    double rabi_minus_detuning() const noexcept;
    double rabi_plus_detuning() const noexcept;

    AtomDriveConfig with_g(double g) const;
    AtomDriveConfig with_nu(double nu) const;

private:
    double omega0_;
    double gamma_;
    double g_;
    double nu_;
    double laser_power_;
};

struct DerivedParams {
    double delta;
    double rabi;
};

inline DerivedParams derived_params(const AtomDriveConfig& cfg) { return {cfg.detuning(), cfg.rabi()}; }

} // namespace licore
