#include "licore/atom.hpp"

#include <cmath>

#include "licore/errors.hpp"

namespace licore {

AtomDriveConfig::AtomDriveConfig(double omega0, double gamma, double g, double nu, double laser_power_watt)
    : omega0_(omega0), gamma_(gamma), g_(g), nu_(nu), laser_power_(laser_power_watt) {
    if (!(omega0 > 0.0) || !std::isfinite(omega0)) throw InvalidInput("atom: omega0 must be positive and finite");
    if (!(nu > 0.0) || !std::isfinite(nu)) throw InvalidInput("atom: laser frequency nu must be positive and finite");
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw InvalidInput("atom: gamma must be positive and finite");
    if (!(g >= 0.0) || !std::isfinite(g)) throw InvalidInput("atom: g must be non-negative and finite");
    if (!(laser_power_watt >= 0.0)) throw InvalidInput("atom: laser power must be non-negative");
}

AtomDriveConfig AtomDriveConfig::from_detuning(double omega0, double gamma, double g, double delta,
                                               double laser_power_watt) {
    return AtomDriveConfig(omega0, gamma, g, omega0 - delta, laser_power_watt);
}

double AtomDriveConfig::rabi_minus_detuning() const noexcept {
    const double delta = detuning();
    if (delta <= 0.0) return rabi() - delta;
    return 4.0 * g_ * g_ / (rabi() + delta);
}

double AtomDriveConfig::rabi_plus_detuning() const noexcept {
    const double delta = detuning();
    if (delta >= 0.0) return rabi() + delta;
    return 4.0 * g_ * g_ / (rabi() - delta);
}

AtomDriveConfig AtomDriveConfig::with_g(double g) const { return {omega0_, gamma_, g, nu_, laser_power_}; }
AtomDriveConfig AtomDriveConfig::with_nu(double nu) const { return {omega0_, gamma_, g_, nu, laser_power_}; }

} // namespace licore
