// rate_model.hpp - closed-form weak-drive model of collisional redistribution
//
// Valid for |delta| >> g. The functions taking WeakDriveParams are total on
// their stated domain; the AtomDriveConfig overloads additionally refuse
// points where the weak-drive expansion is meaningless (delta = 0, g >= |delta|)
// and direct the caller to the Floquet solver.

#pragma once

#include <string_view>

#include "licore/atom.hpp"
#include "licore/spectra.hpp"

namespace licore {

// Advisory upper bound on g/|delta| for the weak-drive formulas.
inline constexpr double weak_drive_validity_ratio = 0.1;

struct WeakDriveParams {
    double delta;   // signed detuning
    double gamma;   // spontaneous rate
    double pumping; // collision-induced pumping rate Gamma_p
    double t_hot;   // hot-bath temperature
};

enum class Regime { Cooling, Heating, Neutral };
std::string_view regime_name(Regime r);

struct RatePoint {
    double gamma_p;
    double boltzmann_factor; // rho_ee / rho_gg
    double t_tla;            // +inf when the populations are inverted
    double rho_ee;
    double rho_gg;
};

struct EnergyFlowReport {
    double j_hot = 0.0;  // heat out of the hot bath (positive: bath is cooled)
    double j_cold = 0.0; // heat out of the cold bath
    double p_abs = 0.0;  // absorbed laser power
    double eta = 0.0;    // j_hot / P_L, zero when no laser power is given
    Regime regime = Regime::Neutral;
    double conservation_residual = 0.0; // |P_abs + J_H + J_C|
};

// Gamma_p = (2g/delta)^2 G_H(|delta|).
double pumping_rate(const AtomDriveConfig& cfg, const BathSpectrum& hot);
// Dressed-state analogue (2g/Omega)^2 G_H(Omega); coincides with pumping_rate
// to O((g/delta)^2) and is the rate that enters the exact current.
double dressed_pumping_rate(const AtomDriveConfig& cfg, const BathSpectrum& hot);

WeakDriveParams weak_params(const AtomDriveConfig& cfg, const BathSpectrum& hot);

RatePoint steady_state(const WeakDriveParams& p);
double heat_current_weak(const WeakDriveParams& p);
// -J_H(-delta) / J_H(delta) for delta > 0 at a fixed pumping rate.
double asymmetry_ratio(const WeakDriveParams& p);
// nu * Gamma_p gamma e^{-delta/T} / (gamma + (1 + e^{-delta/T}) Gamma_p); delta > 0 only.
double absorbed_power_weak(const WeakDriveParams& p, double nu);
// Heating-branch counterpart, nu * |J_H| / |delta| for delta < 0.
double absorbed_power_heating(const WeakDriveParams& p, double nu);
// Either branch; zero at delta = 0.
double absorbed_power_any(const WeakDriveParams& p, double nu);
// eta = J_H / P_L with P_L in internal power units.
double efficiency(const WeakDriveParams& p, double laser_power);

// Full weak-drive energy bookkeeping at one parameter point. laser_power is in
// internal units; pass 0 to skip the efficiency.
EnergyFlowReport energy_flow_weak(const AtomDriveConfig& cfg, const BathSpectrum& hot, double laser_power = 0.0);

} // namespace licore
