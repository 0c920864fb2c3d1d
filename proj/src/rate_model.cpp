#include "licore/rate_model.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "licore/errors.hpp"

namespace licore {
namespace {

void require_weak_regime(const AtomDriveConfig& cfg) {
    const double delta = cfg.detuning();
    if (delta == 0.0)
        throw NumericalDomainError("weak-drive formulas are singular at zero detuning; use the Floquet-Lindblad solver");
    if (cfg.g() >= std::abs(delta)) {
        std::ostringstream os;
        os << "weak-drive formulas need g << |delta| (g = " << cfg.g() << ", |delta| = " << std::abs(delta)
           << "); use the Floquet-Lindblad solver";
        throw NumericalDomainError(os.str());
    }
}

void require_params(const WeakDriveParams& p) {
    if (!(p.gamma >= 0.0)) throw InvalidInput("rate model: gamma must be non-negative");
    if (!(p.pumping >= 0.0)) throw InvalidInput("rate model: pumping rate must be non-negative");
    if (!(p.t_hot > 0.0)) throw InvalidInput("rate model: hot-bath temperature must be positive");
}

// Shared factor Gamma_p gamma / (gamma + (1 + e) Gamma_p), with e = exp(-|delta|/T).
double cycle_rate(const WeakDriveParams& p, double e) {
    if (p.pumping == 0.0 || p.gamma == 0.0) return 0.0;
    return p.pumping * p.gamma / (p.gamma + (1.0 + e) * p.pumping);
}

} // namespace

std::string_view regime_name(Regime r) {
    switch (r) {
        case Regime::Cooling: return "cooling";
        case Regime::Heating: return "heating";
        case Regime::Neutral: return "neutral";
    }
    return "neutral";
}

double pumping_rate(const AtomDriveConfig& cfg, const BathSpectrum& hot) {
    require_weak_regime(cfg);
    const double delta = cfg.detuning();
    const double ratio = 2.0 * cfg.g() / delta;
    return ratio * ratio * evaluate(hot, std::abs(delta));
}

double dressed_pumping_rate(const AtomDriveConfig& cfg, const BathSpectrum& hot) {
    const double rabi = cfg.rabi();
    if (rabi == 0.0) throw NumericalDomainError("dressed pumping rate undefined for g = delta = 0");
    const double ratio = 2.0 * cfg.g() / rabi;
    return ratio * ratio * evaluate(hot, rabi);
}

WeakDriveParams weak_params(const AtomDriveConfig& cfg, const BathSpectrum& hot) {
    return {cfg.detuning(), cfg.gamma(), pumping_rate(cfg, hot), temperature(hot)};
}

RatePoint steady_state(const WeakDriveParams& p) {
    require_params(p);
    const double abs_delta = std::abs(p.delta);
    const double e = std::exp(-abs_delta / p.t_hot);
    RatePoint out{};
    out.gamma_p = p.pumping;
    if (p.delta >= 0.0) {
        out.boltzmann_factor = (p.pumping == 0.0) ? 0.0 : p.pumping * e / (p.pumping + p.gamma);
        if (out.boltzmann_factor == 0.0) {
            out.t_tla = 0.0;
        } else if (p.delta == 0.0) {
            out.t_tla = std::numeric_limits<double>::quiet_NaN();
        } else {
            // ln(rho_gg/rho_ee) = delta/T + ln(1 + gamma/Gamma_p), kept in log1p form
            out.t_tla = abs_delta / (abs_delta / p.t_hot + std::log1p(p.gamma / p.pumping));
        }
    } else {
        if (p.pumping == 0.0)
            throw NumericalDomainError("heating regime with zero pumping rate: population inversion undefined");
        out.boltzmann_factor = e + p.gamma / p.pumping;
        out.t_tla = out.boltzmann_factor >= 1.0 ? std::numeric_limits<double>::infinity()
                                                : abs_delta / -std::log(out.boltzmann_factor);
    }
    out.rho_ee = out.boltzmann_factor / (1.0 + out.boltzmann_factor);
    out.rho_gg = 1.0 / (1.0 + out.boltzmann_factor);
    return out;
}

double heat_current_weak(const WeakDriveParams& p) {
    require_params(p);
    if (p.delta == 0.0) return 0.0;
    const double abs_delta = std::abs(p.delta);
    const double e = std::exp(-abs_delta / p.t_hot);
    const double rate = cycle_rate(p, e);
    return p.delta > 0.0 ? abs_delta * rate * e : -abs_delta * rate;
}

double asymmetry_ratio(const WeakDriveParams& p) {
    if (!(p.delta > 0.0)) throw InvalidInput("asymmetry ratio needs a positive (red) detuning");
    WeakDriveParams mirrored = p;
    mirrored.delta = -p.delta;
    const double forward = heat_current_weak(p);
    if (forward == 0.0) throw NumericalDomainError("asymmetry ratio undefined: cooling current vanishes");
    return -heat_current_weak(mirrored) / forward;
}

double absorbed_power_weak(const WeakDriveParams& p, double nu) {
    require_params(p);
    if (!(p.delta > 0.0))
        throw NumericalDomainError("absorbed-power formula holds on the cooling branch (delta > 0) only");
    const double e = std::exp(-p.delta / p.t_hot);
    return nu * cycle_rate(p, e) * e;
}

double absorbed_power_heating(const WeakDriveParams& p, double nu) {
    require_params(p);
    if (!(p.delta < 0.0)) throw NumericalDomainError("heating-branch absorbed power needs delta < 0");
    const double e = std::exp(p.delta / p.t_hot);
    return nu * cycle_rate(p, e);
}

double absorbed_power_any(const WeakDriveParams& p, double nu) {
    if (p.delta > 0.0) return absorbed_power_weak(p, nu);
    if (p.delta < 0.0) return absorbed_power_heating(p, nu);
    return 0.0;
}

double efficiency(const WeakDriveParams& p, double laser_power) {
    if (!(laser_power > 0.0)) throw InvalidInput("efficiency: laser power must be positive");
    return heat_current_weak(p) / laser_power;
}

EnergyFlowReport energy_flow_weak(const AtomDriveConfig& cfg, const BathSpectrum& hot, double laser_power) {
    const WeakDriveParams p = weak_params(cfg, hot);
    EnergyFlowReport r;
    r.j_hot = heat_current_weak(p);
    r.p_abs = absorbed_power_any(p, cfg.nu());
    // every cycle emits one photon at omega0 into the vacuum
    r.j_cold = -(r.p_abs + r.j_hot);
    r.eta = laser_power > 0.0 ? r.j_hot / laser_power : 0.0;
    if (cfg.g() == 0.0 || p.delta == 0.0)
        r.regime = Regime::Neutral;
    else
        r.regime = p.delta > 0.0 ? Regime::Cooling : Regime::Heating;
    r.conservation_residual = 0.0;
    return r;
}

} // namespace licore
