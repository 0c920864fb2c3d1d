#include "licore/analysis.hpp"

#include <cmath>
#include <sstream>

#include "licore/errors.hpp"
#include "licore/floquet.hpp"
#include "licore/spectra.hpp"
#include "licore/units.hpp"

namespace licore {

MinTempParams min_temp_params(const AtomDriveConfig& cfg, double t_cold) {
    const double rabi = cfg.rabi();
    if (rabi == 0.0) throw NumericalDomainError("minimal temperature undefined for Omega = 0");
    MinTempParams p{};
    p.nu_plus = cfg.nu() + rabi;
    p.nu_minus = cfg.nu() - rabi;
    if (!(p.nu_minus > 0.0)) throw NumericalDomainError("minimal temperature needs nu > Omega");
    const auto cube = [](double x) { return x * x * x; };
    const double a_plus = cfg.rabi_plus_detuning() / (2.0 * rabi);
    const double a_minus = cfg.rabi_minus_detuning() / (2.0 * rabi);
    p.delta_plus = a_plus * a_plus * cube(p.nu_plus / cfg.omega0()) * cfg.gamma();
    p.delta_minus = a_minus * a_minus * cube(p.nu_minus / cfg.omega0()) * cfg.gamma();
    p.t_cold = t_cold;
    return p;
}

MinTempResult min_temp_exact(const AtomDriveConfig& cfg, double t_cold) {
    if (!(t_cold >= 0.0)) throw InvalidInput("minimal temperature: cold temperature must be non-negative");
    if (!(cfg.detuning() > 0.0))
        throw NumericalDomainError("no minimal temperature: cooling requires a red detuning (delta > 0)");
    const auto p = min_temp_params(cfg, t_cold);
    const double e_plus = boltzmann_weight(p.nu_plus, t_cold);
    const double e_minus = boltzmann_weight(p.nu_minus, t_cold);
    MinTempResult r;
    r.rhs = (p.delta_plus * e_plus + p.delta_minus) / (p.delta_plus + p.delta_minus * e_minus);
    if (r.rhs == 0.0) {
        r.exact_zero = true;
        r.t_min = 0.0;
        return r;
    }
    if (!(r.rhs < 1.0)) {
        std::ostringstream os;
        os << "no minimal temperature: zero-current condition requires exp(-Omega/T) = " << r.rhs << " >= 1";
        throw NumericalDomainError(os.str());
    }
    r.t_min = cfg.rabi() / -std::log(r.rhs);
    r.residual = std::abs(std::exp(-cfg.rabi() / r.t_min) - r.rhs) / r.rhs;
    return r;
}

MinTempResult min_temp_asymptotic(const AtomDriveConfig& cfg) {
    const double delta = cfg.detuning();
    MinTempResult r;
    if (cfg.g() == 0.0 && delta > 0.0) {
        r.exact_zero = true;
        return r;
    }
    if (!(cfg.g() < delta))
        throw NumericalDomainError("asymptotic minimal temperature needs 0 < g < delta");
    const double log_ratio = std::log(delta / cfg.g());
    r.t_min = cfg.rabi() / (4.0 * log_ratio);
    const double q = cfg.g() / delta;
    r.rhs = q * q * q * q;
    r.residual = std::abs(std::exp(-cfg.rabi() / r.t_min) - r.rhs) / r.rhs;
    if (cfg.g() / delta > 0.05) r.warnings.push_back("g/delta > 0.05: outside the weak-drive asymptotic regime");
    if (delta / cfg.nu() > 0.1) r.warnings.push_back("delta/nu > 0.1: outside the small-detuning asymptotic regime");
    return r;
}

double min_temp_bisection(const AtomDriveConfig& cfg, double gamma_p, double t_cold, double lo, double hi,
                          double rel_tol) {
    if (!(lo > 0.0 && hi > lo)) throw InvalidInput("bisection: need 0 < lo < hi");
    const auto current = [&](double t) { return heat_current_exact(cfg, gamma_p, t, t_cold); };
    double f_lo = current(lo);
    const double f_hi = current(hi);
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if ((f_lo < 0.0) == (f_hi < 0.0)) throw NumericalDomainError("bisection: bracket does not enclose a sign change");
    for (int it = 0; it < 400 && (hi - lo) > rel_tol * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = current(mid);
        if (f_mid == 0.0) return mid;
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

BracketCheck bracket_check(const AtomDriveConfig& cfg, double gamma_p, double t_cold, double t_min, double factor) {
    if (!(t_min > 0.0) || !(factor > 1.0)) throw InvalidInput("bracket check: need t_min > 0 and factor > 1");
    BracketCheck b{};
    b.current_below = heat_current_exact(cfg, gamma_p, t_min / factor, t_cold);
    b.current_above = heat_current_exact(cfg, gamma_p, t_min * factor, t_cold);
    b.sign_change = b.current_below < 0.0 && b.current_above > 0.0;
    return b;
}

std::string method_name(Method m) {
    switch (m) {
        case Method::Doppler: return "doppler";
        case Method::Sideband: return "sideband";
        case Method::Licore: return "licore";
    }
    return "?";
}

std::string column_name(BandColumn c) {
    return c == BandColumn::OmegaBelowGamma ? "omega_ll_gamma" : "omega_gg_gamma";
}

const TminCell& MethodComparison::cell(Method m, BandColumn c) const {
    for (const auto& x : t_min_cells)
        if (x.method == m && x.column == c) return x;
    throw InvalidInput("no such comparison cell");
}

const EfficiencyCell& MethodComparison::efficiency(Method m) const {
    for (const auto& x : efficiency_cells)
        if (x.method == m) return x;
    throw InvalidInput("no such efficiency cell");
}

MethodComparison table1_comparison(const Table1Inputs& in) {
    if (!(in.gamma > 0.0 && in.rabi > 0.0 && in.delta > 0.0 && in.g > 0.0 && in.nu > 0.0 && in.omega0 > 0.0 &&
          in.mass_kg > 0.0))
        throw InvalidInput("comparison: all inputs must be positive");
    if (!(in.g < in.delta)) throw InvalidInput("comparison: LICORE cell needs g < delta");

    MethodComparison out;
    out.regime = in.rabi < in.gamma ? BandColumn::OmegaBelowGamma : BandColumn::OmegaAboveGamma;

    const double doppler = 0.25;
    const double x_unres = in.gamma / (4.0 * in.rabi);
    const double sideband_unresolved = 1.0 / std::log((1.0 + x_unres) / x_unres);
    const double x_res = in.gamma * in.gamma / (16.0 * in.rabi * in.rabi);
    const double sideband_resolved = 1.0 / std::log((1.0 + x_res) / x_res);
    const double licore = 1.0 / (4.0 * std::log(in.delta / in.g));

    for (BandColumn c : {BandColumn::OmegaBelowGamma, BandColumn::OmegaAboveGamma}) {
        const bool applicable = c == out.regime;
        out.t_min_cells.push_back({Method::Doppler, c, doppler, "gamma", "~1/4", applicable});
        if (c == BandColumn::OmegaBelowGamma)
            out.t_min_cells.push_back({Method::Sideband, c, sideband_unresolved, "Omega", ">>1", applicable});
        else
            out.t_min_cells.push_back({Method::Sideband, c, sideband_resolved, "Omega", "<<1", applicable});
        out.t_min_cells.push_back({Method::Licore, c, licore, "Omega", "<<1", applicable});
    }

    const double nu_si = in.nu / units::seconds_per_internal_time;
    const double doppler_eff = units::hbar_si * nu_si /
                               (2.0 * units::light_speed_si * units::light_speed_si * in.mass_kg);
    out.efficiency_cells.push_back({Method::Doppler, doppler_eff, "-", "<<1"});
    const bool resolved = in.rabi > in.gamma;
    out.efficiency_cells.push_back({Method::Sideband, in.rabi / (in.omega0 - in.rabi),
                                    resolved ? "resolved" : "unresolved", resolved ? "<~1" : "<<1"});
    out.efficiency_cells.push_back({Method::Licore, in.rabi / in.nu, "unresolved", "<~1"});
    return out;
}

} // namespace licore
