// analysis.hpp - minimal attainable hot-bath temperature and method comparison

#pragma once

#include <string>
#include <vector>

#include "licore/atom.hpp"

namespace licore {

struct MinTempParams {
    double nu_plus;
    double nu_minus;
    double delta_plus;
    double delta_minus;
    double t_cold;
};

// nu_pm = nu +- Omega, delta_pm = ((Omega +- delta)/2 Omega)^2 (nu_pm/omega0)^3 gamma.
MinTempParams min_temp_params(const AtomDriveConfig& cfg, double t_cold);

struct MinTempResult {
    double t_min = 0.0;
    double rhs = 0.0;      // exp(-Omega/T_min) demanded by the zero-current condition
    double residual = 0.0; // |exp(-Omega/T_min) - rhs| / rhs, zero for the exact-zero limit
    bool exact_zero = false;
    std::vector<std::string> warnings;
};

// Closed-form root of the zero-current condition
//   exp(-Omega/T) = (d+ e^{-nu+/T_C} + d-) / (d+ + d- e^{-nu-/T_C}).
MinTempResult min_temp_exact(const AtomDriveConfig& cfg, double t_cold);

// Weak-drive limit T_min = Omega / (4 ln(delta/g)).
MinTempResult min_temp_asymptotic(const AtomDriveConfig& cfg);

// Independent route: bisection on the sign of the exact heat current in
// T_H over [lo, hi]. Converges to rel_tol relative width.
double min_temp_bisection(const AtomDriveConfig& cfg, double gamma_p, double t_cold, double lo, double hi,
                          double rel_tol = 1e-12);

struct BracketCheck {
    double current_below; // J_H at T_min / factor
    double current_above; // J_H at T_min * factor
    bool sign_change;     // below < 0 < above
};

BracketCheck bracket_check(const AtomDriveConfig& cfg, double gamma_p, double t_cold, double t_min,
                           double factor = 2.0);

// ---------------------------------------------------------------------------
// Comparison with Doppler and sideband cooling.

enum class Method { Doppler, Sideband, Licore };
enum class BandColumn { OmegaBelowGamma, OmegaAboveGamma };

std::string method_name(Method m);
std::string column_name(BandColumn c);

struct Table1Inputs {
    double gamma;
    double rabi;
    double delta;
    double g;
    double nu;
    double omega0;
    double mass_kg;
};

struct TminCell {
    Method method;
    BandColumn column;
    double t_min_scaled; // k_B T_min / (hbar * reference)
    std::string reference; // "gamma" or "Omega"
    std::string annotation;
    bool applicable;       // column matches the actual Omega vs gamma ordering
};

struct EfficiencyCell {
    Method method;
    double bound;
    std::string bands; // "resolved" / "unresolved" / "-"
    std::string annotation;
};

struct MethodComparison {
    BandColumn regime;
    std::vector<TminCell> t_min_cells;
    std::vector<EfficiencyCell> efficiency_cells;
    bool approximate = true; // every cell is a leading-order estimate

    const TminCell& cell(Method m, BandColumn c) const;
    const EfficiencyCell& efficiency(Method m) const;
};

MethodComparison table1_comparison(const Table1Inputs& in);

} // namespace licore
