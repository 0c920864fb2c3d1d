#include "licore/floquet.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/SVD>

#include "licore/errors.hpp"

namespace licore {
namespace {

// Relative SVD gap below which the steady state is declared non-unique.
constexpr double kernel_gap_tolerance = 1e-6;
// Residual above which a density matrix is not treated as stationary.
constexpr double stationarity_tolerance = 1e-8;
// nu - Omega below this fraction of nu triggers the near-degeneracy flag.
constexpr double degeneracy_fraction = 1e-2;

Matrix2 ladder(int row, int col, double value) {
    Matrix2 m = Matrix2::Zero();
    m(row, col) = value;
    return m;
}

} // namespace

std::string bath_name(Bath b) { return b == Bath::Hot ? "hot" : "cold"; }

Matrix2 averaged_hamiltonian(const AtomDriveConfig& cfg) {
    return 0.5 * cfg.detuning() * ops::sigma_z() + cfg.g() * ops::sigma_x();
}

Matrix2 dressed_hamiltonian(const AtomDriveConfig& cfg) {
    Matrix2 h = Matrix2::Zero();
    h(0, 0) = 0.5 * cfg.rabi();
    h(1, 1) = -0.5 * cfg.rabi();
    return h;
}

Matrix2 dressing_rotation(const AtomDriveConfig& cfg) {
    // cos(2 theta) = delta/Omega, sin(2 theta) = 2g/Omega
    const double theta = 0.5 * std::atan2(2.0 * cfg.g(), cfg.detuning());
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    Matrix2 u;
    u << c, -s, s, c;
    return u;
}

Matrix2 dressed_to_bare(const Matrix2& rho_dressed, const AtomDriveConfig& cfg) {
    const Matrix2 u = dressing_rotation(cfg);
    return u * rho_dressed * u.adjoint();
}

HarmonicCouplingSet coupling_set(const AtomDriveConfig& cfg) {
    const double delta = cfg.detuning();
    const double rabi = cfg.rabi();
    const double g = cfg.g();
    if (rabi == 0.0) throw NumericalDomainError("coupling set undefined for g = delta = 0 (Omega = 0)");
    if (!(cfg.nu() > rabi)) {
        std::ostringstream os;
        os << "laser frequency nu = " << cfg.nu() << " does not exceed the Rabi frequency " << rabi
           << "; the nu - Omega sideband would sit at non-positive frequency";
        throw NumericalDomainError(os.str());
    }

    HarmonicCouplingSet set{cfg.nu(), rabi, delta, {}};
    const Matrix2 zdiag = ops::sigma_z();

    const double lower_sb = -cfg.rabi_minus_detuning() / (2.0 * rabi);
    const double carrier = g / rabi;
    const double upper_sb = cfg.rabi_plus_detuning() / (2.0 * rabi);
    set.entries.push_back({Bath::Cold, 1, -rabi, lower_sb, ladder(0, 1, lower_sb)});
    set.entries.push_back({Bath::Cold, 1, 0.0, carrier, carrier * zdiag});
    set.entries.push_back({Bath::Cold, 1, rabi, upper_sb, ladder(1, 0, upper_sb)});

    const double dephasing = delta / rabi;
    const double pumping = 2.0 * g / rabi;
    set.entries.push_back({Bath::Hot, 0, 0.0, dephasing, dephasing * zdiag});
    set.entries.push_back({Bath::Hot, 0, rabi, pumping, ladder(1, 0, -pumping)});
    return set;
}

double LiouvillianOperator::trace_violation() const { return (ops::trace_functional() * superop).norm(); }

LiouvillianOperator build_liouvillian(const HarmonicCouplingSet& set, const BathSpectrum& hot,
                                      const BathSpectrum& cold) {
    LiouvillianOperator out;
    out.superop = Matrix4::Zero();
    out.nu = set.nu;
    out.t_hot = temperature(hot);
    out.t_cold = temperature(cold);
    out.hamiltonian = Matrix2::Zero();
    out.hamiltonian(0, 0) = 0.5 * set.rabi;
    out.hamiltonian(1, 1) = -0.5 * set.rabi;
    out.near_degenerate = (set.nu - set.rabi) < degeneracy_fraction * set.nu;

    for (const auto& e : set.entries) {
        const BathSpectrum& spectrum = e.bath == Bath::Hot ? hot : cold;
        LiouvillianComponent c{e, e.effective_frequency(set.nu), 0.0, 0.0, Matrix4::Zero()};
        c.rate_emission = evaluate(spectrum, c.omega_eff);
        c.rate_absorption = evaluate(spectrum, -c.omega_eff);
        if (!std::isfinite(c.rate_emission) || !std::isfinite(c.rate_absorption) || c.rate_emission < 0.0 ||
            c.rate_absorption < 0.0)
            throw NumericalDomainError("bath spectrum returned an invalid rate at omega = " +
                                       std::to_string(c.omega_eff));
        c.superop = c.rate_emission * ops::dissipator(e.op) + c.rate_absorption * ops::dissipator(e.op.adjoint());
        out.superop += c.superop;
        out.components.push_back(std::move(c));
    }
    return out;
}

SteadyStateReport steady_state(const LiouvillianOperator& liouv) {
    const double norm = liouv.norm();
    Eigen::JacobiSVD<Matrix4> svd(liouv.superop, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (!(norm > 0.0) || !(sv(2) > kernel_gap_tolerance * norm)) {
        std::ostringstream os;
        os << "steady state is not unique: second-smallest singular value " << sv(2) << " vs ||L|| = " << norm;
        throw NumericalDomainError(os.str());
    }
    Matrix2 rho = ops::unvec(svd.matrixV().col(3));
    rho /= rho.trace();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    rho /= rho.trace().real();

    SteadyStateReport r;
    r.rho = rho;
    r.residual = (liouv.superop * ops::vec(rho)).norm();
    r.p_upper = rho(0, 0).real();
    r.p_lower = rho(1, 1).real();
    r.coherence = rho(0, 1);
    r.smallest_singular_value = sv(3);
    r.second_singular_value = sv(2);
    return r;
}

CurrentReport spohn_currents(const LiouvillianOperator& liouv, const Matrix2& rho) {
    CurrentReport out;
    const double norm = liouv.norm();
    out.stationary = (liouv.superop * ops::vec(rho)).norm() <= stationarity_tolerance * std::max(norm, 1e-300);
    const Vector4 v = ops::vec(rho);
    const double e_upper = liouv.hamiltonian(0, 0).real();
    const double e_lower = liouv.hamiltonian(1, 1).real();
    double photon_balance = 0.0;

    for (const auto& c : liouv.components) {
        const Matrix2& s = c.entry.op;
        const double emit = (s.adjoint() * s * rho).trace().real();
        const double absorb = (s * s.adjoint() * rho).trace().real();
        const double net_absorption = c.rate_absorption * absorb - c.rate_emission * emit;

        double heat = 0.0;
        if (c.entry.dressed_frequency != 0.0) {
            // -T Tr[(L_c rho) ln rho~], rho~ proportional to exp(-kappa H / T). Each
            // component is trace preserving, so the log-partition term drops out;
            // evaluating it would only add rounding noise of order kappa Omega.
            const Matrix2 flow = ops::unvec(c.superop * v);
            const double kappa = c.omega_eff / c.entry.dressed_frequency;
            const double d_upper = flow(0, 0).real();
            heat = kappa * d_upper * (e_upper - e_lower);
        } else {
            heat = c.omega_eff * net_absorption;
        }

        (c.entry.bath == Bath::Hot ? out.j_hot : out.j_cold) += heat;
        photon_balance += c.entry.harmonic * net_absorption;
        out.components.push_back({c.entry.bath, c.entry.harmonic, c.entry.dressed_frequency, c.omega_eff,
                                  net_absorption, heat});
    }
    out.p_abs = -out.j_cold - out.j_hot;
    out.p_abs_photon = -liouv.nu * photon_balance;
    out.conservation_residual = std::abs(out.p_abs_photon + out.j_hot + out.j_cold);
    return out;
}

double heat_current_exact(const AtomDriveConfig& cfg, double gamma_p, double t_hot, double t_cold,
                          double atom_number) {
    if (!(t_hot > 0.0)) throw InvalidInput("exact current: hot temperature must be positive");
    if (!(t_cold >= 0.0)) throw InvalidInput("exact current: cold temperature must be non-negative");
    if (!(gamma_p >= 0.0)) throw InvalidInput("exact current: pumping rate must be non-negative");
    const double rabi = cfg.rabi();
    if (rabi == 0.0) throw NumericalDomainError("exact current undefined for Omega = 0");
    const double nu_plus = cfg.nu() + rabi;
    const double nu_minus = cfg.nu() - rabi;
    if (!(nu_minus > 0.0)) throw NumericalDomainError("exact current needs nu > Omega");

    const auto cube = [](double x) { return x * x * x; };
    const double a_plus = cfg.rabi_plus_detuning() / (2.0 * rabi);
    const double a_minus = cfg.rabi_minus_detuning() / (2.0 * rabi);
    const double d_plus = a_plus * a_plus * cube(nu_plus / cfg.omega0()) * cfg.gamma();
    const double d_minus = a_minus * a_minus * cube(nu_minus / cfg.omega0()) * cfg.gamma();
    const double e_plus = boltzmann_weight(nu_plus, t_cold);
    const double e_minus = boltzmann_weight(nu_minus, t_cold);
    const double e_hot = std::exp(-rabi / t_hot);

    const double numerator = e_hot * (d_plus + d_minus * e_minus) - (d_plus * e_plus + d_minus);
    const double denominator = d_minus * (1.0 + e_minus) + d_plus * (1.0 + e_plus) + (1.0 + e_hot) * gamma_p;
    if (denominator == 0.0) return 0.0;
    return atom_number * rabi * gamma_p * numerator / denominator;
}

double relaxation_rate(const WeakDriveParams& p) {
    const double e = std::exp(-std::abs(p.delta) / p.t_hot);
    return p.pumping * (1.0 + e) + p.gamma;
}

PopulationPair transient_populations(const WeakDriveParams& p, PopulationPair initial, double t) {
    if (p.delta == 0.0) throw InvalidInput("transient populations: delta must be non-zero");
    if (!(t >= 0.0)) throw InvalidInput("transient populations: time must be non-negative");
    if (!(p.t_hot > 0.0)) throw InvalidInput("transient populations: temperature must be positive");
    const double total = initial.excited + initial.ground;
    const double e = std::exp(-std::abs(p.delta) / p.t_hot);
    const double k = relaxation_rate(p);
    const double feed = p.delta > 0.0 ? p.pumping * e : p.pumping * e + p.gamma;
    if (k == 0.0) return initial;
    const double fixed = total * feed / k;
    const double excited = fixed + (initial.excited - fixed) * std::exp(-k * t);
    return {excited, total - excited};
}

FloquetSolution solve_floquet(const AtomDriveConfig& cfg, const BathSpectrum& hot, const BathSpectrum& cold,
                              double laser_power) {
    const auto liouv = build_liouvillian(coupling_set(cfg), hot, cold);
    FloquetSolution sol;
    sol.state = steady_state(liouv);
    sol.currents = spohn_currents(liouv, sol.state.rho);
    sol.near_degenerate = liouv.near_degenerate;
    auto& f = sol.flow;
    f.j_hot = sol.currents.j_hot;
    f.j_cold = sol.currents.j_cold;
    f.p_abs = sol.currents.p_abs;
    f.eta = laser_power > 0.0 ? f.j_hot / laser_power : 0.0;
    f.conservation_residual = sol.currents.conservation_residual;
    if (cfg.g() == 0.0 || cfg.detuning() == 0.0)
        f.regime = Regime::Neutral;
    else
        f.regime = f.j_hot > 0.0 ? Regime::Cooling : (f.j_hot < 0.0 ? Regime::Heating : Regime::Neutral);
    return sol;
}

} // namespace licore
