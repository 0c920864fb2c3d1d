// floquet.hpp - Floquet-decomposed Lindblad generator for the driven two-level atom
//
// Everything here works in the dressed basis of the averaged Hamiltonian
// (delta/2) sigma_z + g sigma_x, ordered (|upper>, |lower>) with energies
// (+Omega/2, -Omega/2). In that basis the bath coupling operators take the
// fixed form listed by coupling_set().

#pragma once

#include <string>
#include <vector>

#include "licore/atom.hpp"
#include "licore/matrix.hpp"
#include "licore/rate_model.hpp"
#include "licore/spectra.hpp"

namespace licore {

enum class Bath { Hot, Cold };
std::string bath_name(Bath b);

struct CouplingEntry {
    Bath bath;
    int harmonic;             // q
    double dressed_frequency; // omega-bar
    double prefactor;         // scalar multiplying the unit matrix below
    Matrix2 op;               // prefactor already applied

    // omega-bar + q nu: the frequency at which the bath spectrum is sampled.
    double effective_frequency(double nu) const noexcept { return dressed_frequency + harmonic * nu; }
};

struct HarmonicCouplingSet {
    double nu;
    double rabi;
    double delta;
    std::vector<CouplingEntry> entries;
};

// Bare basis (|e>, |g>).
Matrix2 averaged_hamiltonian(const AtomDriveConfig& cfg);
// diag(+Omega/2, -Omega/2).
Matrix2 dressed_hamiltonian(const AtomDriveConfig& cfg);
// Unitary whose columns are |upper>, |lower> expressed in the bare basis.
Matrix2 dressing_rotation(const AtomDriveConfig& cfg);
Matrix2 dressed_to_bare(const Matrix2& rho_dressed, const AtomDriveConfig& cfg);

// Three cold entries (q = 1; omega-bar = -Omega, 0, +Omega) and two hot entries
// (q = 0; omega-bar = 0, +Omega).
HarmonicCouplingSet coupling_set(const AtomDriveConfig& cfg);

struct LiouvillianComponent {
    CouplingEntry entry;
    double omega_eff;
    double rate_emission;   // G_j(omega_eff), multiplies D[S]
    double rate_absorption; // G_j(-omega_eff), multiplies D[S^dag]
    Matrix4 superop;
};

struct LiouvillianOperator {
    Matrix4 superop;
    std::vector<LiouvillianComponent> components;
    Matrix2 hamiltonian; // dressed basis
    double nu;
    double t_hot;
    double t_cold;
    bool near_degenerate = false; // nu - Omega small against Omega

    double norm() const { return superop.norm(); }
    // || Tr[L(.)] || : zero for a trace-preserving generator.
    double trace_violation() const;
};

LiouvillianOperator build_liouvillian(const HarmonicCouplingSet& set, const BathSpectrum& hot,
                                      const BathSpectrum& cold);

struct SteadyStateReport {
    Matrix2 rho;       // dressed basis, trace one, Hermitian
    double residual;   // || L vec(rho) ||
    double p_upper;
    double p_lower;
    cplx coherence;    // rho(upper, lower)
    double smallest_singular_value;
    double second_singular_value;
};

// Null vector of the generator from its SVD. Throws NumericalDomainError when
// the second-smallest singular value is below 1e-6 ||L||.
SteadyStateReport steady_state(const LiouvillianOperator& liouv);

struct ComponentCurrent {
    Bath bath;
    int harmonic;
    double dressed_frequency;
    double omega_eff;
    double net_absorption; // quanta taken from the bath per unit time
    double heat;           // energy taken from the bath per unit time
};

struct CurrentReport {
    double j_hot = 0.0;
    double j_cold = 0.0;
    double p_abs = 0.0;        // -J_C - J_H
    double p_abs_photon = 0.0; // nu x net laser photons consumed, independent of the currents
    double conservation_residual = 0.0; // |p_abs_photon + J_H + J_C|
    bool stationary = true;
    std::vector<ComponentCurrent> components;
};

// Spohn heat currents per Floquet channel. Channels with omega-bar = 0 use
// heat = omega_eff x net absorption (the Spohn reference state is singular there).
CurrentReport spohn_currents(const LiouvillianOperator& liouv, const Matrix2& rho);

// Closed-form current for the flat/cubic model, linear in atom_number.
// gamma_p is the dressed pumping rate (2g/Omega)^2 G_H(Omega).
double heat_current_exact(const AtomDriveConfig& cfg, double gamma_p, double t_hot, double t_cold,
                          double atom_number = 1.0);

struct PopulationPair {
    double excited;
    double ground;
};

// Closed-form solution of the two-state rate equation at time t.
PopulationPair transient_populations(const WeakDriveParams& p, PopulationPair initial, double t);
double relaxation_rate(const WeakDriveParams& p);

// Build -> solve -> currents for one parameter point.
struct FloquetSolution {
    SteadyStateReport state;
    CurrentReport currents;
    EnergyFlowReport flow;
    bool near_degenerate = false;
};

FloquetSolution solve_floquet(const AtomDriveConfig& cfg, const BathSpectrum& hot, const BathSpectrum& cold,
                              double laser_power = 0.0);

} // namespace licore
