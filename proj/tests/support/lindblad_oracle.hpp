// lindblad_oracle.hpp - brute-force reference for the driven two-level generator
//
// Rebuilds the problem from the bare operators: diagonalizes the averaged
// Hamiltonian numerically, projects sigma_minus (cold, harmonic 1) and sigma_z
// (hot, harmonic 0) onto dressed transitions, assembles the generator by acting
// on matrix units, and solves L rho = 0 with the trace row substituted.
// Heat per channel is omega_eff times the net quanta taken from the bath.
#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace licore::testing {

struct OracleChannel {
    Eigen::Matrix2cd op;
    double omega_eff;
    bool hot;
};

struct OracleProblem {
    double rabi;
    Eigen::Matrix2cd hamiltonian; // dressed, (upper, lower)
    std::vector<OracleChannel> channels;
};

inline OracleProblem oracle_problem(double delta, double g, double nu) {
    Eigen::Matrix2cd h;
    h << delta / 2.0, g, g, -delta / 2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(h);
    Eigen::Matrix2cd r;
    r.col(0) = es.eigenvectors().col(1); // upper
    r.col(1) = es.eigenvectors().col(0); // lower
    const double rabi = es.eigenvalues()(1) - es.eigenvalues()(0);

    OracleProblem p;
    p.rabi = rabi;
    p.hamiltonian = r.adjoint() * h * r;

    Eigen::Matrix2cd lower_op;
    lower_op << 0.0, 0.0, 1.0, 0.0; // |g><e| in the bare (e, g) basis
    Eigen::Matrix2cd sz;
    sz << 1.0, 0.0, 0.0, -1.0;

    const auto split = [&](const Eigen::Matrix2cd& bare, int q, bool hot, bool with_raising) {
        const Eigen::Matrix2cd d = r.adjoint() * bare * r;
        Eigen::Matrix2cd diag = Eigen::Matrix2cd::Zero();
        diag(0, 0) = d(0, 0);
        diag(1, 1) = d(1, 1);
        Eigen::Matrix2cd down = Eigen::Matrix2cd::Zero(); // |lower><upper|
        down(1, 0) = d(1, 0);
        if (with_raising) {
            Eigen::Matrix2cd up = Eigen::Matrix2cd::Zero();
            up(0, 1) = d(0, 1);
            p.channels.push_back({up, -rabi + q * nu, hot});
        }
        p.channels.push_back({diag, q * nu, hot});
        p.channels.push_back({down, rabi + q * nu, hot});
    };
    split(lower_op, 1, false, true);
    split(sz, 0, true, false); // sigma_z is Hermitian: its raising part is the adjoint channel
    return p;
}

using Spectrum = std::function<double(double)>;

inline Eigen::Matrix2cd apply_dissipator(const Eigen::Matrix2cd& s, const Eigen::Matrix2cd& rho) {
    const Eigen::Matrix2cd sds = s.adjoint() * s;
    return s * rho * s.adjoint() - 0.5 * (sds * rho + rho * sds);
}

inline Eigen::Matrix2cd apply_generator(const OracleProblem& p, const Spectrum& hot, const Spectrum& cold,
                                        const Eigen::Matrix2cd& rho) {
    const std::complex<double> i(0.0, 1.0);
    Eigen::Matrix2cd out = -i * (p.hamiltonian * rho - rho * p.hamiltonian);
    for (const auto& c : p.channels) {
        const Spectrum& G = c.hot ? hot : cold;
        out += G(c.omega_eff) * apply_dissipator(c.op, rho) + G(-c.omega_eff) * apply_dissipator(c.op.adjoint(), rho);
    }
    return out;
}

inline Eigen::Matrix2cd oracle_steady_state(const OracleProblem& p, const Spectrum& hot, const Spectrum& cold) {
    // Row-major unknown ordering (00, 01, 10, 11).
    Eigen::Matrix4cd m;
    for (int k = 0; k < 4; ++k) {
        Eigen::Matrix2cd unit = Eigen::Matrix2cd::Zero();
        unit(k / 2, k % 2) = 1.0;
        const Eigen::Matrix2cd image = apply_generator(p, hot, cold, unit);
        for (int j = 0; j < 4; ++j) m(j, k) = image(j / 2, j % 2);
    }
    Eigen::Vector4cd rhs = Eigen::Vector4cd::Zero();
    m.row(0) << 1.0, 0.0, 0.0, 1.0;
    rhs(0) = 1.0;
    const Eigen::Vector4cd x = m.fullPivLu().solve(rhs);
    Eigen::Matrix2cd rho;
    rho << x(0), x(1), x(2), x(3);
    return rho;
}

struct OracleCurrents {
    double j_hot = 0.0;
    double j_cold = 0.0;
    double laser_power = 0.0; // nu x net photons taken from the laser
};

// Channels sitting at harmonic q exchange q laser photons per bath quantum.
inline OracleCurrents oracle_currents(const OracleProblem& p, const Spectrum& hot, const Spectrum& cold,
                                      const Eigen::Matrix2cd& rho, double nu) {
    OracleCurrents out;
    for (const auto& c : p.channels) {
        const Spectrum& G = c.hot ? hot : cold;
        const double emit = (c.op.adjoint() * c.op * rho).trace().real();
        const double absorb = (c.op * c.op.adjoint() * rho).trace().real();
        const double net = G(-c.omega_eff) * absorb - G(c.omega_eff) * emit;
        (c.hot ? out.j_hot : out.j_cold) += c.omega_eff * net;
        if (!c.hot) out.laser_power -= nu * net;
    }
    return out;
}

} // namespace licore::testing
