// test_analysis.cpp - minimal temperature and method comparison
#include <doctest.h>

#include <cmath>

#include "licore/analysis.hpp"
#include "licore/errors.hpp"
#include "licore/floquet.hpp"
#include "licore/units.hpp"
#include "support/draws.hpp"

using namespace licore;
using licore::testing::Draws;
using licore::testing::rel_err;

namespace {

// Sideband weights written out from the cubic vacuum spectrum.
struct Weights {
    double plus, minus, nu_plus, nu_minus;
};
Weights weights(double omega0, double gamma, double g, double delta) {
    const double nu = omega0 - delta, rabi = std::sqrt(4 * g * g + delta * delta);
    const double ap = (rabi + delta) / (2 * rabi), am = 2 * g * g / (rabi * (rabi + delta));
    return {ap * ap * std::pow((nu + rabi) / omega0, 3) * gamma, am * am * std::pow((nu - rabi) / omega0, 3) * gamma,
            nu + rabi, nu - rabi};
}

} // namespace

TEST_CASE("minimal-temperature parameters") {
    const auto cfg = AtomDriveConfig::from_detuning(300.0, 0.2, 0.3, 4.0);
    const auto p = min_temp_params(cfg, 5.0);
    const auto w = weights(300.0, 0.2, 0.3, 4.0);
    CHECK(p.delta_plus == doctest::Approx(w.plus).epsilon(1e-14));
    CHECK(p.delta_minus == doctest::Approx(w.minus).epsilon(1e-12));
    CHECK(p.nu_plus > p.nu_minus);
    const auto p0 = min_temp_params(cfg.with_g(0.0), 0.0);
    CHECK(p0.delta_minus == 0.0);
}

TEST_CASE("exact minimal temperature at zero cold temperature") {
    const auto cfg = AtomDriveConfig::from_detuning(300.0, 0.2, 0.3, 4.0);
    const auto w = weights(300.0, 0.2, 0.3, 4.0);
    const auto r = min_temp_exact(cfg, 0.0);
    CHECK(r.t_min == doctest::Approx(cfg.rabi() / std::log(w.plus / w.minus)).epsilon(1e-12));
    CHECK(r.residual <= 1e-12);
    CHECK(!r.exact_zero);
}

TEST_CASE("exact minimal temperature: residual, zero current and bracket") {
    Draws d(51);
    for (int i = 0; i < 1000; ++i) {
        const double delta = d.log_uniform(0.1, 10.0);
        const double g = d.log_uniform(1e-4, 0.5) * delta;
        const double omega0 = 200.0 + 50.0 * delta;
        const auto cfg = AtomDriveConfig::from_detuning(omega0, d.log_uniform(1e-3, 1.0), g, delta);
        const double t_cold = i % 2 ? 0.0 : d.log_uniform(1.0, 30.0);
        const auto r = min_temp_exact(cfg, t_cold);
        CHECK(r.residual <= 1e-12);
        const double gp = d.log_uniform(1e-3, 10.0);
        const auto b = bracket_check(cfg, gp, t_cold, r.t_min);
        CHECK(b.sign_change);
        const double at_root = heat_current_exact(cfg, gp, r.t_min, t_cold);
        CHECK(std::abs(at_root) <= 1e-10 * heat_current_exact(cfg, gp, 2.0 * r.t_min, t_cold));
        const double bis = min_temp_bisection(cfg, gp, t_cold, r.t_min / 10.0, 10.0 * r.t_min);
        CHECK(rel_err(bis, r.t_min) <= 1e-9);
    }
}

TEST_CASE("minimal temperature domain") {
    CHECK_THROWS_AS(min_temp_exact(AtomDriveConfig::from_detuning(300.0, 0.2, 0.3, -4.0), 0.0), NumericalDomainError);
    const auto undriven = min_temp_exact(AtomDriveConfig::from_detuning(300.0, 0.2, 0.0, 4.0), 0.0);
    CHECK(undriven.exact_zero);
    CHECK(undriven.t_min == 0.0);
    CHECK(min_temp_asymptotic(AtomDriveConfig::from_detuning(300.0, 0.2, 0.0, 4.0)).exact_zero);
    CHECK_THROWS_AS(min_temp_asymptotic(AtomDriveConfig::from_detuning(300.0, 0.2, 5.0, 4.0)), NumericalDomainError);
    CHECK_THROWS_AS(min_temp_bisection(AtomDriveConfig::from_detuning(300.0, 0.2, 0.3, 4.0), 1.0, 0.0, 100.0, 200.0),
                    NumericalDomainError);
}

TEST_CASE("asymptotic minimal temperature") {
    const double delta = 2.0;
    const auto cfg = AtomDriveConfig::from_detuning(1000.0 * delta, 0.1, delta / 1e3, delta);
    const auto a = min_temp_asymptotic(cfg);
    CHECK(a.t_min / cfg.rabi() == doctest::Approx(1.0 / (4.0 * std::log(1e3))).epsilon(1e-12));
    CHECK(a.t_min / cfg.rabi() == doctest::Approx(0.0362).epsilon(1e-2));
    CHECK(a.warnings.empty());
    const auto e = min_temp_exact(cfg, 0.0);
    CHECK(rel_err(e.t_min, a.t_min) <= 0.1);

    double previous = a.t_min;
    for (double ratio : {1e4, 1e6, 1e9, 1e12}) {
        const double t = min_temp_asymptotic(cfg.with_g(delta / ratio)).t_min;
        CHECK(t < previous);
        previous = t;
    }
    for (double ratio = 10.0; ratio < 1e6; ratio *= 3.0) {
        const auto c = cfg.with_g(delta / ratio);
        CHECK(min_temp_asymptotic(c).t_min / c.rabi() < 0.11);
    }
    CHECK_FALSE(min_temp_asymptotic(cfg.with_g(delta / 5.0)).warnings.empty());
}

TEST_CASE("method comparison cells") {
    const double gamma = 1.0, g = 1e-3;
    for (double rabi : {0.1, 10.0}) {
        const Table1Inputs in{gamma, rabi, rabi, g, 1000.0, 1000.0 + rabi, 85.0 * units::atomic_mass_unit_si};
        const auto t = table1_comparison(in);
        for (BandColumn c : {BandColumn::OmegaBelowGamma, BandColumn::OmegaAboveGamma}) {
            CHECK(t.cell(Method::Doppler, c).t_min_scaled == 0.25);
            CHECK(t.cell(Method::Licore, c).t_min_scaled == doctest::Approx(1.0 / (4.0 * std::log(rabi / g))));
            CHECK(t.cell(Method::Licore, c).t_min_scaled < 0.1);
        }
        const double x = gamma / (4.0 * rabi);
        CHECK(t.cell(Method::Sideband, BandColumn::OmegaBelowGamma).t_min_scaled ==
              doctest::Approx(1.0 / std::log((1 + x) / x)));
        CHECK(t.cell(Method::Sideband, BandColumn::OmegaAboveGamma).t_min_scaled ==
              doctest::Approx(1.0 / std::log((1 + x * x) / (x * x))));
        CHECK(t.regime == (rabi < gamma ? BandColumn::OmegaBelowGamma : BandColumn::OmegaAboveGamma));
        CHECK(t.cell(Method::Sideband, t.regime).applicable);
        CHECK(t.efficiency(Method::Sideband).bound == doctest::Approx(rabi / (1000.0 + rabi - rabi)));
        CHECK(t.efficiency(Method::Licore).bound == doctest::Approx(rabi / 1000.0));
        CHECK(t.efficiency(Method::Sideband).bands == (rabi > gamma ? "resolved" : "unresolved"));
        CHECK(t.approximate);
    }
    // resolved Omega/gamma = 10 and unresolved Omega/gamma = 0.1
    const auto resolved = table1_comparison({1.0, 10.0, 10.0, 1e-3, 1e3, 1e3, 1e-25});
    CHECK(resolved.cell(Method::Sideband, BandColumn::OmegaAboveGamma).t_min_scaled ==
          doctest::Approx(1.0 / std::log(1601.0)).epsilon(1e-14));
    const auto unresolved = table1_comparison({1.0, 0.1, 0.1, 1e-4, 1e3, 1e3, 1e-25});
    CHECK(unresolved.cell(Method::Sideband, BandColumn::OmegaBelowGamma).t_min_scaled ==
          doctest::Approx(1.0 / std::log(3.5 / 2.5)).epsilon(1e-14));
    CHECK(unresolved.cell(Method::Sideband, BandColumn::OmegaBelowGamma).t_min_scaled > 1.0);

    CHECK_THROWS_AS(table1_comparison({0.0, 1.0, 1.0, 0.1, 1.0, 2.0, 1.0}), InvalidInput);
}

TEST_CASE("Doppler efficiency uses SI constants") {
    // hbar nu / (2 c^2 m) for a D1 photon on a rubidium-85 atom
    const double nu = units::freq_from_thz(377.0);
    const double m = 84.9117897 * 1.66053906660e-27;
    const auto t = table1_comparison({1.0, 10.0, 10.0, 1e-3, nu, nu + 10.0, m});
    const double expected = 1.054571817e-34 * (2.0 * M_PI * 377e12) / (2.0 * 299792458.0 * 299792458.0 * m);
    CHECK(t.efficiency(Method::Doppler).bound == doctest::Approx(expected).epsilon(1e-12));
    CHECK(t.efficiency(Method::Doppler).bound < 1e-9);
}
