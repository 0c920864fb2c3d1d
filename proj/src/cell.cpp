#include "licore/cell.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "licore/errors.hpp"
#include "licore/floquet.hpp"
#include "licore/units.hpp"

namespace licore {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

bool use_rate_model(const AtomDriveConfig& cfg) {
    const double delta = cfg.detuning();
    return delta != 0.0 && cfg.g() <= weak_drive_validity_ratio * std::abs(delta);
}

// Model absorption and its derivative with respect to ln G0 for a flat plateau.
struct AbsorptionModel {
    double value;
    double dlog;
};

AbsorptionModel absorption_model(const CellConfig& cell, const AtomDriveConfig& cfg, double g0) {
    const double t_hot = units::temp_from_kelvin(cell.temperature_k);
    const double delta = cfg.detuning();
    const double abs_delta = std::abs(delta);
    const double ratio = 2.0 * cfg.g() / delta;
    const double pump = ratio * ratio * g0;
    const double e = std::exp(-abs_delta / t_hot);
    const double gamma = cfg.gamma();
    const double weight = delta > 0.0 ? e : 1.0; // Boltzmann factor only on the cooling branch
    const double denom = gamma + (1.0 + e) * pump;
    const double p_abs = cfg.nu() * pump * gamma * weight / denom;
    const double dp_dpump = cfg.nu() * gamma * gamma * weight / (denom * denom);
    const double scale = cell.atom_number() / units::power_from_watt(cell.laser_power_watt);
    const double a = -std::expm1(-scale * p_abs);
    return {a, (1.0 - a) * scale * dp_dpump * pump};
}

} // namespace

CellConfig CellConfig::with_absorption_length(double length_mm, double absorption_length_mm,
                                              double linear_density_per_mm, double laser_power_watt,
                                              double temperature_k) {
    if (!(absorption_length_mm > 0.0)) throw InvalidInput("cell: absorption length must be positive");
    CellConfig c{length_mm, 1.0 / absorption_length_mm, linear_density_per_mm, laser_power_watt, temperature_k};
    c.validate();
    return c;
}

void CellConfig::validate() const {
    if (!(length_mm > 0.0)) throw InvalidInput("cell: length must be positive");
    if (!(alpha_per_mm >= 0.0) || !std::isfinite(alpha_per_mm)) throw InvalidInput("cell: alpha must be >= 0");
    if (!(linear_density_per_mm >= 0.0)) throw InvalidInput("cell: linear atom density must be >= 0");
    if (!(laser_power_watt > 0.0)) throw InvalidInput("cell: laser power must be positive");
    if (!(temperature_k > 0.0)) throw InvalidInput("cell: bath temperature must be positive");
}

double CellConfig::absorption_fraction() const { return -std::expm1(-alpha_per_mm * length_mm); }

void AbsorptionDataset::validate() const {
    if (rows.empty()) throw InvalidInput("absorption dataset is empty");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!(rows[i].absorption >= 0.0 && rows[i].absorption <= 1.0))
            throw InvalidInput("absorption dataset: absorption must lie in [0, 1]");
        if (!(rows[i].nu_thz > 0.0)) throw InvalidInput("absorption dataset: frequencies must be positive");
        if (i > 0 && !(rows[i].nu_thz > rows[i - 1].nu_thz))
            throw InvalidInput("absorption dataset: frequencies must be strictly increasing");
    }
}

double AbsorptionDataset::absorption_at(double nu_thz) const {
    if (rows.empty()) throw InvalidInput("absorption dataset is empty");
    if (nu_thz <= rows.front().nu_thz) return rows.front().absorption;
    if (nu_thz >= rows.back().nu_thz) return rows.back().absorption;
    const auto hi = std::upper_bound(rows.begin(), rows.end(), nu_thz,
                                     [](double v, const AbsorptionRow& r) { return v < r.nu_thz; });
    const auto lo = hi - 1;
    const double t = (nu_thz - lo->nu_thz) / (hi->nu_thz - lo->nu_thz);
    return lo->absorption + t * (hi->absorption - lo->absorption);
}

AbsorptionDataset load_absorption_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open absorption dataset " + path.string());
    AbsorptionDataset data;
    std::string line;
    bool header_seen = false;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '#') {
            const std::string body = trim(line.substr(1));
            const auto sep = body.find_first_of(":=");
            if (sep != std::string::npos) data.metadata[trim(body.substr(0, sep))] = trim(body.substr(sep + 1));
            continue;
        }
        if (!header_seen) {
            if (trim(line) != "nu_thz,absorption")
                throw InvalidInput(path.string() + ": expected header 'nu_thz,absorption'");
            header_seen = true;
            continue;
        }
        std::istringstream row(line);
        row.imbue(std::locale::classic());
        AbsorptionRow r{};
        char comma = 0;
        if (!(row >> r.nu_thz >> comma >> r.absorption) || comma != ',')
            throw InvalidInput(path.string() + ":" + std::to_string(lineno) + ": malformed row");
        data.rows.push_back(r);
    }
    if (!header_seen) throw InvalidInput(path.string() + ": missing header");
    data.validate();
    return data;
}

void write_absorption_csv(const AbsorptionDataset& data, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out.imbue(std::locale::classic());
    for (const auto& [k, v] : data.metadata) out << "# " << k << ": " << v << '\n';
    out << "nu_thz,absorption\n" << std::setprecision(17);
    for (const auto& r : data.rows) out << r.nu_thz << ',' << r.absorption << '\n';
    if (!out) throw IoError("failed writing " + path.string());
}

double integrate_along_cell(const std::function<double(double)>& f, double length, double rel_tol) {
    if (!(length > 0.0)) throw InvalidInput("integration length must be positive");
    using boost::math::quadrature::gauss_kronrod;
    // The integrands are smooth in z, so one 31-point panel normally suffices.
    // The depth cap bounds the work when rounding noise dominates a nearly
    // vanishing integrand (the resonant Floquet point).
    return gauss_kronrod<double, 31>::integrate(f, 0.0, length, 6, rel_tol);
}

LocalFlow local_flow(const AtomDriveConfig& cfg, const BathSpectrum& hot, LocalModel model) {
    LocalModel used = model;
    if (model == LocalModel::Auto) used = use_rate_model(cfg) ? LocalModel::Rate : LocalModel::Floquet;
    if (used == LocalModel::Rate) return {energy_flow_weak(cfg, hot), used};
    const CubicColdSpectrum vacuum(cfg.gamma(), cfg.omega0(), 0.0);
    return {solve_floquet(cfg, hot, vacuum).flow, used};
}

CellTotals integrate_cell(const CellConfig& cell, double alpha_per_mm, const AtomDriveConfig& cfg,
                          const BathSpectrum& hot, LocalModel model) {
    cell.validate();
    if (!(alpha_per_mm >= 0.0) || !std::isfinite(alpha_per_mm)) throw InvalidInput("cell: alpha must be >= 0");
    const LocalModel used = model == LocalModel::Auto
                                ? (use_rate_model(cfg) ? LocalModel::Rate : LocalModel::Floquet)
                                : model;
    const double g0 = cfg.g();
    const auto at = [&](double z) {
        // g^2 follows the local laser power
        const auto local = cfg.with_g(g0 * std::exp(-0.5 * alpha_per_mm * z));
        return local_flow(local, hot, used).flow;
    };
    const double density = cell.linear_density_per_mm;
    CellTotals t{};
    t.used = used;
    t.j_hot = density * integrate_along_cell([&](double z) { return at(z).j_hot; }, cell.length_mm);
    t.p_abs = density * integrate_along_cell([&](double z) { return at(z).p_abs; }, cell.length_mm);
    return t;
}

double integrated_cooling_power(const CellConfig& cell, const AtomDriveConfig& cfg, const BathSpectrum& hot) {
    return integrate_cell(cell, cell.alpha_per_mm, cfg, hot, LocalModel::Rate).j_hot;
}

double experimental_heat_current(double laser_power, double absorption, double delta, double nu) {
    if (!(absorption >= 0.0 && absorption <= 1.0)) throw InvalidInput("absorption must lie in [0, 1]");
    if (!(nu > 0.0)) throw InvalidInput("laser frequency must be positive");
    return laser_power * absorption * delta / nu;
}

double model_absorption(const CellConfig& cell, const AtomDriveConfig& cfg, double g0) {
    cell.validate();
    if (!(g0 > 0.0)) throw InvalidInput("model absorption: G0 must be positive");
    if (!use_rate_model(cfg))
        throw NumericalDomainError("model absorption uses the weak-drive rate model; need g/|delta| <= 0.1");
    return absorption_model(cell, cfg, g0).value;
}

CalibrationResult calibrate_g0(const AbsorptionDataset& data, const AtomDriveConfig& cfg_template,
                               const CellConfig& cell, const CalibrationOptions& options) {
    data.validate();
    cell.validate();

    std::vector<AbsorptionRow> rows;
    if (options.reference_nu_thz.empty()) {
        rows = data.rows;
    } else {
        for (double ref : options.reference_nu_thz) {
            const auto it = std::find_if(data.rows.begin(), data.rows.end(), [&](const AbsorptionRow& r) {
                return std::abs(r.nu_thz - ref) <= options.match_tolerance_thz;
            });
            if (it == data.rows.end())
                throw InvalidInput("calibration: no dataset row at reference frequency " + std::to_string(ref) + " THz");
            rows.push_back(*it);
        }
    }
    std::vector<AtomDriveConfig> configs;
    std::vector<AbsorptionRow> usable;
    for (const auto& r : rows) {
        const auto cfg = cfg_template.with_nu(units::freq_from_thz(r.nu_thz));
        if (!use_rate_model(cfg)) continue;
        configs.push_back(cfg);
        usable.push_back(r);
    }
    if (usable.empty()) throw NumericalDomainError("calibration failed: no row inside the weak-drive regime");
    if (std::all_of(usable.begin(), usable.end(), [](const AbsorptionRow& r) { return r.absorption <= 1e-12; }))
        throw NumericalDomainError("calibration failed: measured absorption is zero at every reference row");

    // Per-row inversion in x = ln G0 for the starting point.
    std::vector<double> starts;
    for (std::size_t i = 0; i < usable.size(); ++i) {
        const double target = usable[i].absorption;
        if (target <= 0.0) continue;
        const auto f = [&](double x) { return absorption_model(cell, configs[i], std::exp(x)).value - target; };
        double lo = -50.0, hi = 50.0;
        if (f(lo) > 0.0 || f(hi) < 0.0) continue; // unreachable with any plateau
        std::uintmax_t iters = 200;
        const auto root = boost::math::tools::toms748_solve(f, lo, hi, boost::math::tools::eps_tolerance<double>(52),
                                                            iters);
        starts.push_back(0.5 * (root.first + root.second));
    }
    if (starts.empty())
        throw NumericalDomainError("calibration failed: measured absorption unreachable for any plateau value");
    double x = std::accumulate(starts.begin(), starts.end(), 0.0) / static_cast<double>(starts.size());

    // Gauss-Newton on the equally weighted absorption residuals.
    CalibrationResult out;
    for (out.iterations = 0; out.iterations < 100; ++out.iterations) {
        double jtr = 0.0, jtj = 0.0;
        for (std::size_t i = 0; i < usable.size(); ++i) {
            const auto m = absorption_model(cell, configs[i], std::exp(x));
            jtr += m.dlog * (m.value - usable[i].absorption);
            jtj += m.dlog * m.dlog;
        }
        if (jtj == 0.0) break;
        const double step = jtr / jtj;
        x -= step;
        if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(x))) break;
    }

    out.g0 = std::exp(x);
    out.fitted_rows = usable;
    double ss = 0.0;
    for (std::size_t i = 0; i < usable.size(); ++i) {
        const double a = absorption_model(cell, configs[i], out.g0).value;
        out.model_absorption.push_back(a);
        ss += (a - usable[i].absorption) * (a - usable[i].absorption);
    }
    out.rms_residual = std::sqrt(ss / static_cast<double>(usable.size()));
    return out;
}

ScanResult detuning_scan(const CellConfig& cell, const AtomDriveConfig& cfg_template, const BathSpectrum& hot,
                         const std::vector<double>& deltas, const AbsorptionDataset* data,
                         const ScanOptions& options) {
    cell.validate();
    if (deltas.empty()) throw InvalidInput("scan: detuning grid is empty");
    if (data) data->validate();

    ScanResult result;
    result.g0 = std::holds_alternative<FlatHotSpectrum>(hot) ? std::get<FlatHotSpectrum>(hot).plateau()
                                                              : std::numeric_limits<double>::quiet_NaN();
    result.rows.resize(deltas.size());
    const double laser_power = units::power_from_watt(cell.laser_power_watt);

    batch::for_each_index(
        deltas.size(),
        [&](std::size_t i) {
            ScanRow& row = result.rows[i];
            row.delta = deltas[i];
            const double nu = cfg_template.omega0() - row.delta;
            if (!(nu > 0.0)) {
                row.flagged = true;
                row.model = "invalid";
                row.note = "laser frequency not positive";
                return;
            }
            const auto cfg = cfg_template.with_nu(nu);
            row.alpha_per_mm = cell.alpha_per_mm;
            if (data) {
                const double a = std::clamp(data->absorption_at(units::freq_to_thz(nu)), 0.0, 1.0 - 1e-15);
                row.alpha_per_mm = -std::log1p(-a) / cell.length_mm;
                row.j_hot_exp = experimental_heat_current(laser_power, a, row.delta, nu);
            }
            if (row.delta == 0.0 && cfg.g() == 0.0) {
                row.flagged = true;
                row.model = "invalid";
                row.note = "no drive at zero detuning";
                return;
            }
            try {
                const auto totals = integrate_cell(cell, row.alpha_per_mm, cfg, hot, LocalModel::Auto);
                row.j_hot = totals.j_hot;
                row.p_abs = totals.p_abs;
                row.eta = totals.j_hot / laser_power;
                row.model = totals.used == LocalModel::Rate ? "rate" : "floquet";
                if (cfg.g() == 0.0 || row.delta == 0.0)
                    row.regime = Regime::Neutral;
                else
                    row.regime = row.j_hot > 0.0 ? Regime::Cooling
                                                 : (row.j_hot < 0.0 ? Regime::Heating : Regime::Neutral);
            } catch (const std::exception& e) {
                row.flagged = true;
                row.model = "invalid";
                row.note = e.what();
            }
        },
        options.execution, options.jobs);
    return result;
}

} // namespace licore
