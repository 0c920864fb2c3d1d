#include "licore/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>

#include "licore/analysis.hpp"
#include "licore/cell.hpp"
#include "licore/errors.hpp"
#include "licore/floquet.hpp"
#include "licore/rate_model.hpp"
#include "licore/units.hpp"

namespace licore::cli {
namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

double watt(double internal) { return units::power_to_watt(internal); }
double kelvin(double internal) { return units::temp_to_kelvin(internal); }
double thz(double internal) { return units::freq_to_thz(internal); }

double rel_diff(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

// Temperature of the two dressed levels read at the energy |delta|.
double tla_temperature(double abs_delta, double upper, double lower) {
    if (upper <= 0.0) return 0.0;
    if (upper >= lower) return std::numeric_limits<double>::infinity();
    return abs_delta / std::log(lower / upper);
}

Cell text(std::string_view s) { return Cell{std::string(s)}; }

double relative_residual(const EnergyFlowReport& f) {
    const double scale = std::max({std::abs(f.j_hot), std::abs(f.j_cold), std::abs(f.p_abs)});
    return scale == 0.0 ? 0.0 : f.conservation_residual / scale;
}

AtomDriveConfig scan_template(const RunConfig& rc) {
    if (!rc.atom.g_thz) throw InvalidInput("config: missing required field 'atom.g_thz'");
    RunConfig copy = rc;
    if (!copy.atom.nu_thz && !copy.atom.detuning_thz) copy.atom.detuning_thz = 0.0;
    return copy.drive();
}

CalibrationResult run_calibration(const RunConfig& rc, const AtomDriveConfig& tmpl) {
    if (!rc.scan.dataset_csv) throw InvalidInput("config: missing required field 'scan.dataset_csv'");
    const auto data = load_absorption_csv(*rc.scan.dataset_csv);
    CalibrationOptions opts;
    opts.reference_nu_thz = rc.scan.reference_nu_thz;
    return calibrate_g0(data, tmpl, rc.cell_config(), opts);
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace

Report cmd_steady_state(const RunConfig& rc) {
    const auto cfg = rc.drive();
    const auto hot = rc.hot_spectrum();
    const BathSpectrum cold = rc.cold_spectrum(cfg);
    const double abs_delta = std::abs(cfg.detuning());

    Report r;
    Table t{"steady_state", {"solver", "rho_ee", "rho_gg", "t_tla_k", "gamma_p_thz", "rel_diff", "note"}, {}};

    const auto sol = solve_floquet(cfg, hot, cold);
    const double f_ee = sol.state.p_upper;
    const double f_gg = sol.state.p_lower;
    const double f_gp = dressed_pumping_rate(cfg, hot);

    try {
        const auto p = steady_state(weak_params(cfg, hot));
        std::string note;
        if (cfg.g() > weak_drive_validity_ratio * abs_delta) note = "g/|delta| above the weak-drive range";
        else if (p.gamma_p == 0.0) note = "no pumping (g = 0)";
        t.add_row({text("rate"), p.rho_ee, p.rho_gg, kelvin(p.t_tla), thz(p.gamma_p), rel_diff(p.rho_ee, f_ee),
                   text(note)});
    } catch (const NumericalDomainError& e) {
        t.add_row({text("rate"), {}, {}, {}, {}, {}, text(e.what())});
    }
    t.add_row({text("floquet"), f_ee, f_gg, kelvin(tla_temperature(abs_delta, f_ee, f_gg)), thz(f_gp), 0.0,
               text(sol.near_degenerate ? "near-degenerate Floquet channels" : "")});
    r.tables.push_back(std::move(t));
    return r;
}

Report cmd_currents(const RunConfig& rc) {
    const auto cfg = rc.drive();
    const auto hot = rc.hot_spectrum();
    const BathSpectrum cold = rc.cold_spectrum(cfg);
    const double laser = units::power_from_watt(rc.atom.laser_power_w);
    const double delta = cfg.detuning();
    const double t_hot = temperature(hot);

    Report r;
    Table flows{"currents",
                {"solver", "j_hot_w", "j_cold_w", "p_abs_w", "eta", "regime", "residual_w", "residual_rel", "note"},
                {}};
    const auto add_flow = [&](const std::string& solver, const EnergyFlowReport& f, const std::string& note) {
        flows.add_row({text(solver), watt(f.j_hot), watt(f.j_cold), watt(f.p_abs), f.eta, text(regime_name(f.regime)),
                       watt(f.conservation_residual), relative_residual(f), text(note)});
    };
    try {
        add_flow("rate", energy_flow_weak(cfg, hot, laser),
                 cfg.g() > weak_drive_validity_ratio * std::abs(delta) ? "g/|delta| above the weak-drive range" : "");
    } catch (const NumericalDomainError& e) {
        flows.add_row({text("rate"), {}, {}, {}, {}, {}, {}, {}, text(e.what())});
    }
    const auto sol = solve_floquet(cfg, hot, cold, laser);
    add_flow("floquet", sol.flow, sol.near_degenerate ? "near-degenerate Floquet channels" : "");
    r.tables.push_back(std::move(flows));

    // -J_H(-|delta|) / J_H(|delta|) against exp(|delta|/T_H)
    Table mirror{"mirror", {"solver", "ratio", "expected", "rel_err", "note"}, {}};
    if (delta != 0.0 && cfg.g() > 0.0) {
        const double abs_delta = std::abs(delta);
        const double expected = std::exp(abs_delta / t_hot);
        const auto red = cfg.with_nu(cfg.omega0() - abs_delta);
        const auto blue = cfg.with_nu(cfg.omega0() + abs_delta);
        try {
            auto p = weak_params(red, hot);
            const double ratio = asymmetry_ratio(p);
            mirror.add_row({text("rate"), ratio, expected, rel_diff(ratio, expected), text("")});
        } catch (const std::exception& e) {
            mirror.add_row({text("rate"), {}, expected, {}, text(e.what())});
        }
        try {
            const double j_red = solve_floquet(red, hot, cold).flow.j_hot;
            const double j_blue = solve_floquet(blue, hot, cold).flow.j_hot;
            const double ratio = -j_blue / j_red;
            mirror.add_row({text("floquet"), ratio, expected, rel_diff(ratio, expected), text("")});
        } catch (const NumericalDomainError& e) {
            mirror.add_row({text("floquet"), {}, expected, {}, text(e.what())});
        }
    }
    r.tables.push_back(std::move(mirror));
    return r;
}

Report cmd_scan(const RunConfig& rc, int jobs) {
    const auto tmpl = scan_template(rc);
    const auto cell = rc.cell_config();
    const auto deltas = rc.detuning_grid();

    Report r;
    std::optional<AbsorptionDataset> data;
    if (rc.scan.dataset_csv) data = load_absorption_csv(*rc.scan.dataset_csv);

    std::optional<BathSpectrum> hot;
    std::optional<CalibrationResult> fit;
    if (rc.scan.calibrate) {
        fit = run_calibration(rc, tmpl);
        hot = rc.hot_spectrum_with_plateau(fit->g0);
    } else {
        hot = rc.hot_spectrum();
    }

    ScanOptions opts;
    opts.execution = jobs == 1 ? batch::Execution::Serial : batch::Execution::Parallel;
    opts.jobs = jobs;
    const auto result = detuning_scan(cell, tmpl, *hot, deltas, data ? &*data : nullptr, opts);

    if (fit) {
        r.add_meta("calibrated_g0_thz", thz(fit->g0));
        r.add_meta("calibration_rms", fit->rms_residual);
    }
    Table t{"scan", {"delta_thz", "j_hot_watt", "j_hot_exp_watt", "p_abs_watt", "eta", "regime", "model"}, {}};
    for (const auto& row : result.rows) {
        const bool invalid = row.model == "invalid";
        std::optional<double> exp_w;
        if (row.j_hot_exp) exp_w = watt(*row.j_hot_exp);
        t.add_row({thz(row.delta), invalid ? Cell{} : Cell{watt(row.j_hot)}, optional_cell(exp_w),
                   invalid ? Cell{} : Cell{watt(row.p_abs)}, invalid ? Cell{} : Cell{row.eta},
                   text(regime_name(row.regime)), text(row.model)});
    }
    r.tables.push_back(std::move(t));
    return r;
}

Report cmd_tmin(const RunConfig& rc) {
    const auto cfg = rc.drive();
    const auto hot = rc.hot_spectrum();
    const double t_cold = units::temp_from_kelvin(rc.cold_bath.temperature_k);

    Report r;
    Table t{"tmin",
            {"t_min_exact_k", "t_min_asymptotic_k", "rel_gap", "root_residual", "t_min_bisection_k", "j_hot_below_w",
             "j_hot_above_w", "sign_change", "exact_zero", "warnings"},
            {}};

    const auto exact = min_temp_exact(cfg, t_cold);
    if (exact.exact_zero) {
        t.add_row({0.0, 0.0, 0.0, 0.0, {}, {}, {}, {}, true,
                   text(cfg.g() == 0.0 ? "no drive: the exact limit T_min = 0" : "zero-current condition met at T = 0")});
        r.tables.push_back(std::move(t));
        return r;
    }

    std::vector<std::string> warnings = exact.warnings;
    std::optional<double> asym_k, gap;
    try {
        const auto asym = min_temp_asymptotic(cfg);
        asym_k = kelvin(asym.t_min);
        gap = std::abs(asym.t_min - exact.t_min) / exact.t_min;
        warnings.insert(warnings.end(), asym.warnings.begin(), asym.warnings.end());
    } catch (const NumericalDomainError& e) {
        warnings.emplace_back(e.what());
    }

    const double gamma_p = dressed_pumping_rate(cfg, hot);
    const double factor = rc.analysis.bracket_factor;
    const auto bracket = bracket_check(cfg, gamma_p, t_cold, exact.t_min, factor);
    if (!bracket.sign_change) warnings.emplace_back("J_H does not change sign across the bracket");
    // independent root of J_H(T_H) = 0 over a decade either side
    std::optional<double> bisect_k;
    try {
        bisect_k = kelvin(min_temp_bisection(cfg, gamma_p, t_cold, exact.t_min / 10.0, exact.t_min * 10.0));
    } catch (const NumericalDomainError& e) {
        warnings.emplace_back(e.what());
    }
    if (gamma_p == 0.0) warnings.emplace_back("hot-bath pumping rate is zero");

    std::string joined;
    for (const auto& w : warnings) joined += (joined.empty() ? "" : "; ") + w;
    t.add_row({kelvin(exact.t_min), optional_cell(asym_k), optional_cell(gap), exact.residual, optional_cell(bisect_k),
               watt(bracket.current_below), watt(bracket.current_above), bracket.sign_change, false, text(joined)});
    r.tables.push_back(std::move(t));
    return r;
}

Report cmd_compare(const RunConfig& rc) {
    const auto cfg = rc.drive();
    Table1Inputs in{cfg.gamma(), cfg.rabi(), cfg.detuning(), cfg.g(), cfg.nu(), cfg.omega0(),
                    rc.compare.atom_mass_amu * units::atomic_mass_unit_si};
    const auto cmp = table1_comparison(in);

    Report r;
    Table tmin{"t_min", {"method", "column", "t_min_scaled", "reference", "t_min_k", "annotation", "applicable"}, {}};
    for (const auto& c : cmp.t_min_cells) {
        const double ref = c.reference == "gamma" ? cfg.gamma() : cfg.rabi();
        tmin.add_row({text(method_name(c.method)), text(column_name(c.column)), c.t_min_scaled, text(c.reference),
                      kelvin(c.t_min_scaled * ref), text(c.annotation), c.applicable});
    }
    Table eff{"efficiency", {"method", "bound", "bands", "annotation"}, {}};
    for (const auto& c : cmp.efficiency_cells)
        eff.add_row({text(method_name(c.method)), c.bound, text(c.bands), text(c.annotation)});
    Table regime{"regime", {"regime", "gamma_over_omega", "delta_over_g"}, {}};
    regime.add_row({text(column_name(cmp.regime)), cfg.gamma() / cfg.rabi(),
                    cfg.g() > 0.0 ? Cell{cfg.detuning() / cfg.g()} : Cell{}});
    r.tables.push_back(std::move(regime));
    r.tables.push_back(std::move(tmin));
    r.tables.push_back(std::move(eff));
    return r;
}

Report cmd_calibrate(const RunConfig& rc) {
    const auto tmpl = scan_template(rc);
    const auto fit = run_calibration(rc, tmpl);

    Report r;
    Table summary{"fit", {"g0_thz", "rms_residual", "iterations", "rows"}, {}};
    summary.add_row({thz(fit.g0), fit.rms_residual, static_cast<double>(fit.iterations),
                     static_cast<double>(fit.fitted_rows.size())});
    Table rows{"rows", {"nu_thz", "absorption", "model_absorption", "residual"}, {}};
    for (std::size_t i = 0; i < fit.fitted_rows.size(); ++i) {
        const auto& row = fit.fitted_rows[i];
        rows.add_row({row.nu_thz, row.absorption, fit.model_absorption[i], fit.model_absorption[i] - row.absorption});
    }
    r.tables.push_back(std::move(summary));
    r.tables.push_back(std::move(rows));
    return r;
}

void write_plot_data(std::ostream& out, const Report& scan) {
    const auto it = std::find_if(scan.tables.begin(), scan.tables.end(), [](const Table& t) { return t.name == "scan"; });
    if (it == scan.tables.end()) throw std::logic_error("plot data needs a scan report");
    out << "# delta_thz j_hot_watt j_hot_exp_watt\n";
    for (const auto& row : it->rows) {
        for (int i : {0, 1, 2}) {
            const auto* v = std::get_if<double>(&row[static_cast<std::size_t>(i)]);
            out << (i ? " " : "") << (v ? format_machine(*v) : std::string("nan"));
        }
        out << '\n';
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"licore - collisional-redistribution laser cooling calculator", "licore"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_path;
    std::string format_name = "table";
    int jobs = 0;
    bool no_metadata = false;
    bool emit_plot = false;
    app.add_option("--config", config_path, "JSON run configuration");
    app.add_option("--set", overrides, "override a config value, key.path=value (repeatable)");
    app.add_option("--out", out_path, "write output to this file");
    app.add_option("--format", format_name, "output format")->check(CLI::IsMember({"csv", "json", "table"}));
    app.add_option("--jobs", jobs, "worker threads for scans (0: all cores)")->check(CLI::NonNegativeNumber);
    app.add_flag("--no-metadata", no_metadata, "omit metadata (timestamps, provenance) from the output");

    auto* steady = app.add_subcommand("steady-state", "steady-state populations from both solvers");
    auto* currents = app.add_subcommand("currents", "heat currents, absorbed power and conservation check");
    auto* scan = app.add_subcommand("scan", "cell-integrated cooling power over a detuning grid");
    scan->add_flag("--emit-plot-data", emit_plot, "also write a gnuplot-friendly .dat file");
    auto* tmin = app.add_subcommand("tmin", "minimal attainable hot-bath temperature");
    auto* compare = app.add_subcommand("compare", "comparison with Doppler and sideband cooling");
    auto* calibrate = app.add_subcommand("calibrate", "fit the hot-bath plateau to absorption data");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return Ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return Ok;
    } catch (const CLI::ParseError& e) {
        err << "licore: " << e.what() << '\n';
        return ConfigError;
    }

    try {
        nlohmann::json doc = nlohmann::json::object();
        std::filesystem::path base;
        if (!config_path.empty()) {
            doc = load_config_document(config_path);
            base = std::filesystem::path(config_path).parent_path();
        }
        for (const auto& o : overrides) apply_override(doc, o);
        const RunConfig rc = RunConfig::from_json(doc, base);
        const Format format = parse_format(format_name);

        Report report;
        std::string name;
        if (steady->parsed()) { name = "steady-state"; report = cmd_steady_state(rc); }
        else if (currents->parsed()) { name = "currents"; report = cmd_currents(rc); }
        else if (scan->parsed()) { name = "scan"; report = cmd_scan(rc, jobs); }
        else if (tmin->parsed()) { name = "tmin"; report = cmd_tmin(rc); }
        else if (compare->parsed()) { name = "compare"; report = cmd_compare(rc); }
        else { name = "calibrate"; report = cmd_calibrate(rc); (void)calibrate; }

        std::vector<std::pair<std::string, std::string>> meta = {
            {"tool", "licore " LICORE_VERSION}, {"command", name}, {"generated_utc", utc_timestamp()}};
        if (!config_path.empty()) meta.emplace_back("config", config_path);
        report.metadata.insert(report.metadata.begin(), meta.begin(), meta.end());
        const bool with_meta = !no_metadata;

        const auto write_file = [&](const std::filesystem::path& p, Format f) {
            std::ofstream file(p);
            if (!file) throw IoError("cannot write " + p.string());
            write_report(file, report, f, with_meta);
            if (!file) throw IoError("failed writing " + p.string());
        };

        if (name == "scan" && !out_path.empty()) {
            std::filesystem::path stem = out_path;
            stem.replace_extension();
            write_file(stem.string() + ".csv", Format::Csv);
            write_file(stem.string() + ".json", Format::Json);
            err << "licore: wrote " << stem.string() << ".csv and " << stem.string() << ".json\n";
        } else if (!out_path.empty()) {
            write_file(out_path, format);
        } else {
            write_report(out, report, format, with_meta);
        }
        if (emit_plot) {
            std::filesystem::path p = out_path.empty() ? std::filesystem::path("licore_scan") : std::filesystem::path(out_path);
            p.replace_extension(".plot.dat");
            std::ofstream file(p);
            if (!file) throw IoError("cannot write " + p.string());
            write_plot_data(file, report);
            if (!file) throw IoError("failed writing " + p.string());
        }
        return Ok;
    } catch (const InvalidInput& e) {
        err << "licore: invalid input: " << e.what() << '\n';
        return ConfigError;
    } catch (const NumericalDomainError& e) {
        err << "licore: no solution: " << e.what() << '\n';
        return DomainError;
    } catch (const IoError& e) {
        err << "licore: I/O error: " << e.what() << '\n';
        return IoFailure;
    }
}

} // namespace licore::cli
