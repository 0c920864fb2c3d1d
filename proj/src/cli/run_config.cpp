#include "licore/cli/run_config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "licore/errors.hpp"
#include "licore/units.hpp"

namespace licore::cli {
namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
    if (!obj.is_object()) throw InvalidInput("config: '" + path + "' must be an object");
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (!allowed.count(key)) {
            std::string list;
            for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
            throw InvalidInput("config: unknown key '" + (path.empty() ? key : path + "." + key) + "' (allowed: " +
                               list + ")");
        }
    }
}

std::optional<double> number(const json& obj, const std::string& section, const std::string& key) {
    if (!obj.contains(key)) return std::nullopt;
    const auto& v = obj.at(key);
    if (!v.is_number()) throw InvalidInput("config: '" + section + "." + key + "' must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw InvalidInput("config: '" + section + "." + key + "' must be finite");
    return x;
}

double number_or(const json& obj, const std::string& section, const std::string& key, double fallback) {
    return number(obj, section, key).value_or(fallback);
}

std::optional<std::filesystem::path> path_value(const json& obj, const std::string& section, const std::string& key,
                                                const std::filesystem::path& base) {
    if (!obj.contains(key)) return std::nullopt;
    const auto& v = obj.at(key);
    if (!v.is_string()) throw InvalidInput("config: '" + section + "." + key + "' must be a string path");
    std::filesystem::path p = v.get<std::string>();
    if (p.is_relative() && !base.empty()) p = base / p;
    return p;
}

std::vector<double> number_list(const json& obj, const std::string& section, const std::string& key) {
    const auto& v = obj.at(key);
    const auto fail = [&] { throw InvalidInput("config: '" + section + "." + key + "' must be an array of numbers"); };
    if (!v.is_array()) fail();
    std::vector<double> out;
    for (const auto& x : v) {
        if (!x.is_number()) fail();
        out.push_back(x.get<double>());
        if (!std::isfinite(out.back())) fail();
    }
    return out;
}

void require(bool ok, const std::string& message) {
    if (!ok) throw InvalidInput("config: " + message);
}

const json& section(const json& doc, const std::string& name) {
    static const json empty = json::object();
    return doc.contains(name) ? doc.at(name) : empty;
}

} // namespace

RunConfig RunConfig::from_json(const json& doc, const std::filesystem::path& base_dir) {
    check_keys(doc, "", {"atom", "hot_bath", "cold_bath", "cell", "scan", "compare", "analysis"});
    RunConfig c;

    const auto& a = section(doc, "atom");
    check_keys(a, "atom", {"omega0_thz", "gamma_thz", "g_thz", "nu_thz", "detuning_thz", "laser_power_w"});
    c.atom.omega0_thz = number_or(a, "atom", "omega0_thz", c.atom.omega0_thz);
    c.atom.gamma_thz = number_or(a, "atom", "gamma_thz", c.atom.gamma_thz);
    c.atom.g_thz = number(a, "atom", "g_thz");
    c.atom.nu_thz = number(a, "atom", "nu_thz");
    c.atom.detuning_thz = number(a, "atom", "detuning_thz");
    c.atom.laser_power_w = number_or(a, "atom", "laser_power_w", c.atom.laser_power_w);
    require(!(c.atom.nu_thz && c.atom.detuning_thz), "give either 'atom.nu_thz' or 'atom.detuning_thz', not both");
    require(c.atom.omega0_thz > 0.0, "'atom.omega0_thz' must be positive");
    require(c.atom.gamma_thz > 0.0, "'atom.gamma_thz' must be positive");
    require(!c.atom.g_thz || *c.atom.g_thz >= 0.0, "'atom.g_thz' must be non-negative");
    require(c.atom.laser_power_w > 0.0, "'atom.laser_power_w' must be positive");

    const auto& h = section(doc, "hot_bath");
    check_keys(h, "hot_bath", {"temperature_k", "g0_thz", "spectrum_csv"});
    c.hot_bath.temperature_k = number_or(h, "hot_bath", "temperature_k", c.hot_bath.temperature_k);
    c.hot_bath.g0_thz = number(h, "hot_bath", "g0_thz");
    c.hot_bath.spectrum_csv = path_value(h, "hot_bath", "spectrum_csv", base_dir);
    require(c.hot_bath.temperature_k > 0.0, "'hot_bath.temperature_k' must be positive");
    require(!c.hot_bath.g0_thz || *c.hot_bath.g0_thz > 0.0, "'hot_bath.g0_thz' must be positive");
    require(!(c.hot_bath.g0_thz && c.hot_bath.spectrum_csv),
            "give either 'hot_bath.g0_thz' or 'hot_bath.spectrum_csv', not both");

    const auto& k = section(doc, "cold_bath");
    check_keys(k, "cold_bath", {"temperature_k"});
    c.cold_bath.temperature_k = number_or(k, "cold_bath", "temperature_k", 0.0);
    require(c.cold_bath.temperature_k >= 0.0, "'cold_bath.temperature_k' must be non-negative");

    const auto& l = section(doc, "cell");
    check_keys(l, "cell", {"length_mm", "absorption_length_mm", "alpha_per_mm", "linear_density_per_mm"});
    c.cell.length_mm = number_or(l, "cell", "length_mm", c.cell.length_mm);
    c.cell.absorption_length_mm = number(l, "cell", "absorption_length_mm");
    c.cell.alpha_per_mm = number(l, "cell", "alpha_per_mm");
    c.cell.linear_density_per_mm = number_or(l, "cell", "linear_density_per_mm", c.cell.linear_density_per_mm);
    require(!(c.cell.absorption_length_mm && c.cell.alpha_per_mm),
            "give either 'cell.absorption_length_mm' or 'cell.alpha_per_mm', not both");
    require(c.cell.length_mm > 0.0, "'cell.length_mm' must be positive");
    require(!c.cell.absorption_length_mm || *c.cell.absorption_length_mm > 0.0,
            "'cell.absorption_length_mm' must be positive");
    require(!c.cell.alpha_per_mm || *c.cell.alpha_per_mm >= 0.0, "'cell.alpha_per_mm' must be non-negative");
    require(c.cell.linear_density_per_mm >= 0.0, "'cell.linear_density_per_mm' must be non-negative");

    const auto& s = section(doc, "scan");
    check_keys(s, "scan", {"delta_min_thz", "delta_max_thz", "delta_step_thz", "deltas_thz", "dataset_csv", "calibrate",
                           "reference_nu_thz"});
    c.scan.delta_min_thz = number(s, "scan", "delta_min_thz");
    c.scan.delta_max_thz = number(s, "scan", "delta_max_thz");
    c.scan.delta_step_thz = number(s, "scan", "delta_step_thz");
    if (s.contains("deltas_thz")) c.scan.deltas_thz = number_list(s, "scan", "deltas_thz");
    c.scan.dataset_csv = path_value(s, "scan", "dataset_csv", base_dir);
    if (s.contains("calibrate")) {
        require(s.at("calibrate").is_boolean(), "'scan.calibrate' must be true or false");
        c.scan.calibrate = s.at("calibrate").get<bool>();
    }
    if (s.contains("reference_nu_thz")) c.scan.reference_nu_thz = number_list(s, "scan", "reference_nu_thz");
    const bool range = c.scan.delta_min_thz || c.scan.delta_max_thz || c.scan.delta_step_thz;
    require(!(range && c.scan.deltas_thz), "give either 'scan.deltas_thz' or a min/max/step range, not both");
    require(!c.scan.calibrate || c.scan.dataset_csv, "'scan.calibrate' needs 'scan.dataset_csv'");

    const auto& m = section(doc, "compare");
    check_keys(m, "compare", {"atom_mass_amu"});
    c.compare.atom_mass_amu = number_or(m, "compare", "atom_mass_amu", c.compare.atom_mass_amu);
    require(c.compare.atom_mass_amu > 0.0, "'compare.atom_mass_amu' must be positive");

    const auto& n = section(doc, "analysis");
    check_keys(n, "analysis", {"atom_number", "bracket_factor"});
    c.analysis.atom_number = number_or(n, "analysis", "atom_number", c.analysis.atom_number);
    c.analysis.bracket_factor = number_or(n, "analysis", "bracket_factor", c.analysis.bracket_factor);
    require(c.analysis.atom_number >= 0.0, "'analysis.atom_number' must be non-negative");
    require(c.analysis.bracket_factor > 1.0, "'analysis.bracket_factor' must exceed 1");
    return c;
}

AtomDriveConfig RunConfig::drive() const {
    require(atom.g_thz.has_value(), "missing required field 'atom.g_thz'");
    require(atom.nu_thz || atom.detuning_thz, "missing required field 'atom.detuning_thz' (or 'atom.nu_thz')");
    const double omega0 = units::freq_from_thz(atom.omega0_thz);
    const double nu = atom.nu_thz ? units::freq_from_thz(*atom.nu_thz)
                                  : units::freq_from_thz(atom.omega0_thz - *atom.detuning_thz);
    return AtomDriveConfig(omega0, units::freq_from_thz(atom.gamma_thz), units::freq_from_thz(*atom.g_thz), nu,
                           atom.laser_power_w);
}

BathSpectrum RunConfig::hot_spectrum() const {
    const double t = units::temp_from_kelvin(hot_bath.temperature_k);
    if (hot_bath.spectrum_csv) return load_spectrum_csv(*hot_bath.spectrum_csv, t);
    require(hot_bath.g0_thz.has_value(), "missing required field 'hot_bath.g0_thz' (or 'hot_bath.spectrum_csv')");
    return FlatHotSpectrum(units::freq_from_thz(*hot_bath.g0_thz), t);
}

BathSpectrum RunConfig::hot_spectrum_with_plateau(double g0_internal) const {
    return FlatHotSpectrum(g0_internal, units::temp_from_kelvin(hot_bath.temperature_k));
}

CubicColdSpectrum RunConfig::cold_spectrum(const AtomDriveConfig& d) const {
    return CubicColdSpectrum(d.gamma(), d.omega0(), units::temp_from_kelvin(cold_bath.temperature_k));
}

CellConfig RunConfig::cell_config() const {
    CellConfig out;
    out.length_mm = cell.length_mm;
    out.alpha_per_mm = cell.alpha_per_mm ? *cell.alpha_per_mm : 1.0 / cell.absorption_length_mm.value_or(9.0);
    out.linear_density_per_mm = cell.linear_density_per_mm;
    out.laser_power_watt = atom.laser_power_w;
    out.temperature_k = hot_bath.temperature_k;
    out.validate();
    return out;
}

std::vector<double> RunConfig::detuning_grid() const {
    std::vector<double> thz;
    if (scan.deltas_thz) {
        thz = *scan.deltas_thz;
    } else {
        require(scan.delta_min_thz && scan.delta_max_thz && scan.delta_step_thz,
                "scan grid needs 'scan.deltas_thz' or all of 'scan.delta_min_thz', 'scan.delta_max_thz', "
                "'scan.delta_step_thz'");
        const double lo = *scan.delta_min_thz, hi = *scan.delta_max_thz, step = *scan.delta_step_thz;
        require(step > 0.0, "'scan.delta_step_thz' must be positive");
        if (hi >= lo) {
            const double count = std::floor((hi - lo) / step + 1e-9) + 1.0;
            require(count <= 1e6, "scan grid exceeds 10^6 points");
            for (long i = 0; i < static_cast<long>(count); ++i) thz.push_back(lo + static_cast<double>(i) * step);
        }
    }
    if (thz.empty()) throw InvalidInput("scan: detuning grid is empty");
    std::vector<double> out;
    for (double d : thz) out.push_back(units::freq_from_thz(d));
    return out;
}

nlohmann::json load_config_document(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path.string());
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidInput(path.string() + ": " + e.what());
    }
}

void apply_override(nlohmann::json& doc, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) throw InvalidInput("--set expects key=value, got '" + assignment + "'");
    const std::string key = assignment.substr(0, eq);
    const std::string text = assignment.substr(eq + 1);
    nlohmann::json value;
    try {
        value = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error&) {
        value = text;
    }
    nlohmann::json* node = &doc;
    std::stringstream parts(key);
    std::string part;
    std::vector<std::string> path;
    while (std::getline(parts, part, '.')) {
        if (part.empty()) throw InvalidInput("--set: malformed key '" + key + "'");
        path.push_back(part);
    }
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        if (!node->is_object()) throw InvalidInput("--set: '" + key + "' descends into a non-object");
        node = &(*node)[path[i]];
        if (node->is_null()) *node = nlohmann::json::object();
    }
    if (!node->is_object()) throw InvalidInput("--set: '" + key + "' descends into a non-object");
    (*node)[path.back()] = value;
}

} // namespace licore::cli
