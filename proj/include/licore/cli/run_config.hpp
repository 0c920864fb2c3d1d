// run_config.hpp - JSON run configuration for the command-line front end
//
// Physical quantities are given in user units (THz ordinary frequency, K, W,
// mm). Unknown keys are rejected; relative paths resolve against the config
// file's directory.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "licore/atom.hpp"
#include "licore/cell.hpp"
#include "licore/spectra.hpp"

namespace licore::cli {

struct AtomSection {
    double omega0_thz = 377.0;    // rubidium D1
    double gamma_thz = 5.75e-6;   // D1 natural linewidth, 5.75 MHz
    std::optional<double> g_thz;
    std::optional<double> nu_thz;
    std::optional<double> detuning_thz;
    double laser_power_w = 1.0;
};

struct HotBathSection {
    double temperature_k = 500.0;
    std::optional<double> g0_thz;
    std::optional<std::filesystem::path> spectrum_csv;
};

struct ColdBathSection {
    double temperature_k = 0.0;
};

struct CellSection {
    double length_mm = 10.0;
    std::optional<double> absorption_length_mm;
    std::optional<double> alpha_per_mm;
    double linear_density_per_mm = 1.0;
};

struct ScanSection {
    std::optional<double> delta_min_thz;
    std::optional<double> delta_max_thz;
    std::optional<double> delta_step_thz;
    std::optional<std::vector<double>> deltas_thz;
    std::optional<std::filesystem::path> dataset_csv;
    bool calibrate = false;
    std::vector<double> reference_nu_thz;
};

struct CompareSection {
    double atom_mass_amu = 84.911789738; // rubidium-85
};

struct AnalysisSection {
    double atom_number = 1.0;
    double bracket_factor = 2.0;
};

struct RunConfig {
    AtomSection atom;
    HotBathSection hot_bath;
    ColdBathSection cold_bath;
    CellSection cell;
    ScanSection scan;
    CompareSection compare;
    AnalysisSection analysis;

    // Parses and validates the document; throws InvalidInput with the
    // offending key path on schema violations.
    static RunConfig from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});

    // Typed views, each checking the fields it needs.
    AtomDriveConfig drive() const;
    BathSpectrum hot_spectrum() const;
    BathSpectrum hot_spectrum_with_plateau(double g0_internal) const;
    CubicColdSpectrum cold_spectrum(const AtomDriveConfig& drive) const;
    CellConfig cell_config() const;
    std::vector<double> detuning_grid() const; // internal units
};

nlohmann::json load_config_document(const std::filesystem::path& path);

// Applies "a.b.c=value" to the document. The value is parsed as JSON when
// possible and kept as a string otherwise.
void apply_override(nlohmann::json& doc, const std::string& assignment);

} // namespace licore::cli
