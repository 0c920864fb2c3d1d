// cell.hpp - from single-atom currents to a laser-irradiated gas cell
//
// The laser power decays as P(z) = P_L exp(-alpha z) along the cell. Because
// the pumping rate scales with g^2, i.e. with local power, each slice sees
// g(z)^2 = g(0)^2 exp(-alpha z); in the linear regime the local current is
// then exp(-alpha z) J_H(P_L).

#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "licore/atom.hpp"
#include "licore/batch.hpp"
#include "licore/rate_model.hpp"
#include "licore/spectra.hpp"

namespace licore {

struct CellConfig {
    double length_mm = 10.0;
    double alpha_per_mm = 1.0 / 9.0;
    double linear_density_per_mm = 1.0;
    double laser_power_watt = 1.0;
    double temperature_k = 500.0;

    static CellConfig with_absorption_length(double length_mm, double absorption_length_mm,
                                             double linear_density_per_mm, double laser_power_watt,
                                             double temperature_k);

    void validate() const;
    double atom_number() const { return linear_density_per_mm * length_mm; }
    // 1 - exp(-alpha L)
    double absorption_fraction() const;
};

struct AbsorptionRow {
    double nu_thz;
    double absorption;
};

struct AbsorptionDataset {
    std::vector<AbsorptionRow> rows;
    std::map<std::string, std::string> metadata; // from "# key: value" comment lines

    void validate() const;
    // Linear interpolation in nu, clamped to the end rows.
    double absorption_at(double nu_thz) const;
};

AbsorptionDataset load_absorption_csv(const std::filesystem::path& path);
void write_absorption_csv(const AbsorptionDataset& data, const std::filesystem::path& path);

// Adaptive Gauss-Kronrod over [0, length].
double integrate_along_cell(const std::function<double(double)>& f, double length, double rel_tol = 1e-10);

enum class LocalModel { Rate, Floquet, Auto };

// Per-atom flow at the cell entrance power; Auto picks the rate model when
// g/|delta| <= weak_drive_validity_ratio and the Floquet solver otherwise.
struct LocalFlow {
    EnergyFlowReport flow;
    LocalModel used;
};
LocalFlow local_flow(const AtomDriveConfig& cfg, const BathSpectrum& hot, LocalModel model);

struct CellTotals {
    double j_hot;  // internal power
    double p_abs;  // internal power
    LocalModel used;
};

// (N_a/L) * integral over the cell of the local flows at attenuated power.
CellTotals integrate_cell(const CellConfig& cell, double alpha_per_mm, const AtomDriveConfig& cfg,
                          const BathSpectrum& hot, LocalModel model = LocalModel::Auto);

// Convenience returning only J_H,tot (internal units), rate model.
double integrated_cooling_power(const CellConfig& cell, const AtomDriveConfig& cfg, const BathSpectrum& hot);

// P_L a(nu) delta / nu, in the unit of laser_power.
double experimental_heat_current(double laser_power, double absorption, double delta, double nu);

// Model cell absorption 1 - exp(-N_a P_abs(P_L) / P_L) with the per-atom
// absorbed power from the weak-drive rate model.
double model_absorption(const CellConfig& cell, const AtomDriveConfig& cfg, double g0);

struct CalibrationOptions {
    std::vector<double> reference_nu_thz; // empty: every usable row
    double match_tolerance_thz = 1e-9;
};

struct CalibrationResult {
    double g0;            // internal rate units
    double rms_residual;  // RMS of model - measured absorption over fitted rows
    std::vector<AbsorptionRow> fitted_rows;
    std::vector<double> model_absorption;
    int iterations = 0;
};

// Least-squares fit of the flat-spectrum plateau G0 to measured absorption.
// cfg_template supplies omega0, gamma and the entrance coupling g; the laser
// frequency is taken from each row.
CalibrationResult calibrate_g0(const AbsorptionDataset& data, const AtomDriveConfig& cfg_template,
                               const CellConfig& cell, const CalibrationOptions& options = {});

struct ScanRow {
    double delta;          // internal
    double j_hot;          // internal power, cell total
    std::optional<double> j_hot_exp; // internal power
    double p_abs;          // internal power
    double eta;
    Regime regime = Regime::Neutral;
    std::string model;     // "rate", "floquet" or "invalid"
    double alpha_per_mm = 0.0;
    bool flagged = false;
    std::string note;
};

struct ScanResult {
    double g0;
    std::vector<ScanRow> rows;
};

struct ScanOptions {
    batch::Execution execution = batch::Execution::Parallel;
    int jobs = 0;
};

// hot must be a FlatHotSpectrum or tabulated spectrum at the cell temperature.
ScanResult detuning_scan(const CellConfig& cell, const AtomDriveConfig& cfg_template, const BathSpectrum& hot,
                         const std::vector<double>& deltas, const AbsorptionDataset* data = nullptr,
                         const ScanOptions& options = {});

} // namespace licore
