#include "licore/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "licore/errors.hpp"
#include "licore/units.hpp"

namespace licore {

double boltzmann_weight(double omega, double temperature) noexcept {
    if (temperature <= 0.0) return omega > 0.0 ? 0.0 : (omega == 0.0 ? 1.0 : std::numeric_limits<double>::infinity());
    return std::exp(-omega / temperature);
}

FlatHotSpectrum::FlatHotSpectrum(double plateau, double temperature) : plateau_(plateau), temperature_(temperature) {
    if (!(plateau > 0.0) || !std::isfinite(plateau)) throw InvalidInput("flat spectrum: plateau G0 must be positive");
    if (!(temperature > 0.0) || !std::isfinite(temperature))
        throw InvalidInput("flat spectrum: temperature must be positive");
}

double FlatHotSpectrum::operator()(double omega) const noexcept {
    if (omega >= 0.0) return plateau_;
    return plateau_ * boltzmann_weight(-omega, temperature_);
}

CubicColdSpectrum::CubicColdSpectrum(double gamma, double omega0, double temperature)
    : gamma_(gamma), omega0_(omega0), temperature_(temperature) {
    if (!(gamma >= 0.0)) throw InvalidInput("cubic spectrum: gamma must be non-negative");
    if (!(omega0 > 0.0)) throw InvalidInput("cubic spectrum: omega0 must be positive");
    if (!(temperature >= 0.0) || !std::isfinite(temperature))
        throw InvalidInput("cubic spectrum: temperature must be non-negative");
}

double CubicColdSpectrum::operator()(double omega) const noexcept {
    if (omega == 0.0) return 0.0;
    const double w = std::abs(omega);
    const double x = w / omega0_;
    const double emission = gamma_ * x * x * x;
    if (omega > 0.0) return emission;
    return emission * boltzmann_weight(w, temperature_);
}

TabulatedSpectrum::TabulatedSpectrum(std::vector<Node> nodes, double temperature, bool)
    : nodes_(std::move(nodes)), temperature_(temperature) {
    if (nodes_.size() < 2) throw InvalidInput("tabulated spectrum: need at least two rows");
    if (!(temperature >= 0.0)) throw InvalidInput("tabulated spectrum: temperature must be non-negative");
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (!std::isfinite(nodes_[i].omega) || !std::isfinite(nodes_[i].value))
            throw InvalidInput("tabulated spectrum: non-finite entry");
        if (nodes_[i].value < 0.0) throw InvalidInput("tabulated spectrum: negative rate");
        if (i > 0 && !(nodes_[i].omega > nodes_[i - 1].omega))
            throw InvalidInput("tabulated spectrum: omega must be strictly increasing");
    }
}

TabulatedSpectrum::TabulatedSpectrum(std::vector<Node> nodes, double temperature, double kms_tolerance)
    : TabulatedSpectrum(std::move(nodes), temperature, true) {
    const auto grid = mirrored_grid();
    if (grid.empty())
        throw InvalidInput("tabulated spectrum: table must cover both signs of omega for the KMS check");
    const double violation = kms_check(BathSpectrum{unchecked(nodes_, temperature_)}, grid);
    if (!(violation <= kms_tolerance)) {
        std::ostringstream os;
        os << "tabulated spectrum violates KMS detailed balance (relative violation " << violation
           << " > " << kms_tolerance << ")";
        throw InvalidInput(os.str());
    }
}

TabulatedSpectrum TabulatedSpectrum::unchecked(std::vector<Node> nodes, double temperature) {
    return TabulatedSpectrum(std::move(nodes), temperature, true);
}

double TabulatedSpectrum::operator()(double omega) const noexcept {
    if (omega <= nodes_.front().omega) return nodes_.front().value;
    if (omega >= nodes_.back().omega) return nodes_.back().value;
    const auto hi = std::upper_bound(nodes_.begin(), nodes_.end(), omega,
                                     [](double w, const Node& n) { return w < n.omega; });
    const auto lo = hi - 1;
    const double t = (omega - lo->omega) / (hi->omega - lo->omega);
    return lo->value + t * (hi->value - lo->value);
}

std::vector<double> TabulatedSpectrum::mirrored_grid() const {
    std::vector<double> grid;
    const double lowest = nodes_.front().omega;
    for (const auto& n : nodes_)
        if (n.omega > 0.0 && -n.omega >= lowest) grid.push_back(n.omega);
    return grid;
}

double evaluate(const BathSpectrum& spectrum, double omega) {
    return std::visit([omega](const auto& s) { return s(omega); }, spectrum);
}

double temperature(const BathSpectrum& spectrum) {
    return std::visit([](const auto& s) { return s.temperature(); }, spectrum);
}

double kms_check(const BathSpectrum& spectrum, std::span<const double> positive_omegas) {
    if (positive_omegas.empty()) throw InvalidInput("kms_check: empty frequency grid");
    const double t = temperature(spectrum);
    const double floor = std::numeric_limits<double>::min();
    double worst = 0.0;
    for (double w : positive_omegas) {
        if (!(w > 0.0)) throw InvalidInput("kms_check: grid frequencies must be positive");
        const double expected = boltzmann_weight(w, t) * evaluate(spectrum, w);
        const double actual = evaluate(spectrum, -w);
        worst = std::max(worst, std::abs(actual - expected) / std::max(expected, floor));
    }
    return worst;
}

TabulatedSpectrum load_spectrum_csv(const std::filesystem::path& path, double temperature, double kms_tolerance) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open spectrum file " + path.string());
    std::string line;
    bool header_seen = false;
    std::vector<TabulatedSpectrum::Node> nodes;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        if (!header_seen) {
            if (line != "omega_thz,g_rate")
                throw InvalidInput(path.string() + ": expected header 'omega_thz,g_rate'");
            header_seen = true;
            continue;
        }
        std::istringstream row(line);
        row.imbue(std::locale::classic());
        double w = 0.0, g = 0.0;
        char comma = 0;
        if (!(row >> w >> comma >> g) || comma != ',')
            throw InvalidInput(path.string() + ":" + std::to_string(lineno) + ": malformed row");
        nodes.push_back({units::freq_from_thz(w), units::freq_from_thz(g)});
    }
    if (!header_seen) throw InvalidInput(path.string() + ": missing header");
    return TabulatedSpectrum(std::move(nodes), temperature, kms_tolerance);
}

} // namespace licore
