#include "licore/units.hpp"

#include <string>

#include "licore/errors.hpp"

namespace licore::units {

Unit parse_unit(std::string_view tag) {
    if (tag == "THz") return Unit::THz;
    if (tag == "K") return Unit::Kelvin;
    if (tag == "W") return Unit::Watt;
    if (tag == "mm") return Unit::Millimeter;
    if (tag.empty() || tag == "1" || tag == "dimensionless") return Unit::Dimensionless;
    throw InvalidInput("unknown unit tag '" + std::string(tag) + "' (expected THz, K, W, mm or dimensionless)");
}

std::string_view unit_tag(Unit unit) {
    switch (unit) {
        case Unit::THz: return "THz";
        case Unit::Kelvin: return "K";
        case Unit::Watt: return "W";
        case Unit::Millimeter: return "mm";
        case Unit::Dimensionless: return "dimensionless";
    }
    return "dimensionless";
}

double scale_to_internal(Unit unit) {
    switch (unit) {
        // 1 THz ordinary frequency = 2 pi rad/ps
        case Unit::THz: return 2.0 * pi;
        // k_B T / hbar in rad/s, then to rad/ps
        case Unit::Kelvin: return boltzmann_si / hbar_si * seconds_per_internal_time;
        // energy unit hbar * rad/ps, time unit ps
        case Unit::Watt: return 1.0 / (hbar_si / (seconds_per_internal_time * seconds_per_internal_time));
        case Unit::Millimeter: return 1.0;
        case Unit::Dimensionless: return 1.0;
    }
    return 1.0;
}

double to_internal(double value, std::string_view tag) { return to_internal(value, parse_unit(tag)); }
double from_internal(double value, std::string_view tag) { return from_internal(value, parse_unit(tag)); }

double thermal_frequency_thz(double kelvin) { return boltzmann_si * kelvin / planck_si * 1e-12; }

} // namespace licore::units
