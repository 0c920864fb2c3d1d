// units.hpp - conversion between user-facing units and the internal scaled units
//
// Internal convention: hbar = k_B = 1, time measured in picoseconds. Every
// frequency, rate, energy and temperature is therefore an angular frequency
// in rad/ps, and power is energy per ps (hbar * rad/ps^2). Lengths stay in mm.

#pragma once

#include <string_view>

namespace licore::units {

inline constexpr double pi = 3.141592653589793238462643383279502884;

// CODATA 2018 exact / recommended values, SI.
inline constexpr double hbar_si = 1.054571817e-34;   // J s
inline constexpr double planck_si = 6.62607015e-34;  // J s
inline constexpr double boltzmann_si = 1.380649e-23; // J / K
inline constexpr double light_speed_si = 299792458.0; // m / s
inline constexpr double atomic_mass_unit_si = 1.66053906660e-27; // kg

inline constexpr double seconds_per_internal_time = 1e-12;

enum class Unit { THz, Kelvin, Watt, Millimeter, Dimensionless };

// Parses "THz", "K", "W", "mm" or "" / "1" / "dimensionless".
Unit parse_unit(std::string_view tag);
std::string_view unit_tag(Unit unit);

// Multiplicative factor taking a value in `unit` to internal units.
double scale_to_internal(Unit unit);

inline double to_internal(double value, Unit unit) { return value * scale_to_internal(unit); }
inline double from_internal(double value, Unit unit) { return value / scale_to_internal(unit); }

double to_internal(double value, std::string_view unit_tag);
double from_internal(double value, std::string_view unit_tag);

// Ordinary frequency k_B T / h in THz for a temperature in kelvin.
double thermal_frequency_thz(double kelvin);

// Internal power -> watts.
inline double power_to_watt(double internal) { return from_internal(internal, Unit::Watt); }
inline double power_from_watt(double watt) { return to_internal(watt, Unit::Watt); }
inline double freq_from_thz(double thz) { return to_internal(thz, Unit::THz); }
inline double freq_to_thz(double internal) { return from_internal(internal, Unit::THz); }
inline double temp_from_kelvin(double k) { return to_internal(k, Unit::Kelvin); }
inline double temp_to_kelvin(double internal) { return from_internal(internal, Unit::Kelvin); }

} // namespace licore::units
