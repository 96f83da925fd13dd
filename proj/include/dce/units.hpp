#pragma once

// Natural units used throughout the core: c = 1 and lengths are measured in
// units of the cavity length L_z, so time is measured in L_z / c. Only the
// CLI boundary and the losses module see SI or lab units.

#include <numbers>

namespace dce::units {

inline constexpr double speed_of_light = 299792458.0; // m/s
inline constexpr double pi = std::numbers::pi;

// Duration of one natural time unit (L_z / c) in picoseconds.
constexpr double time_unit_ps(double length_mm) {
    return length_mm * 1e-3 / speed_of_light * 1e12;
}

constexpr double ps_to_natural(double t_ps, double length_mm) {
    return t_ps / time_unit_ps(length_mm);
}

constexpr double natural_to_ps(double t, double length_mm) {
    return t * time_unit_ps(length_mm);
}

// Angular frequency in natural units -> rad/s.
constexpr double angular_to_rad_per_s(double omega, double length_mm) {
    return omega * speed_of_light / (length_mm * 1e-3);
}

// Angular frequency in natural units -> ordinary frequency omega / 2pi in GHz.
constexpr double angular_to_ghz(double omega, double length_mm) {
    return angular_to_rad_per_s(omega, length_mm) / (2.0 * pi) * 1e-9;
}

} // namespace dce::units
