#pragma once

// Drude-model estimate of polarization losses in the irradiated layer.
// This is the only module working in SI units (m, s, kg, C); the helpers at
// the bottom convert to and from the natural units of the cavity core.

#include "dce/transverse.hpp"

#include <complex>

namespace dce {

namespace si { // CODATA 2022
inline constexpr double elementary_charge = 1.602176634e-19; // C
inline constexpr double electron_mass = 9.1093837139e-31;    // kg
inline constexpr double mu0 = 1.25663706127e-6;             // H/m
inline constexpr double speed_of_light = 299792458.0;       // m/s
} // namespace si

struct DrudeParams {
    double n_s = 0.0;       // areal carrier density, 1/m^2
    double delta_d = 50e-6; // penetration depth, m
    double tau = 10e-12;    // relaxation time, s
    double m_eff = 0.067 * si::electron_mass;
    double charge = si::elementary_charge;

    // Volume density taken as delta_d * n_s.
    double n_v() const noexcept { return delta_d * n_s; }
};

// Throws DomainError unless every field is positive.
void validate(const DrudeParams& params);

// chi(omega) = -(n_v e^2 / m) / (omega (omega + i / tau)), omega > 0 in rad/s.
std::complex<double> susceptibility_freq(const DrudeParams& params, double omega);

// Causal kernel (n_v e^2 tau / m) exp(-dt / tau) for dt >= 0, and 0 for dt < 0.
double susceptibility_time(const DrudeParams& params, double dt);

// Response to E0 exp(-i omega0 t) switched on in the remote past.
std::complex<double> polarization_single_mode(const DrudeParams& params, double E0, double omega0, double t);

inline constexpr double kLowLossThreshold = 0.1;

struct LossReport {
    Polarization polarization = Polarization::TM;
    double omega0 = 0.0;           // rad/s
    std::complex<double> P;        // response to a unit field at t = 0
    double ratio = 0.0;            // Im P / Re P = omega0 tau
    bool low_loss = false;         // omega0 tau < kLowLossThreshold
    bool polarization_channel = true; // false for TE: nothing to dissipate
    double dissipative_per_delta_d = 0.0; // Im P / delta_d; Im P is linear in delta_d
    double ratio_per_tau = 0.0;    // d(ratio)/d(tau) = omega0
};

LossReport loss_report(const DrudeParams& params, double omega0, Polarization pol = Polarization::TM);

// Sheet strength V = mu0 e^2 n_s / m (1/m) for a given areal density and back.
double sheet_strength_si(double n_s, double m_eff = 0.067 * si::electron_mass);
double areal_density_for(double v_si, double m_eff = 0.067 * si::electron_mass);

// Natural units: V * L_z with L_z in mm.
double areal_density_for_natural(double v_times_lz, double length_mm,
                                 double m_eff = 0.067 * si::electron_mass);

} // namespace dce
