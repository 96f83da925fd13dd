#pragma once

// Longitudinal spectrum of the cavity with a plasma sheet at z = eta (natural
// units, L_z = 1). For sheet strength V the wavenumbers k_p are the zeros of
//
//   TE:  F(k) = k sin k + V sin(k(1-eta)) sin(k eta)
//   TM:  F(k) = kp^2 sin k - V k sin(k(1-eta)) sin(k eta)
//
// (kp = transverse wavenumber). Clearing the denominators keeps the roots
// where the mode has a node (TE) or a flat slope (TM) at the sheet.
// Branch p is confined to [p pi, (p+1) pi) for TE and ((p-1) pi, p pi] for
// TM; TM also carries the zero mode p = 0 with k = 0.

#include "dce/pulse.hpp"
#include "dce/transverse.hpp"

#include <numbers>
#include <vector>

namespace dce {

struct CavityConfig {
    double radius = 0.25; // R / L_z
    double eta = 0.5;     // sheet position d / L_z
    TransverseMode transverse;
    int ell_max = 1;

    Polarization polarization() const noexcept { return transverse.polarization; }
    double k_perp() const noexcept { return transverse.k_perp(); }
    int first_branch() const noexcept { return polarization() == Polarization::TM ? 0 : 1; }
    int mode_count() const noexcept { return ell_max + 1 - first_branch(); }
    int branch_of(int index) const noexcept { return index + first_branch(); }
};

// Validates and fills the transverse zero. Throws DomainError.
CavityConfig make_cavity(Polarization pol, int n, int m, double radius, double eta, int ell_max);

struct ResidualValue {
    double f = 0.0;
    double df_dk = 0.0;
    double df_dv = 0.0;
};

double residual(double k, double V, const CavityConfig& cfg);
ResidualValue residual_with_partials(double k, double V, const CavityConfig& cfg);

// Static wavenumber p pi.
inline double static_wavenumber(int p) { return p * std::numbers::pi; }

// Root of branch p >= 1 at strength V, started from k_prev. Throws
// NoRootError when the confinement interval shows no sign change and
// ConvergenceError if the iteration stalls.
double solve_branch(int p, double V, double k_prev, const CavityConfig& cfg);

// dk/dt along a branch by implicit differentiation of F(k, V) = 0.
// Throws StationaryDenominatorError at a degenerate root.
double dk_dt(double k, double V, double dV_dt, const CavityConfig& cfg);

double angular_frequency(double k, const CavityConfig& cfg);

// Spectrum at one instant, indexed by mode index (branch = index + first_branch).
struct InstantSpectrum {
    double t = 0.0;
    double v = 0.0;
    double dv_dt = 0.0;
    std::vector<double> k;
    std::vector<double> dk_dt;
    std::vector<double> omega;
};

// Solves every branch. `warm` (same config) seeds the root iterations.
InstantSpectrum solve_spectrum(double t, double V, double dV_dt, const CavityConfig& cfg,
                               const InstantSpectrum* warm = nullptr);

InstantSpectrum static_spectrum(const CavityConfig& cfg);

struct SpectrumTrajectory {
    std::vector<int> branches;
    std::vector<double> times;
    std::vector<std::vector<double>> k;     // [mode index][time]
    std::vector<std::vector<double>> dk_dt; // same shape
    std::vector<std::vector<double>> omega; // same shape
};

// Samples the spectrum from the start to the end of the pulse train with the
// given step, continuing each branch from the previous sample. Solver errors
// are rethrown with the offending branch and time.
SpectrumTrajectory trajectory(const PulseProfile& profile, const CavityConfig& cfg, double sample_step);

} // namespace dce
