#pragma once

// Instantaneous longitudinal mode functions, the intermode coupling matrix
// and field reconstruction from the Hertz scalars.
//
// A TE mode is  left * sin(k z)       on [0, eta]
//               right * sin(k (1-z))  on [eta, 1]
// and a TM mode uses cos in place of sin. (In the A/sqrt(d), B/sqrt(L_z-d)
// normalization the amplitudes are A = left * sqrt(eta), B = right *
// sqrt(1-eta).) Sheet conditions at z = eta:
//   TE: Psi continuous,   Psi'(eta+) - Psi'(eta-) = V Psi(eta)
//   TM: Phi' continuous,  Phi(eta+) - Phi(eta-)   = (V / kp^2) Phi'(eta)
// The overall sign is fixed by left > 0; left never vanishes for k > 0, so
// this gauge is continuous along every branch.

#include "dce/spectrum.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <vector>

namespace dce {

enum class Side { Left, Right };

struct LongitudinalMode {
    Polarization polarization = Polarization::TE;
    int branch = 1;
    double k = 0.0;
    double eta = 0.5;
    double left = 0.0;
    double right = 0.0;

    // At z == eta the `side` argument picks the one-sided limit.
    double value(double z, Side side = Side::Left) const;
    double slope(double z, Side side = Side::Left) const;
};

// Mode together with its time derivative along the branch.
struct ModeWithRates {
    LongitudinalMode mode;
    double dk_dt = 0.0;
    double dleft_dt = 0.0;
    double dright_dt = 0.0;

    // d/dt of the mode function at fixed z.
    double time_derivative(double z) const;
};

// (k, V) must solve the eigenvalue relation for branch p. Throws
// DegenerateMatchingError when neither sheet condition pins the amplitudes.
LongitudinalMode build_mode(int p, double k, double V, const CavityConfig& cfg);

ModeWithRates build_mode_with_rates(int p, double k, double V, double dk_dt, double dV_dt,
                                    const CavityConfig& cfg);

std::vector<ModeWithRates> instantaneous_modes(const InstantSpectrum& s, const CavityConfig& cfg);

enum class Trig { Sin, Cos };

// Integral over [0, length] of x^weight f(alpha x) g(beta x), weight 0 or 1,
// in closed form (series near alpha = +-beta).
double product_integral(Trig f, double alpha, Trig g, double beta, double length, int weight);

enum class CouplingMethod { ClosedForm, Quadrature };

// M(m, n) = integral of (d/dt Psi_m) Psi_n over [0, 1]; indices are mode
// indices of the config. The TM zero-mode row and column are exactly zero.
struct CouplingMatrix {
    double t = 0.0;
    Eigen::MatrixXd m;
};

CouplingMatrix coupling_matrix(const InstantSpectrum& s, const CavityConfig& cfg,
                               CouplingMethod method = CouplingMethod::ClosedForm);

// Solves the spectrum at t from scratch and builds M there.
CouplingMatrix coupling_matrix(double t, const PulseProfile& profile, const CavityConfig& cfg,
                               CouplingMethod method = CouplingMethod::ClosedForm);

struct CylindricalPoint {
    double rho = 0.0;
    double phi = 0.0;
    double z = 0.0;
};

// Components in the (rho, phi, z) basis, for time dependence e^{-i omega t}
// at t = 0 and eps = mu = 1.
struct FieldSample {
    std::array<std::complex<double>, 3> e{};
    std::array<std::complex<double>, 3> b{};
};

// E and B generated by a single Hertz-scalar mode transverse x longitudinal.
// The scalar is the magnetic one (TE) or the electric one (TM) according to
// the polarization of the modes. Throws DomainError outside the cavity or if
// the two polarizations disagree.
FieldSample reconstruct_fields(const TransverseMode& transverse, const LongitudinalMode& longitudinal,
                               double omega, const CylindricalPoint& point);

} // namespace dce
