#pragma once

// Bessel functions of integer order, their zeros, and the normalized
// transverse eigenfunctions of a circular cross-section.
//
// Index convention: TransverseMode{n, m} has angular order n and uses the
// m-th positive zero (m = 1, 2, ...) of J_n (TM) or J_n' (TE). The zero at
// the origin of J_n' for n >= 2 (and of J_0') is not counted.

#include <complex>

namespace dce {

enum class Polarization { TE, TM };

const char* to_string(Polarization pol) noexcept;

// J_n(x) for n >= 0, x >= 0. Power series below x = 12, Miller backward
// recurrence above.
double bessel_j(int n, double x);

// dJ_n/dx.
double bessel_j_prime(int n, double x);

enum class BesselZeroKind { J, JPrime };

// m-th positive zero of J_n (kind J) or J_n' (kind JPrime), m >= 1.
double bessel_root(BesselZeroKind kind, int n, int m);

struct TransverseMode {
    Polarization polarization = Polarization::TM;
    int n = 0;         // angular order
    int m = 1;         // radial ordinal
    double root = 0.0; // y_nm (TE) or x_nm (TM)
    double radius = 1.0;

    double k_perp() const noexcept { return root / radius; }
};

// Builds the mode and its Bessel zero. Throws DomainError for n < 0, m < 1
// or radius <= 0.
TransverseMode make_transverse_mode(Polarization pol, int n, int m, double radius);

// v_nm (TE) or r_nm (TM) including e^{i n phi}; unit norm over the disc.
// Throws DomainError outside 0 <= rho <= radius.
std::complex<double> transverse_eigenfunction(const TransverseMode& mode, double rho, double phi);

// Radial factor J_n(root rho / R) times the normalization constant, and its
// rho-derivative, without the angular phase.
double transverse_radial(const TransverseMode& mode, double rho);
double transverse_radial_derivative(const TransverseMode& mode, double rho);
// transverse_radial(rho) / rho, finite on the axis.
double transverse_radial_over_rho(const TransverseMode& mode, double rho);

} // namespace dce
