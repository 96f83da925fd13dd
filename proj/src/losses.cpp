#include "dce/losses.hpp"

#include "dce/errors.hpp"

#include <cmath>

namespace dce {

void validate(const DrudeParams& p) {
    if (!(p.n_s > 0.0))
        throw DomainError("n_s must be positive");
    if (!(p.delta_d > 0.0))
        throw DomainError("delta_d must be positive");
    if (!(p.tau > 0.0))
        throw DomainError("tau must be positive");
    if (!(p.m_eff > 0.0))
        throw DomainError("effective mass must be positive");
    if (!(p.charge > 0.0))
        throw DomainError("charge must be positive");
}

std::complex<double> susceptibility_freq(const DrudeParams& p, double omega) {
    if (!(omega > 0.0))
        throw DomainError("susceptibility_freq needs omega > 0");
    const double strength = p.n_v() * p.charge * p.charge / p.m_eff;
    return -strength / (omega * std::complex<double>(omega, 1.0 / p.tau));
}

double susceptibility_time(const DrudeParams& p, double dt) {
    if (dt < 0.0)
        return 0.0;
    return p.n_v() * p.charge * p.charge * p.tau / p.m_eff * std::exp(-dt / p.tau);
}

std::complex<double> polarization_single_mode(const DrudeParams& p, double E0, double omega0, double t) {
    if (!(omega0 > 0.0))
        throw DomainError("polarization_single_mode needs omega0 > 0");
    const double prefactor = E0 * p.delta_d * p.n_s * p.charge * p.charge * p.tau / p.m_eff;
    return prefactor / std::complex<double>(1.0 / p.tau, -omega0) * std::polar(1.0, -omega0 * t);
}

LossReport loss_report(const DrudeParams& p, double omega0, Polarization pol) {
    validate(p);
    LossReport r;
    r.polarization = pol;
    r.omega0 = omega0;
    r.ratio = omega0 * p.tau;
    r.low_loss = r.ratio < kLowLossThreshold;
    r.ratio_per_tau = omega0;
    if (pol == Polarization::TE) {
        r.polarization_channel = false;
        return r;
    }
    r.P = polarization_single_mode(p, 1.0, omega0, 0.0);
    r.dissipative_per_delta_d = r.P.imag() / p.delta_d;
    return r;
}

double sheet_strength_si(double n_s, double m_eff) {
    return si::mu0 * si::elementary_charge * si::elementary_charge * n_s / m_eff;
}

double areal_density_for(double v_si, double m_eff) {
    return v_si * m_eff / (si::mu0 * si::elementary_charge * si::elementary_charge);
}

double areal_density_for_natural(double v_times_lz, double length_mm, double m_eff) {
    if (!(length_mm > 0.0))
        throw DomainError("cavity length must be positive");
    return areal_density_for(v_times_lz / (length_mm * 1e-3), m_eff);
}

} // namespace dce
