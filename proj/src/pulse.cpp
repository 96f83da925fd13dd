#include "dce/pulse.hpp"

#include "dce/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dce {

namespace {

// Gaussian shifted and rescaled so it is 1 at `peak_offset` = 0 and exactly
// 0 at |offset| = kGaussianCut * sigma.
double shaped_gaussian(double offset, double sigma) {
    if (std::abs(offset) >= kGaussianCut * sigma * (1.0 - 1e-14))
        return 0.0;
    const double g = std::exp(-0.5 * (offset * offset) / (sigma * sigma));
    return std::max(0.0, (g - kGaussianFloor) / (1.0 - kGaussianFloor));
}

double shaped_gaussian_slope(double offset, double sigma) {
    if (std::abs(offset) >= kGaussianCut * sigma * (1.0 - 1e-14))
        return 0.0;
    const double g = std::exp(-0.5 * (offset * offset) / (sigma * sigma));
    return -offset / (sigma * sigma) * g / (1.0 - kGaussianFloor);
}

} // namespace

PulseProfile build_profile(double sigma_e, double t_plateau, double sigma_tau, double period,
                           double v_max, int n_pulses, double t_start) {
    if (!(period > 0.0))
        throw DomainError("pulse period must be positive");
    if (sigma_e < 0.0 || t_plateau < 0.0 || sigma_tau < 0.0)
        throw DomainError("pulse widths must be non-negative");
    if (v_max < 0.0)
        throw DomainError("peak strength v_max must be non-negative");
    if (n_pulses < 0)
        throw DomainError("number of pulses must be non-negative");
    if (!(sigma_tau > 0.0))
        throw InconsistentDurationsError("relaxation width must be positive for a smooth fall");

    const double fall = kGaussianCut * sigma_tau;
    const double rise = period - t_plateau - fall;
    if (rise < kGaussianCut * sigma_e * (1.0 - 1e-12) || !(rise > 0.0))
        throw InconsistentDurationsError(
            "period " + std::to_string(period) + " is shorter than rise + plateau + fall support " +
            std::to_string(kGaussianCut * (sigma_e + sigma_tau) + t_plateau));

    PulseProfile p;
    p.sigma_e_ = rise / kGaussianCut;
    p.sigma_tau_ = sigma_tau;
    p.t_plateau_ = t_plateau;
    p.t_rise_ = rise;
    p.t_fall_ = fall;
    p.period_ = period;
    p.v_max_ = v_max;
    p.n_pulses_ = n_pulses;
    p.t_start_ = t_start;
    return p;
}

PulseProfile default_profile(double period, double v_max, int n_pulses, double t_start) {
    const double sigma = 0.4 * period / kGaussianCut;
    return build_profile(sigma, 0.2 * period, sigma, period, v_max, n_pulses, t_start);
}

bool PulseProfile::locate(double t, double& s) const {
    if (t < t_start_)
        return false;
    const double u = t - t_start_;
    const double j = std::floor(u / period_);
    if (j >= n_pulses_)
        return false;
    s = u - j * period_;
    return true;
}

double PulseProfile::value(double t) const {
    double s = 0.0;
    if (v_max_ == 0.0 || !locate(t, s))
        return 0.0;
    if (s < t_rise_)
        return v_max_ * shaped_gaussian(s - t_rise_, sigma_e_);
    if (s <= t_rise_ + t_plateau_)
        return v_max_;
    return v_max_ * shaped_gaussian(s - t_rise_ - t_plateau_, sigma_tau_);
}

double PulseProfile::derivative(double t) const {
    double s = 0.0;
    if (v_max_ == 0.0 || !locate(t, s))
        return 0.0;
    if (s < t_rise_)
        return v_max_ * shaped_gaussian_slope(s - t_rise_, sigma_e_);
    if (s <= t_rise_ + t_plateau_)
        return 0.0;
    const double off = s - t_rise_ - t_plateau_;
    if (off >= t_fall_)
        return 0.0;
    return v_max_ * shaped_gaussian_slope(off, sigma_tau_);
}

} // namespace dce
