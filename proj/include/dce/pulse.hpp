#pragma once

// Periodic plasma-strength waveform V(t) of the irradiated sheet.
//
// One period is an excitation Gaussian rising to a flat top, the flat top
// itself, and a relaxation Gaussian falling back to zero:
//
//   |  rise (t_rise)  |  plateau (t_plateau)  |  fall (t_fall)  |
//
// Each Gaussian is truncated where it has dropped to `kGaussianFloor` of its
// peak and shifted/rescaled so that it starts (or ends) at exactly zero with
// the peak value v_max at the plateau. The fall segment is kGaussianCut
// widths long; the rise takes whatever is left of the period, which fixes
// the effective excitation width. Value is continuous everywhere; the
// remaining slope mismatch at the pulse junctions is of relative size
// kGaussianFloor.

#include <cmath>

namespace dce {

inline constexpr double kGaussianFloor = 1e-12;
// Number of widths after which exp(-x^2/2) drops to kGaussianFloor.
inline const double kGaussianCut = std::sqrt(-2.0 * std::log(kGaussianFloor));

class PulseProfile {
public:
    double value(double t) const;
    double derivative(double t) const;

    double sigma_e() const noexcept { return sigma_e_; }
    double sigma_tau() const noexcept { return sigma_tau_; }
    double t_plateau() const noexcept { return t_plateau_; }
    double t_rise() const noexcept { return t_rise_; }
    double t_fall() const noexcept { return t_fall_; }
    double period() const noexcept { return period_; }
    double v_max() const noexcept { return v_max_; }
    int n_pulses() const noexcept { return n_pulses_; }
    double t_start() const noexcept { return t_start_; }
    double t_end() const noexcept { return t_start_ + n_pulses_ * period_; }
    // Centre of the flat top of pulse j (0-based).
    double plateau_center(int j = 0) const noexcept {
        return t_start_ + j * period_ + t_rise_ + 0.5 * t_plateau_;
    }

private:
    friend PulseProfile build_profile(double, double, double, double, double, int, double);

    // Offset of t inside its pulse and whether t lies inside the train.
    bool locate(double t, double& s) const;

    double sigma_e_ = 0.0;   // effective (adjusted) excitation width
    double sigma_tau_ = 0.0;
    double t_plateau_ = 0.0;
    double t_rise_ = 0.0;
    double t_fall_ = 0.0;
    double period_ = 1.0;
    double v_max_ = 0.0;
    int n_pulses_ = 0;
    double t_start_ = 0.0;
};

// `sigma_e` is the smallest acceptable excitation width; the actual width is
// stretched so that rise + plateau + fall fills the period exactly.
// Throws DomainError on negative input and InconsistentDurationsError when
// the requested widths do not fit into one period.
PulseProfile build_profile(double sigma_e, double t_plateau, double sigma_tau, double period,
                           double v_max, int n_pulses, double t_start = 0.0);

// Default split of a period: 40% rise, 20% plateau, 40% fall.
PulseProfile default_profile(double period, double v_max, int n_pulses, double t_start = 0.0);

} // namespace dce
