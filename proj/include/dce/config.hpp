#pragma once

// Run configuration in lab units (mm, ps) and its text format.
//
// One `section.key = value` per line; `#` starts a comment; blank lines are
// ignored. Lists are comma separated. Every key is optional and unknown keys
// are rejected. Keys and defaults:
//
//   geometry.length_mm = 100        geometry.radius_mm = 25
//   geometry.eta = 0.5
//   mode.polarization = TM          mode.n = 0          mode.m = 1
//   mode.ell_max = 51
//   pulse.period_ps = 113           pulse.v_max_lz = 5000
//   pulse.n_pulses = 10             pulse.t_start_ps = 0
//   pulse.sigma_e_ps, pulse.plateau_ps, pulse.sigma_tau_ps
//       (all three or none; none selects the 40/20/40 split)
//   integrator.step_divisor = 4096  integrator.max_step_ps = period/divisor
//   integrator.duration_ps = n_pulses * period
//   output.sample_every = 256       output.field_free_only = false
//   output.spectrum_samples = 400   output.coupling_samples = 32
//       (the last two count samples per period)
//   output.train_interval_ms        unset; if given, evolve reports photons/s
//   sweep.periods_ps = 102, 103, ...
//   sweep.etas = 0.3, 0.4, ...
//   sweep.eta_periods_ps = 0.4:107, ...   per-eta period override
//   losses.tau_ps = 10              losses.delta_d_um = 50
//   losses.m_eff = 0.067            (electron masses)
//   losses.omega0 = driven mode     (1e9 rad/s)
//   losses.n_s = from pulse.v_max_lz (1/m^2)

#include "dce/evolve.hpp"
#include "dce/losses.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dce {

struct PulseWidths {
    double sigma_e_ps = 0.0;
    double plateau_ps = 0.0;
    double sigma_tau_ps = 0.0;
};

struct RunConfig {
    double length_mm = 100.0;
    double radius_mm = 25.0;
    double eta = 0.5;

    Polarization polarization = Polarization::TM;
    int n = 0;
    int m = 1;
    int ell_max = 51;

    double period_ps = 113.0;
    double v_max_lz = 5000.0;
    int n_pulses = 10;
    double t_start_ps = 0.0;
    std::optional<PulseWidths> widths;

    int step_divisor = 4096;
    std::optional<double> max_step_ps;
    std::optional<double> duration_ps;

    int sample_every = 256;
    bool field_free_only = false;
    int spectrum_samples = 400;
    int coupling_samples = 32;
    std::optional<double> train_interval_ms; // repetition of the whole train

    std::vector<double> sweep_periods_ps;
    std::vector<double> sweep_etas;
    std::vector<std::pair<double, double>> eta_periods_ps;

    std::vector<double> tau_ps{10.0};
    std::vector<double> delta_d_um{50.0};
    double m_eff = 0.067;
    std::optional<double> omega0_grad_s; // 1e9 rad/s
    std::optional<double> n_s;

    // Natural-unit views. These throw DomainError on inconsistent values,
    // which parse_config turns into ConfigError.
    CavityConfig cavity() const;
    PulseProfile profile() const;
    RunOptions run_options() const;
    double max_step() const; // natural units
    double time_unit_ps() const;
};

// Parses and validates. Throws ConfigError carrying the line of the
// offending entry, or line 0 for cross-field validation failures.
RunConfig parse_config(const std::string& text);

RunConfig load_config(const std::string& path);

// Applies `section.key=value` overrides, e.g. from the command line, on top
// of an existing config and revalidates.
RunConfig apply_overrides(const RunConfig& base, const std::vector<std::string>& assignments);

// Cross-field validation only. Throws ConfigError.
void validate(const RunConfig& cfg);

} // namespace dce
