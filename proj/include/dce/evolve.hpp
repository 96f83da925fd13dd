#pragma once

// Time evolution of the instantaneous-basis amplitudes and the Bogolyubov
// coefficients they define.
//
// With Psi(t) = sum_n P_n(t) psi_n(t) the amplitudes obey
//   d/dt P_n = Q_n - sum_m M_mn P_m
//   d/dt Q_n = -omega_n^2 P_n + sum_m M_nm Q_m
// where Q_n = d/dt P_n + sum_m M_mn P_m is the projection of d/dt Psi onto
// psi_n. Eliminating Q gives the familiar second-order coupled equations;
// the first-order form needs no derivative of M.
//
// Column s of P is the out-solution that starts as the stationary mode s,
// P_m^(s)(t0) = delta_ms / sqrt(2 omega_s), d/dt P = -i omega P.
// Internally each complex column is carried as two real solutions.

#include "dce/modes.hpp"

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace dce {

struct EvolutionState {
    double t = 0.0;
    Eigen::MatrixXd p; // [mode][real part columns | imaginary part columns]
    Eigen::MatrixXd q; // same layout
    InstantSpectrum spectrum;
    Eigen::MatrixXd coupling; // M at t

    int modes() const noexcept { return static_cast<int>(p.rows()); }
    Eigen::MatrixXcd P() const;
    Eigen::MatrixXcd Pdot() const;
};

struct BogolyubovResult {
    Eigen::MatrixXcd alpha;
    Eigen::MatrixXcd beta;
    Eigen::VectorXd N;
    Eigen::VectorXd unitarity_defect;
};

// Stationary in-state at t0 (default: the start of the pulse train). Throws
// NonzeroInitialStrengthError unless V(t0) = 0.
EvolutionState initial_state(const CavityConfig& cfg, const PulseProfile& profile);
EvolutionState initial_state(const CavityConfig& cfg, const PulseProfile& profile, double t0);

// One classical RK4 step of size dt. Throws StepRejectedError if dt exceeds
// max_step or the new state is not finite; the state is left unchanged then.
void step(EvolutionState& state, const PulseProfile& profile, const CavityConfig& cfg, double dt,
          double max_step);

BogolyubovResult bogolyubov(const EvolutionState& state);

struct RunOptions {
    int step_divisor = 4096;   // steps per pulse period
    int sample_every = 256;    // output cadence in steps
    bool field_free_only = false; // sample once per period, between pulses, ignoring sample_every
    double duration = -1.0;    // natural units; negative means the pulse train
};

struct RunSample {
    double t = 0.0;
    bool field_free = false; // V = 0 at a period boundary
    Eigen::VectorXd N;
    Eigen::VectorXd defect;
};

struct RunResult {
    std::vector<int> branches;
    std::vector<RunSample> samples;
    BogolyubovResult final;
    double final_time = 0.0;
    double max_defect = 0.0; // over every step, not just the samples
    long steps = 0;
};

// The first and last instants are always sampled.
RunResult run(const CavityConfig& cfg, const PulseProfile& profile, const RunOptions& options = {});

// Photons per second when one train yielding `per_train` repeats every
// `train_interval_s` seconds. Throws DomainError unless the interval is positive.
Eigen::VectorXd creation_rate(const Eigen::VectorXd& per_train, double train_interval_s);

} // namespace dce
