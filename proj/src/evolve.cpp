#include "dce/evolve.hpp"

#include "dce/errors.hpp"

#include <cmath>
#include <sstream>

namespace dce {

namespace {

struct Frame {
    InstantSpectrum spectrum;
    Eigen::MatrixXd m;
    Eigen::VectorXd omega2;
    bool coupled = false;
};

Frame make_frame(double t, const PulseProfile& profile, const CavityConfig& cfg, const InstantSpectrum* warm) {
    Frame f;
    try {
        f.spectrum = solve_spectrum(t, profile.value(t), profile.derivative(t), cfg, warm);
    } catch (const NumericalError& e) {
        std::ostringstream os;
        os << e.what() << " (t = " << t << ")";
        throw NumericalError(os.str());
    }
    f.m = coupling_matrix(f.spectrum, cfg).m;
    f.coupled = f.spectrum.dv_dt != 0.0;
    const int count = static_cast<int>(f.spectrum.omega.size());
    f.omega2.resize(count);
    for (int i = 0; i < count; ++i)
        f.omega2[i] = f.spectrum.omega[i] * f.spectrum.omega[i];
    return f;
}

void rhs(const Frame& f, const Eigen::MatrixXd& p, const Eigen::MatrixXd& q, Eigen::MatrixXd& dp,
         Eigen::MatrixXd& dq) {
    dp = q;
    dq.noalias() = -(f.omega2.asDiagonal() * p);
    if (f.coupled) {
        dp.noalias() -= f.m.transpose() * p;
        dq.noalias() += f.m * q;
    }
}

void defects_into(const EvolutionState& s, Eigen::VectorXd& out) {
    // sum_n |alpha_mn|^2 - |beta_mn|^2 = 2 Im(P conj(Q)) summed over columns
    const int k = s.modes();
    const auto pa = s.p.leftCols(k), pb = s.p.rightCols(k);
    const auto qa = s.q.leftCols(k), qb = s.q.rightCols(k);
    out = ((pb.cwiseProduct(qa) - pa.cwiseProduct(qb)).rowwise().sum() * 2.0).array() - 1.0;
    out = out.cwiseAbs();
}

bool is_field_free(double t, const PulseProfile& profile, long step_index, int divisor) {
    return step_index % divisor == 0 && profile.value(t) == 0.0;
}

} // namespace

Eigen::MatrixXcd EvolutionState::P() const {
    const int k = modes();
    Eigen::MatrixXcd out(k, k);
    out.real() = p.leftCols(k);
    out.imag() = p.rightCols(k);
    return out;
}

Eigen::MatrixXcd EvolutionState::Pdot() const {
    const int k = modes();
    const Eigen::MatrixXd dp = q - coupling.transpose() * p;
    Eigen::MatrixXcd out(k, k);
    out.real() = dp.leftCols(k);
    out.imag() = dp.rightCols(k);
    return out;
}

EvolutionState initial_state(const CavityConfig& cfg, const PulseProfile& profile) {
    return initial_state(cfg, profile, profile.t_start());
}

EvolutionState initial_state(const CavityConfig& cfg, const PulseProfile& profile, double t0) {
    if (profile.value(t0) != 0.0) {
        std::ostringstream os;
        os << "sheet strength at the start of the run is " << profile.value(t0) << ", not 0";
        throw NonzeroInitialStrengthError(os.str());
    }
    Frame f = make_frame(t0, profile, cfg, nullptr);
    const int k = cfg.mode_count();
    EvolutionState s;
    s.t = t0;
    s.p = Eigen::MatrixXd::Zero(k, 2 * k);
    s.q = Eigen::MatrixXd::Zero(k, 2 * k);
    for (int i = 0; i < k; ++i) {
        const double w = f.spectrum.omega[i];
        s.p(i, i) = 1.0 / std::sqrt(2.0 * w);
        s.q(i, k + i) = -std::sqrt(0.5 * w);
    }
    s.spectrum = std::move(f.spectrum);
    s.coupling = std::move(f.m);
    return s;
}

namespace {

// RK4 with the frame at the start of the step supplied by the caller; the
// frame at the end is returned through `end` for reuse.
void rk4(EvolutionState& state, const Frame& start, const PulseProfile& profile, const CavityConfig& cfg,
         double dt, double t_next, Frame& end) {
    const double t_mid = state.t + 0.5 * dt;
    const Frame mid = make_frame(t_mid, profile, cfg, &start.spectrum);
    end = make_frame(t_next, profile, cfg, &mid.spectrum);

    const Eigen::MatrixXd& p = state.p;
    const Eigen::MatrixXd& q = state.q;
    Eigen::MatrixXd k1p, k1q, k2p, k2q, k3p, k3q, k4p, k4q;
    rhs(start, p, q, k1p, k1q);
    rhs(mid, p + 0.5 * dt * k1p, q + 0.5 * dt * k1q, k2p, k2q);
    rhs(mid, p + 0.5 * dt * k2p, q + 0.5 * dt * k2q, k3p, k3q);
    rhs(end, p + dt * k3p, q + dt * k3q, k4p, k4q);

    Eigen::MatrixXd np = p + (dt / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    Eigen::MatrixXd nq = q + (dt / 6.0) * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
    if (!np.allFinite() || !nq.allFinite()) {
        std::ostringstream os;
        os << "non-finite amplitudes after the step at t = " << state.t;
        throw StepRejectedError(os.str());
    }
    state.p = std::move(np);
    state.q = std::move(nq);
    state.t = t_next;
    state.spectrum = end.spectrum;
    state.coupling = end.m;
}

Frame frame_of(const EvolutionState& s) {
    Frame f;
    f.spectrum = s.spectrum;
    f.m = s.coupling;
    f.coupled = s.spectrum.dv_dt != 0.0;
    f.omega2.resize(s.spectrum.omega.size());
    for (std::size_t i = 0; i < s.spectrum.omega.size(); ++i)
        f.omega2[i] = s.spectrum.omega[i] * s.spectrum.omega[i];
    return f;
}

void check_step(double dt, double max_step) {
    if (!(dt > 0.0) || dt > max_step * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "step " << dt << " outside (0, " << max_step << "]";
        throw StepRejectedError(os.str());
    }
}

} // namespace

void step(EvolutionState& state, const PulseProfile& profile, const CavityConfig& cfg, double dt,
          double max_step) {
    check_step(dt, max_step);
    Frame end;
    rk4(state, frame_of(state), profile, cfg, dt, state.t + dt, end);
}

BogolyubovResult bogolyubov(const EvolutionState& s) {
    const int k = s.modes();
    BogolyubovResult r;
    r.alpha.resize(k, k);
    r.beta.resize(k, k);
    for (int m = 0; m < k; ++m) {
        const double w = s.spectrum.omega[m];
        const double a = std::sqrt(0.5 * w);
        const double b = 1.0 / std::sqrt(2.0 * w);
        for (int n = 0; n < k; ++n) {
            const double pa = s.p(m, n), pb = s.p(m, k + n);
            const double qa = s.q(m, n), qb = s.q(m, k + n);
            r.beta(m, n) = {a * pa + b * qb, a * pb - b * qa};
            r.alpha(m, n) = {a * pa - b * qb, a * pb + b * qa};
        }
    }
    r.N = r.beta.cwiseAbs2().rowwise().sum();
    r.unitarity_defect = (r.alpha.cwiseAbs2().rowwise().sum() - r.N).array() - 1.0;
    r.unitarity_defect = r.unitarity_defect.cwiseAbs();
    return r;
}

RunResult run(const CavityConfig& cfg, const PulseProfile& profile, const RunOptions& options) {
    if (options.step_divisor < 1)
        throw DomainError("step divisor must be at least 1");
    if (options.sample_every < 1)
        throw DomainError("sample cadence must be at least 1 step");
    const double dt = profile.period() / options.step_divisor;
    const double duration = options.duration < 0.0 ? profile.n_pulses() * profile.period() : options.duration;
    const long total = std::lround(std::ceil(duration / dt - 1e-9));

    RunResult result;
    for (int i = 0; i < cfg.mode_count(); ++i)
        result.branches.push_back(cfg.branch_of(i));

    EvolutionState state = initial_state(cfg, profile);
    const double t0 = state.t;
    Frame current = frame_of(state);
    Eigen::VectorXd defect;

    auto record = [&](long index) {
        const bool free = is_field_free(state.t, profile, index, options.step_divisor);
        if (options.field_free_only && !free)
            return;
        const BogolyubovResult b = bogolyubov(state);
        result.samples.push_back({state.t, free, b.N, b.unitarity_defect});
    };

    record(0);
    for (long i = 1; i <= total; ++i) {
        const double t_next = t0 + i * dt;
        Frame end;
        rk4(state, current, profile, cfg, t_next - state.t, t_next, end);
        current = std::move(end);
        defects_into(state, defect);
        result.max_defect = std::max(result.max_defect, defect.maxCoeff());
        const long cadence = options.field_free_only ? options.step_divisor : options.sample_every;
        if (i % cadence == 0 || i == total)
            record(i);
    }
    result.steps = total;
    result.final_time = state.t;
    result.final = bogolyubov(state);
    return result;
}

Eigen::VectorXd creation_rate(const Eigen::VectorXd& per_train, double train_interval_s) {
    if (!(train_interval_s > 0.0) || !std::isfinite(train_interval_s))
        throw DomainError("train interval must be positive");
    return per_train / train_interval_s;
}

} // namespace dce
