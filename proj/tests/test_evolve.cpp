#include "doctest.h"

#include "support.hpp"

#include "dce/errors.hpp"
#include "dce/evolve.hpp"

#include <boost/numeric/odeint.hpp>

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

using namespace dce;

namespace {

constexpr double kPi = std::numbers::pi;
const double kTm011Period = 113.0 / 333.564095198152; // 113 ps with L_z = 100 mm

CavityConfig tm_cavity(double eta, int ell_max) { return make_cavity(Polarization::TM, 0, 1, 0.25, eta, ell_max); }

void advance(EvolutionState& s, const PulseProfile& p, const CavityConfig& cfg, double until, double dt) {
    const long n = std::lround((until - s.t) / dt);
    const double t0 = s.t;
    for (long i = 1; i <= n; ++i)
        step(s, p, cfg, t0 + i * dt - s.t, dt * (1.0 + 1e-9));
}

// Lowest TE branch at the midpoint from the reduced relation
// 2 k cos(k/2) + V sin(k/2) = 0 on (pi, 2 pi), by bisection.
double te_midpoint_k1(double V) {
    if (V == 0.0)
        return kPi;
    auto g = [&](double k) { return 2.0 * k * std::cos(0.5 * k) + V * std::sin(0.5 * k); };
    double lo = kPi, hi = 2.0 * kPi;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        ((g(mid) > 0.0) == (g(lo) > 0.0) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

TEST_SUITE("evolve") {

TEST_CASE("stationary in-state") {
    const CavityConfig cfg = tm_cavity(0.5, 6);
    const PulseProfile profile = default_profile(kTm011Period, 5000.0, 1);
    const EvolutionState s = initial_state(cfg, profile);
    const Eigen::MatrixXcd P = s.P(), Pd = s.Pdot();
    const InstantSpectrum st = static_spectrum(cfg);
    for (int a = 0; a < cfg.mode_count(); ++a) {
        for (int b = 0; b < cfg.mode_count(); ++b) {
            if (a == b) {
                CHECK(std::norm(P(a, a)) == doctest::Approx(1.0 / (2.0 * st.omega[a])).epsilon(1e-14));
                const std::complex<double> ratio = Pd(a, a) / P(a, a);
                CHECK(ratio.real() == 0.0);
                CHECK(ratio.imag() == doctest::Approx(-st.omega[a]).epsilon(1e-14));
            } else {
                CHECK(P(a, b) == 0.0);
                CHECK(Pd(a, b) == 0.0);
            }
        }
    }
}

TEST_CASE("starting inside a pulse is refused") {
    const CavityConfig cfg = tm_cavity(0.5, 3);
    const PulseProfile profile = default_profile(kTm011Period, 5000.0, 1);
    CHECK_THROWS_AS(initial_state(cfg, profile, profile.plateau_center(0)), NonzeroInitialStrengthError);
}

TEST_CASE("Bogolyubov coefficients of the in-state") {
    const CavityConfig cfg = tm_cavity(0.5, 8);
    const BogolyubovResult b = bogolyubov(initial_state(cfg, default_profile(kTm011Period, 5000.0, 1)));
    CHECK(b.beta.cwiseAbs().maxCoeff() == 0.0);
    CHECK(b.N.cwiseAbs().maxCoeff() == 0.0);
    CHECK(b.unitarity_defect.maxCoeff() <= 1e-15);
    for (int m = 0; m < cfg.mode_count(); ++m)
        CHECK(std::abs(b.alpha(m, m)) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("free evolution without drive") {
    const CavityConfig cfg = tm_cavity(0.5, 5);
    const PulseProfile profile = default_profile(kTm011Period, 0.0, 10);
    EvolutionState s = initial_state(cfg, profile);
    const double dt = profile.period() / 4096.0;
    advance(s, profile, cfg, 10.0 * profile.period(), dt);
    const Eigen::MatrixXcd P = s.P();
    for (int m = 0; m < cfg.mode_count(); ++m) {
        const double w = s.spectrum.omega[m];
        const std::complex<double> exact = std::polar(1.0 / std::sqrt(2.0 * w), -w * s.t);
        CHECK(std::abs(P(m, m) - exact) <= 1e-8);
    }
    const BogolyubovResult b = bogolyubov(s);
    CHECK(b.N.maxCoeff() <= 1e-10);
    CHECK(b.unitarity_defect.maxCoeff() <= 1e-10);
}

TEST_CASE("single mode at resonance matches an independent adaptive integrator") {
    // TE111 truncated to its lowest branch: no coupling, only omega(t).
    const double V = 50.0;
    const double kp = bessel_root(BesselZeroKind::JPrime, 1, 1) / 0.25;
    auto omega_of = [&](double vt) { return std::hypot(kp, te_midpoint_k1(vt)); };

    // Drive at pi over the time-averaged frequency; the average does not
    // depend on the period because the pulse shape scales with it.
    const PulseProfile shape = default_profile(1.0, V, 1);
    double mean = 0.0;
    const int samples = 4000;
    for (int i = 0; i < samples; ++i)
        mean += omega_of(shape.value((i + 0.5) / samples)) / samples;
    const PulseProfile profile = default_profile(kPi / mean, V, 8);
    const CavityConfig cfg = make_cavity(Polarization::TE, 1, 1, 0.25, 0.5, 1);

    using State = std::array<double, 4>; // P_A, Q_A, P_B, Q_B
    auto rhs = [&](const State& x, State& dx, double t) {
        const double w2 = std::pow(omega_of(profile.value(t)), 2);
        dx = {x[1], -w2 * x[0], x[3], -w2 * x[2]};
    };
    const double w0 = omega_of(0.0);
    State x = {1.0 / std::sqrt(2.0 * w0), 0.0, 0.0, -std::sqrt(0.5 * w0)};
    auto stepper = boost::numeric::odeint::make_controlled(1e-13, 1e-13,
                                                           boost::numeric::odeint::runge_kutta_dopri5<State>());

    EvolutionState s = initial_state(cfg, profile);
    const double dt = profile.period() / 4096.0;
    double previous = 0.0;
    for (int j = 1; j <= profile.n_pulses(); ++j) {
        const double t_end = j * profile.period();
        // Integrate piecewise so the adaptive scheme restarts at the kinks.
        const double edges[] = {(j - 1) * profile.period(), (j - 1) * profile.period() + profile.t_rise(),
                                (j - 1) * profile.period() + profile.t_rise() + profile.t_plateau(), t_end};
        for (int e = 0; e < 3; ++e)
            boost::numeric::odeint::integrate_adaptive(stepper, rhs, x, edges[e], edges[e + 1], 1e-4);
        advance(s, profile, cfg, t_end, dt);

        const double a = std::sqrt(0.5 * w0), b = 1.0 / std::sqrt(2.0 * w0);
        const std::complex<double> beta(a * x[0] + b * x[3], a * x[2] - b * x[1]);
        const double n_oracle = std::norm(beta);
        const double n = bogolyubov(s).N[0];
        CAPTURE(j);
        CHECK(n == doctest::Approx(n_oracle).epsilon(1e-6));
        CHECK(n > previous);
        CHECK(std::abs(s.P()(0, 0)) > 0.0);
        previous = n;
    }
    CHECK(previous > 1e-4);
}

TEST_CASE("halving the step changes photon numbers by less than 1e-4") {
    const CavityConfig cfg = tm_cavity(0.5, 11);
    const PulseProfile profile = default_profile(kTm011Period, 5000.0, 2);
    RunOptions coarse, fine;
    coarse.step_divisor = 4096;
    fine.step_divisor = 8192;
    coarse.sample_every = 4096;
    fine.sample_every = 8192;
    const RunResult a = run(cfg, profile, coarse);
    const RunResult b = run(cfg, profile, fine);
    for (int m = 0; m < cfg.mode_count(); ++m) {
        CAPTURE(m);
        if (b.final.N[m] > 1e-12)
            CHECK(test::rel_diff(a.final.N[m], b.final.N[m]) < 1e-4);
    }
}

TEST_CASE("zero mode stays empty and even branches stay empty at the midpoint") {
    const CavityConfig cfg = tm_cavity(0.5, 15);
    const PulseProfile profile = default_profile(kTm011Period, 5000.0, 3);
    RunOptions o;
    o.sample_every = 64;
    const RunResult r = run(cfg, profile, o);
    double zero_mode = 0.0, even = 0.0, odd = 0.0;
    for (const auto& s : r.samples) {
        zero_mode = std::max(zero_mode, s.N[0]);
        for (int p = 2; p <= 14; p += 2)
            even = std::max(even, s.N[p]);
    }
    for (int p = 1; p <= 15; p += 2)
        odd = std::max(odd, r.final.N[p]);
    CHECK(zero_mode <= 1e-12);
    // Even branches have a node of the slope at the sheet and no overlap
    // with the odd ones; nothing can populate them.
    CHECK(even <= 1e-20);
    CHECK(odd > 1e-3);
}

TEST_CASE("unitarity holds tightly at low power") {
    const CavityConfig cfg = tm_cavity(0.5, 11);
    const PulseProfile profile = default_profile(kTm011Period, 1.0, 4);
    const RunResult r = run(cfg, profile);
    CHECK(r.max_defect <= 1e-6);
    CHECK(r.final.N[1] > 0.0);
}

TEST_CASE("quadratic coupling term enters the second-order equations with a minus sign") {
    const CavityConfig cfg = tm_cavity(0.41, 6);
    const PulseProfile profile = default_profile(kTm011Period, 200.0, 1);
    EvolutionState s = initial_state(cfg, profile);
    const double h = 2e-5;
    const double t = 0.07;
    advance(s, profile, cfg, t - h, h);
    const Eigen::MatrixXcd pd_minus = s.Pdot();
    step(s, profile, cfg, h, h);
    const Eigen::MatrixXcd P = s.P(), Pd = s.Pdot();
    const Eigen::MatrixXd M = s.coupling;
    step(s, profile, cfg, h, h);
    const Eigen::MatrixXcd pdd = (s.Pdot() - pd_minus) / (2.0 * h);

    const Eigen::MatrixXd Mdot =
        (coupling_matrix(t + h, profile, cfg).m - coupling_matrix(t - h, profile, cfg).m) / (2.0 * h);
    Eigen::VectorXd w2(cfg.mode_count());
    const InstantSpectrum sp = solve_spectrum(t, profile.value(t), profile.derivative(t), cfg);
    for (int i = 0; i < cfg.mode_count(); ++i)
        w2[i] = sp.omega[i] * sp.omega[i];
    const Eigen::MatrixXcd linear = -(w2.asDiagonal() * P) - 2.0 * M.transpose() * Pd - Mdot.transpose() * P;
    const Eigen::MatrixXcd quadratic = M * M.transpose() * P;
    const double scale = pdd.cwiseAbs().maxCoeff();
    CHECK((pdd - (linear + quadratic)).cwiseAbs().maxCoeff() <= 1e-5 * scale);
    CHECK((pdd - (linear - quadratic)).cwiseAbs().maxCoeff() > 1e-3 * scale);
}

TEST_CASE("oversized or invalid steps are rejected and leave the state intact") {
    const CavityConfig cfg = tm_cavity(0.5, 3);
    const PulseProfile profile = default_profile(kTm011Period, 5000.0, 1);
    EvolutionState s = initial_state(cfg, profile);
    const double dt = profile.period() / 4096.0;
    CHECK_THROWS_AS(step(s, profile, cfg, 2.0 * dt, dt), StepRejectedError);
    CHECK_THROWS_AS(step(s, profile, cfg, -dt, dt), StepRejectedError);
    CHECK(s.t == profile.t_start());
    step(s, profile, cfg, dt, dt);
    CHECK(s.t == doctest::Approx(dt));
}

TEST_CASE("runs are deterministic and field-free sampling lands between pulses") {
    const CavityConfig cfg = tm_cavity(0.5, 7);
    const PulseProfile profile = default_profile(kTm011Period, 5000.0, 3);
    RunOptions o;
    o.sample_every = 100;
    const RunResult a = run(cfg, profile, o);
    const RunResult b = run(cfg, profile, o);
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        CHECK(a.samples[i].t == b.samples[i].t);
        CHECK(a.samples[i].N == b.samples[i].N);
    }
    o.field_free_only = true;
    const RunResult f = run(cfg, profile, o);
    REQUIRE(f.samples.size() == 4);
    for (std::size_t j = 0; j < f.samples.size(); ++j) {
        CHECK(f.samples[j].field_free);
        CHECK(f.samples[j].t == doctest::Approx(j * profile.period()).epsilon(1e-12));
    }
    CHECK(f.samples.back().N == a.final.N);
    CHECK(a.max_defect >= a.samples.back().defect.maxCoeff());
}

TEST_CASE("creation rate from the train repetition interval") {
    Eigen::VectorXd n(3);
    n << 0.0, 0.5, 2.0;
    const Eigen::VectorXd r = creation_rate(n, 0.01);
    CHECK(r[1] == doctest::Approx(50.0).epsilon(1e-15));
    CHECK(r[2] == doctest::Approx(200.0).epsilon(1e-15));
    CHECK_THROWS_AS(creation_rate(n, 0.0), DomainError);
    CHECK_THROWS_AS(creation_rate(n, -1.0), DomainError);
}

TEST_CASE("run duration can extend past the pulse train") {
    const CavityConfig cfg = tm_cavity(0.5, 5);
    const PulseProfile profile = default_profile(kTm011Period, 5000.0, 2);
    RunOptions o;
    o.duration = 3.5 * profile.period();
    o.sample_every = 4096;
    const RunResult r = run(cfg, profile, o);
    CHECK(r.final_time == doctest::Approx(3.5 * profile.period()));
    // After the train the photon numbers are frozen.
    const auto& s2 = r.samples[2];
    const auto& s3 = r.samples[3];
    CHECK(s2.t == doctest::Approx(2.0 * profile.period()));
    CHECK((s3.N - s2.N).cwiseAbs().maxCoeff() <= 1e-9 * s2.N.maxCoeff());
}

}
