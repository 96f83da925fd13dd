#include "doctest.h"

#include "support.hpp"

#include "dce/errors.hpp"
#include "dce/spectrum.hpp"
#include "dce/units.hpp"

#include <cmath>
#include <numbers>

using namespace dce;

namespace {

constexpr double kPi = std::numbers::pi;

CavityConfig tm011(double eta = 0.5, int ell_max = 20) {
    return make_cavity(Polarization::TM, 0, 1, 0.25, eta, ell_max);
}

CavityConfig te111(double eta = 0.5, int ell_max = 20) {
    return make_cavity(Polarization::TE, 1, 1, 0.25, eta, ell_max);
}

double scale(const CavityConfig& cfg, double k, double V) {
    return cfg.polarization() == Polarization::TE ? k + V : cfg.k_perp() * cfg.k_perp() + V * k;
}

} // namespace

TEST_SUITE("spectrum") {

TEST_CASE("static cavity: residual vanishes at p pi and the solver returns it exactly") {
    for (const CavityConfig& cfg : {tm011(), te111(), tm011(0.3), te111(0.7)}) {
        for (int p = 1; p <= 20; ++p) {
            CHECK(std::abs(residual(p * kPi, 0.0, cfg)) <= 1e-13 * scale(cfg, p * kPi, 0.0));
            CHECK(solve_branch(p, 0.0, p * kPi, cfg) == p * kPi);
        }
    }
}

TEST_CASE("static frequencies of TM011 and TE111") {
    const double f_tm = units::angular_to_ghz(static_spectrum(tm011()).omega[1], 100.0);
    const double f_te = units::angular_to_ghz(static_spectrum(te111()).omega[0], 100.0);
    CHECK(std::abs(f_tm - 4.83) <= 0.005 * 4.83);
    CHECK(std::abs(f_te - 3.83) <= 0.005 * 3.83);
    // Frozen from scipy's Bessel zeros with omega = hypot(root / R, pi).
    CHECK(f_tm == doctest::Approx(4.828275495170544).epsilon(1e-12));
    CHECK(f_te == doctest::Approx(3.820323074245967).epsilon(1e-12));
}

TEST_CASE("TE residual changes sign across pi at small V") {
    const CavityConfig cfg = te111();
    const double V = 1e-3;
    CHECK(residual(kPi - 1e-2, V, cfg) > 0.0);
    CHECK(residual(kPi + 1e-2, V, cfg) < 0.0);
}

TEST_CASE("first-order shifts at the midpoint") {
    const CavityConfig te = te111();
    const CavityConfig tm = tm011();
    const double q = tm.k_perp() * tm.k_perp();
    double prev_te = 0.0, prev_tm = 0.0;
    for (double V : {1e-2, 1e-3, 1e-4}) {
        const double err_te = std::abs(solve_branch(1, V, kPi, te) - (kPi + V / kPi));
        const double err_tm = std::abs(solve_branch(1, V, kPi, tm) - (kPi - V * kPi / q));
        CHECK(err_te <= 1.0 * V * V);
        CHECK(err_tm <= 1.0 * V * V);
        if (prev_te > 0.0) {
            CHECK(test::order(prev_te, err_te) / std::log2(10.0) == doctest::Approx(2.0).epsilon(0.05));
            CHECK(test::order(prev_tm, err_tm) / std::log2(10.0) == doctest::Approx(2.0).epsilon(0.05));
        }
        prev_te = err_te;
        prev_tm = err_tm;
    }
}

TEST_CASE("strong TE sheet pushes the first branch to 2 pi") {
    const double k = solve_branch(1, 1e6, kPi, te111());
    CHECK(std::abs(k - 2.0 * kPi) <= 0.01 * 2.0 * kPi);
    CHECK(k < 2.0 * kPi);
}

TEST_CASE("even branches are pinned at the midpoint") {
    for (const CavityConfig& cfg : {te111(), tm011()}) {
        for (double V : {1.0, 5000.0}) {
            for (int p = 2; p <= 20; p += 2)
                CHECK(std::abs(solve_branch(p, V, p * kPi, cfg) - p * kPi) <= 1e-10 * p * kPi);
        }
    }
}

TEST_CASE("roots leave a tiny cleared-denominator residual") {
    for (const CavityConfig& cfg : {tm011(0.37), te111(0.61)}) {
        for (double V : {0.3, 17.0, 5000.0}) {
            for (int p = 1; p <= 20; ++p) {
                const double k = solve_branch(p, V, p * kPi, cfg);
                CHECK(std::abs(residual(k, V, cfg)) <= 1e-10 * scale(cfg, k, V));
            }
        }
    }
}

TEST_CASE("dk/dt: zero without drive, 1/pi at small TE strength") {
    const CavityConfig te = te111();
    CHECK(dk_dt(kPi, 0.0, 0.0, te) == 0.0);
    const double V = 1e-6;
    const double k = solve_branch(1, V, kPi, te);
    CHECK(dk_dt(k, V, 2.0, te) == doctest::Approx(2.0 / kPi).epsilon(1e-5));
}

TEST_CASE("dk/dt matches central differences of re-solved roots") {
    const PulseProfile profile = default_profile(0.3389, 5000.0, 1);
    for (const CavityConfig& cfg : {tm011(0.5, 6), te111(0.4, 6)}) {
        for (double t : {0.02, 0.06, 0.1, 0.25, 0.29}) {
            const double V = profile.value(t);
            const double dV = profile.derivative(t);
            const InstantSpectrum s = solve_spectrum(t, V, dV, cfg);
            for (int i = 0; i < cfg.mode_count(); ++i) {
                const int p = cfg.branch_of(i);
                if (p == 0)
                    continue;
                auto k_at = [&](double tt) { return solve_branch(p, profile.value(tt), s.k[i], cfg); };
                auto err = [&](double h) { return std::abs((k_at(t + h) - k_at(t - h)) / (2 * h) - s.dk_dt[i]); };
                const double e1 = err(2e-4), e2 = err(1e-4);
                CAPTURE(t);
                CAPTURE(p);
                if (e2 > 1e-6 * (std::abs(s.dk_dt[i]) + 1.0))
                    CHECK(test::order(e1, e2) >= 1.8);
            }
        }
    }
}

TEST_CASE("trajectory: confinement, shift direction, continuity and static limits") {
    for (double vmax : {1.0, 5000.0}) {
        const PulseProfile profile = default_profile(0.3389, vmax, 2);
        for (const CavityConfig& cfg : {tm011(0.5, 30), te111(0.5, 30), tm011(0.3, 30), te111(0.8, 30)}) {
            const double step = profile.period() / 400.0;
            const SpectrumTrajectory tr = trajectory(profile, cfg, step);
            const bool te = cfg.polarization() == Polarization::TE;
            for (std::size_t i = 0; i < tr.branches.size(); ++i) {
                const int p = tr.branches[i];
                for (std::size_t j = 0; j < tr.times.size(); ++j) {
                    const double k = tr.k[i][j];
                    if (p == 0) {
                        CHECK(k == 0.0);
                        CHECK(tr.omega[i][j] == cfg.k_perp());
                        continue;
                    }
                    if (te)
                        CHECK(k >= p * kPi);
                    else
                        CHECK(k <= p * kPi);
                    if (profile.value(tr.times[j]) == 0.0)
                        CHECK(k == p * kPi);
                    if (j > 0)
                        CHECK(std::abs(k - tr.k[i][j - 1]) < kPi / 2.0);
                    CHECK(tr.omega[i][j] == doctest::Approx(std::hypot(cfg.k_perp(), k)).epsilon(1e-15));
                }
            }
        }
    }
}

TEST_CASE("mirror placement gives the same spectrum") {
    for (double V : {0.5, 40.0, 5000.0}) {
        for (int p = 1; p <= 12; ++p) {
            CHECK(solve_branch(p, V, p * kPi, tm011(0.3)) ==
                  doctest::Approx(solve_branch(p, V, p * kPi, tm011(0.7))).epsilon(1e-13));
            CHECK(solve_branch(p, V, p * kPi, te111(0.3)) ==
                  doctest::Approx(solve_branch(p, V, p * kPi, te111(0.7))).epsilon(1e-13));
        }
    }
}

TEST_CASE("configuration and solver errors") {
    CHECK_THROWS_AS(make_cavity(Polarization::TM, 0, 1, 0.25, 0.0, 5), DomainError);
    CHECK_THROWS_AS(make_cavity(Polarization::TM, 0, 1, 0.25, 1.0, 5), DomainError);
    CHECK_THROWS_AS(make_cavity(Polarization::TM, 0, 1, 0.25, 0.5, 0), DomainError);
    CHECK_THROWS_AS(solve_branch(0, 1.0, 0.0, tm011()), DomainError);
    CHECK_THROWS_AS(trajectory(default_profile(0.3, 1.0, 1), tm011(), 0.0), DomainError);
}

TEST_CASE("TM mode count includes the zero mode") {
    CHECK(tm011(0.5, 51).mode_count() == 52);
    CHECK(te111(0.5, 51).mode_count() == 51);
    CHECK(tm011().branch_of(0) == 0);
    CHECK(te111().branch_of(0) == 1);
}

}
