#include "doctest.h"

#include "dce/errors.hpp"
#include "dce/pulse.hpp"

#include <cmath>

using namespace dce;

TEST_SUITE("pulse") {

TEST_CASE("zero power gives an identically vanishing profile") {
    const PulseProfile p = default_profile(0.34, 0.0, 3);
    for (double t = -0.1; t < 1.2; t += 0.001) {
        CHECK(p.value(t) == 0.0);
        CHECK(p.derivative(t) == 0.0);
    }
}

TEST_CASE("flat top sits at v_max with zero slope") {
    const PulseProfile p = build_profile(0.01, 0.05, 0.015, 0.34, 5000.0, 4, 0.2);
    for (int j = 0; j < 4; ++j) {
        CHECK(p.value(p.plateau_center(j)) == 5000.0);
        CHECK(p.derivative(p.plateau_center(j)) == 0.0);
    }
}

TEST_CASE("nothing before the onset or after the train") {
    const PulseProfile p = default_profile(0.34, 10.0, 2, 0.5);
    CHECK(p.value(0.0) == 0.0);
    CHECK(p.value(0.4999) == 0.0);
    CHECK(p.derivative(0.3) == 0.0);
    CHECK(p.value(p.t_end() + 0.01) == 0.0);
    CHECK(p.value(0.5) == 0.0);
}

TEST_CASE("pulses repeat with the period") {
    const PulseProfile p = build_profile(0.012, 0.07, 0.02, 0.3389, 1.0, 5);
    for (double s = 0.0; s < p.period(); s += p.period() / 97.0) {
        for (int j = 1; j < 5; ++j) {
            const double t = s + j * p.period();
            CHECK(std::abs(p.value(t) - p.value(s)) <= 1e-12);
        }
    }
    CHECK(p.value(p.period()) == p.value(0.0));
}

TEST_CASE("equal widths give a pulse symmetric about the plateau centre") {
    const PulseProfile p = default_profile(0.3389, 5000.0, 1);
    const double tc = p.plateau_center(0);
    double worst = 0.0;
    for (int i = 0; i <= 2000; ++i) {
        const double t = tc - 0.5 * p.period() + i * p.period() / 2000.0;
        worst = std::max(worst, std::abs(p.value(t) - p.value(2.0 * tc - t)));
    }
    CHECK(worst < 1e-12 * p.v_max());
}

TEST_CASE("the dense-grid maximum is v_max and the profile stays in [0, v_max]") {
    const PulseProfile p = build_profile(0.01, 0.02, 0.02, 0.3, 7.0, 2);
    double top = 0.0;
    for (int i = 0; i <= 60000; ++i) {
        const double v = p.value(i * p.t_end() / 60000.0);
        CHECK(v >= 0.0);
        CHECK(v <= 7.0);
        top = std::max(top, v);
    }
    CHECK(std::abs(top - 7.0) <= 1e-12 * 7.0);
}

TEST_CASE("analytic slope matches central differences at second order") {
    const PulseProfile p = build_profile(0.012, 0.05, 0.02, 0.3389, 3.0, 2);
    for (double t : {0.03, 0.07, 0.1, 0.27, 0.3, 0.41, 0.62}) {
        auto fd_error = [&](double h) {
            return std::abs((p.value(t + h) - p.value(t - h)) / (2.0 * h) - p.derivative(t));
        };
        const double e1 = fd_error(1e-3), e2 = fd_error(5e-4), e3 = fd_error(2.5e-4);
        CAPTURE(t);
        if (e1 > 1e-9) {
            CHECK(std::log2(e1 / e2) >= 1.9);
            CHECK(std::log2(e2 / e3) >= 1.9);
        } else {
            CHECK(e3 <= 1e-9);
        }
    }
}

TEST_CASE("value and slope are continuous across the pulse junction") {
    const PulseProfile p = default_profile(0.3389, 5000.0, 3);
    const double h = 1e-9;
    for (int j = 1; j < 3; ++j) {
        const double tj = j * p.period();
        CHECK(std::abs(p.value(tj - h) - p.value(tj + h)) <= 1e-12 * p.v_max());
        const double slope_scale = p.v_max() / p.sigma_e();
        CHECK(std::abs(p.derivative(tj - h) - p.derivative(tj + h)) <= 1e-10 * slope_scale);
    }
}

TEST_CASE("excitation width is stretched to close the period") {
    const PulseProfile p = build_profile(0.005, 0.05, 0.02, 0.34, 1.0, 1);
    CHECK(p.sigma_e() >= 0.005);
    CHECK(std::abs(p.t_rise() + p.t_plateau() + p.t_fall() - p.period()) < 1e-15);
    CHECK(std::abs(p.t_rise() - kGaussianCut * p.sigma_e()) < 1e-15);
    CHECK(std::abs(p.t_fall() - kGaussianCut * p.sigma_tau()) < 1e-15);
}

TEST_CASE("default split is 40/20/40") {
    const PulseProfile p = default_profile(1.0, 1.0, 1);
    CHECK(p.t_rise() == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(p.t_plateau() == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(p.t_fall() == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("invalid durations are rejected") {
    CHECK_THROWS_AS(build_profile(-0.01, 0.05, 0.02, 0.34, 1.0, 1), DomainError);
    CHECK_THROWS_AS(build_profile(0.01, 0.05, 0.02, -0.34, 1.0, 1), DomainError);
    CHECK_THROWS_AS(build_profile(0.01, 0.05, 0.02, 0.34, -1.0, 1), DomainError);
    CHECK_THROWS_AS(build_profile(0.02, 0.1, 0.02, 0.34, 1.0, 1), InconsistentDurationsError);
    CHECK_THROWS_AS(build_profile(0.01, 0.05, 0.0, 0.34, 1.0, 1), InconsistentDurationsError);
}

}
