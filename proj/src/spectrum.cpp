#include "dce/spectrum.hpp"

#include "dce/errors.hpp"

#include <cmath>
#include <numbers>
#include <limits>
#include <sstream>
#include <string>

namespace dce {

namespace {

constexpr double kPi = std::numbers::pi;

// Scale of the residual terms, used to turn absolute thresholds relative.
double residual_scale(double k, double V, const CavityConfig& cfg) {
    if (cfg.polarization() == Polarization::TE)
        return k + V;
    const double kp2 = cfg.k_perp() * cfg.k_perp();
    return kp2 + V * k;
}

} // namespace

CavityConfig make_cavity(Polarization pol, int n, int m, double radius, double eta, int ell_max) {
    if (!(eta > 0.0 && eta < 1.0))
        throw DomainError("sheet position eta must satisfy 0 < eta < 1");
    if (ell_max < 1)
        throw DomainError("longitudinal truncation ell_max must be >= 1");
    CavityConfig cfg;
    cfg.radius = radius;
    cfg.eta = eta;
    cfg.ell_max = ell_max;
    cfg.transverse = make_transverse_mode(pol, n, m, radius);
    return cfg;
}

ResidualValue residual_with_partials(double k, double V, const CavityConfig& cfg) {
    const double d = cfg.eta;
    const double e = 1.0 - cfg.eta;
    const double sl = std::sin(k), cl = std::cos(k);
    const double sd = std::sin(k * d), cd = std::cos(k * d);
    const double se = std::sin(k * e), ce = std::cos(k * e);
    const double prod = se * sd;
    const double prod_k = e * ce * sd + d * se * cd;

    ResidualValue r;
    if (cfg.polarization() == Polarization::TE) {
        r.f = k * sl + V * prod;
        r.df_dk = sl + k * cl + V * prod_k;
        r.df_dv = prod;
    } else {
        const double kp2 = cfg.k_perp() * cfg.k_perp();
        r.f = kp2 * sl - V * k * prod;
        r.df_dk = kp2 * cl - V * (prod + k * prod_k);
        r.df_dv = -k * prod;
    }
    return r;
}

double residual(double k, double V, const CavityConfig& cfg) {
    return residual_with_partials(k, V, cfg).f;
}

double solve_branch(int p, double V, double k_prev, const CavityConfig& cfg) {
    if (p < 1)
        throw DomainError("solve_branch needs p >= 1");
    const bool te = cfg.polarization() == Polarization::TE;
    const double anchor = p * kPi;
    if (V == 0.0)
        return anchor;
    // Root indistinguishable from the anchor at double precision.
    const ResidualValue at_anchor = residual_with_partials(anchor, V, cfg);
    if (std::abs(at_anchor.f) <= 4.0 * std::numeric_limits<double>::epsilon() * anchor * std::abs(at_anchor.df_dk))
        return anchor;

    // The far end of the confinement interval is excluded (it belongs to the
    // neighbouring branch); stay a hair inside it.
    double lo, hi;
    if (te) {
        lo = anchor;
        hi = (p + 1) * kPi * (1.0 - 1e-15);
    } else {
        lo = p == 1 ? 1e-12 : (p - 1) * kPi * (1.0 + 1e-15);
        hi = anchor;
    }
    double flo = residual(lo, V, cfg);
    double fhi = residual(hi, V, cfg);
    if (flo == 0.0)
        return lo;
    if (fhi == 0.0)
        return hi;
    if ((flo < 0.0) == (fhi < 0.0)) {
        std::ostringstream msg;
        msg << "no root of branch " << p << " in [" << lo << ", " << hi << "] at V = " << V;
        throw NoRootError(msg.str());
    }

    const double noise_floor = 4e-16 * residual_scale(anchor, V, cfg);
    double x = (k_prev > lo && k_prev < hi) ? k_prev : 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const ResidualValue r = residual_with_partials(x, V, cfg);
        if (std::abs(r.f) <= noise_floor)
            return x;
        if ((r.f < 0.0) == (flo < 0.0)) {
            lo = x;
            flo = r.f;
        } else {
            hi = x;
        }
        double next = x - r.f / r.df_dk;
        if (!(next > lo && next < hi))
            next = 0.5 * (lo + hi);
        const double tol = 2e-16 * std::abs(next);
        if (std::abs(next - x) <= tol || hi - lo <= tol)
            return next;
        x = next;
    }
    std::ostringstream msg;
    msg << "root iteration of branch " << p << " did not converge at V = " << V;
    throw ConvergenceError(msg.str());
}

double dk_dt(double k, double V, double dV_dt, const CavityConfig& cfg) {
    if (dV_dt == 0.0)
        return 0.0;
    const ResidualValue r = residual_with_partials(k, V, cfg);
    if (r.df_dv == 0.0)
        return 0.0;
    if (std::abs(r.df_dk) < 1e-12 * residual_scale(k, V, cfg)) {
        std::ostringstream msg;
        msg << "dF/dk vanishes at k = " << k << ", V = " << V;
        throw StationaryDenominatorError(msg.str());
    }
    return -r.df_dv / r.df_dk * dV_dt;
}

double angular_frequency(double k, const CavityConfig& cfg) {
    const double kp = cfg.k_perp();
    return std::sqrt(kp * kp + k * k);
}

InstantSpectrum solve_spectrum(double t, double V, double dV_dt, const CavityConfig& cfg,
                               const InstantSpectrum* warm) {
    const int count = cfg.mode_count();
    InstantSpectrum s;
    s.t = t;
    s.v = V;
    s.dv_dt = dV_dt;
    s.k.resize(count);
    s.dk_dt.resize(count);
    s.omega.resize(count);
    for (int i = 0; i < count; ++i) {
        const int p = cfg.branch_of(i);
        if (p == 0) {
            s.k[i] = 0.0;
            s.dk_dt[i] = 0.0;
        } else {
            const double start = warm ? warm->k[i] : p * kPi;
            s.k[i] = solve_branch(p, V, start, cfg);
            s.dk_dt[i] = dk_dt(s.k[i], V, dV_dt, cfg);
        }
        s.omega[i] = angular_frequency(s.k[i], cfg);
    }
    return s;
}

InstantSpectrum static_spectrum(const CavityConfig& cfg) {
    return solve_spectrum(0.0, 0.0, 0.0, cfg);
}

SpectrumTrajectory trajectory(const PulseProfile& profile, const CavityConfig& cfg, double sample_step) {
    if (!(sample_step > 0.0))
        throw DomainError("spectrum sample step must be positive");
    const int count = cfg.mode_count();
    SpectrumTrajectory traj;
    for (int i = 0; i < count; ++i)
        traj.branches.push_back(cfg.branch_of(i));
    traj.k.resize(count);
    traj.dk_dt.resize(count);
    traj.omega.resize(count);

    const double t0 = profile.t_start();
    const auto samples = static_cast<long>(std::llround((profile.t_end() - t0) / sample_step));
    InstantSpectrum prev = static_spectrum(cfg);
    for (long j = 0; j <= samples; ++j) {
        const double t = t0 + j * sample_step;
        const double V = profile.value(t);
        const double dV = profile.derivative(t);
        InstantSpectrum now;
        try {
            now = solve_spectrum(t, V, dV, cfg, &prev);
        } catch (const NumericalError& err) {
            std::ostringstream msg;
            msg << "spectrum failed at t = " << t << ": " << err.what();
            throw NumericalError(msg.str());
        }
        traj.times.push_back(t);
        for (int i = 0; i < count; ++i) {
            traj.k[i].push_back(now.k[i]);
            traj.dk_dt[i].push_back(now.dk_dt[i]);
            traj.omega[i].push_back(now.omega[i]);
        }
        prev = std::move(now);
    }
    return traj;
}

} // namespace dce
