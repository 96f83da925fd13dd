#include "dce/modes.hpp"

#include "dce/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <sstream>

namespace dce {

namespace {

// The four primitive families over [0, ell]:
//   C0 = int cos(g x),  S0 = int sin(g x),  C1 = int x cos(g x),  S1 = int x sin(g x)
// with theta = g * ell. Below |theta| = 1 the Taylor series is summed to
// avoid the cancellation in the closed forms.
struct Primitives {
    double c0, s0, c1, s1;
};

Primitives primitives_series(double theta, double ell) {
    const double t2 = theta * theta;
    double c0 = 0.0, s0 = 0.0, c1 = 0.0, s1 = 0.0;
    double even = 1.0;   // theta^{2j} / (2j)!
    double odd = theta;  // theta^{2j+1} / (2j+1)!
    for (int j = 0; j < 12; ++j) {
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        c0 += sign * even / (2 * j + 1);
        s0 += sign * odd / (2 * j + 2);
        c1 += sign * even / (2 * j + 2);
        s1 += sign * odd / (2 * j + 3);
        even *= t2 / ((2 * j + 1) * (2 * j + 2));
        odd *= t2 / ((2 * j + 2) * (2 * j + 3));
    }
    return {ell * c0, ell * s0, ell * ell * c1, ell * ell * s1};
}

Primitives primitives(double theta, double sin_t, double cos_t, double ell) {
    if (std::abs(theta) < 1.0)
        return primitives_series(theta, ell);
    const double inv = 1.0 / theta;
    const double half_sin = std::sin(0.5 * theta);
    return {ell * sin_t * inv,
            ell * 2.0 * half_sin * half_sin * inv,
            ell * ell * (theta * sin_t + cos_t - 1.0) * inv * inv,
            ell * ell * (sin_t - theta * cos_t) * inv * inv};
}

// Only C0 and S1 are needed by the coupling matrix.
inline void coupling_primitives(double theta, double sin_t, double cos_t, double ell, double& c0, double& s1) {
    if (std::abs(theta) < 1.0) {
        const Primitives p = primitives_series(theta, ell);
        c0 = p.c0;
        s1 = p.s1;
        return;
    }
    const double inv = 1.0 / theta;
    c0 = ell * sin_t * inv;
    s1 = ell * ell * (sin_t - theta * cos_t) * inv * inv;
}

// Integral of sin^2 (TE) or cos^2 (TM) of k x over [0, ell], and d/dk of it.
void square_norm(Polarization pol, double k, double ell, double& value, double& d_dk) {
    const double theta = 2.0 * k * ell;
    const Primitives p = primitives(theta, std::sin(theta), std::cos(theta), ell);
    if (pol == Polarization::TE) {
        value = 0.5 * (ell - p.c0);
        d_dk = p.s1;
    } else {
        value = 0.5 * (ell + p.c0);
        d_dk = -p.s1;
    }
}

// Null vector u of one of the two sheet conditions, with partials in k and V.
struct Matching {
    double u1, u2;
    double u1_k, u2_k;
    double u1_v, u2_v;
};

Matching matching_vector(double k, double V, const CavityConfig& cfg) {
    const double d = cfg.eta;
    const double e = 1.0 - cfg.eta;
    const double sd = std::sin(k * d), cd = std::cos(k * d);
    const double se = std::sin(k * e), ce = std::cos(k * e);

    Matching mv{};
    if (cfg.polarization() == Polarization::TE) {
        // continuity:  left sd - right se = 0
        // slope jump:  (-k cd - V sd) left - k ce right = 0
        const double strength1 = std::hypot(sd, se);
        const double strength2 = std::hypot(k * cd + V * sd, k * ce) / (k + V);
        if (std::max(strength1, strength2) < 1e-12)
            throw DegenerateMatchingError("TE sheet conditions are both degenerate");
        if (strength1 >= strength2) {
            mv = {se, sd, e * ce, d * cd, 0.0, 0.0};
        } else {
            mv = {-k * ce, k * cd + V * sd,
                  -ce + k * e * se, cd - k * d * sd + V * d * cd,
                  0.0, sd};
        }
    } else {
        const double q = cfg.k_perp() * cfg.k_perp();
        // slope continuity:  left sd + right se = 0
        // value jump:        (-cd + (V k / q) sd) left + ce right = 0
        const double g = V * k / q;
        const double strength1 = std::hypot(sd, se);
        const double strength2 = std::hypot(g * sd - cd, ce) / (1.0 + g);
        if (std::max(strength1, strength2) < 1e-12)
            throw DegenerateMatchingError("TM sheet conditions are both degenerate");
        if (strength1 >= strength2) {
            mv = {se, -sd, e * ce, -d * cd, 0.0, 0.0};
        } else {
            mv = {ce, cd - g * sd,
                  -e * se, -d * sd - (V / q) * (sd + k * d * cd),
                  0.0, -(k / q) * sd};
        }
    }
    return mv;
}

} // namespace

double LongitudinalMode::value(double z, Side side) const {
    const bool left_side = z < eta || (z == eta && side == Side::Left);
    const double x = left_side ? z : 1.0 - z;
    const double amp = left_side ? left : right;
    return polarization == Polarization::TE ? amp * std::sin(k * x) : amp * std::cos(k * x);
}

double LongitudinalMode::slope(double z, Side side) const {
    const bool left_side = z < eta || (z == eta && side == Side::Left);
    if (left_side) {
        return polarization == Polarization::TE ? left * k * std::cos(k * z) : -left * k * std::sin(k * z);
    }
    const double x = 1.0 - z;
    // d/dz f(k (1 - z)) = -k f'(k x)
    return polarization == Polarization::TE ? -right * k * std::cos(k * x) : right * k * std::sin(k * x);
}

double ModeWithRates::time_derivative(double z) const {
    const bool left_side = z <= mode.eta;
    const double x = left_side ? z : 1.0 - z;
    const double amp = left_side ? mode.left : mode.right;
    const double damp = left_side ? dleft_dt : dright_dt;
    const double kx = mode.k * x;
    if (mode.polarization == Polarization::TE)
        return damp * std::sin(kx) + amp * dk_dt * x * std::cos(kx);
    return damp * std::cos(kx) - amp * dk_dt * x * std::sin(kx);
}

ModeWithRates build_mode_with_rates(int p, double k, double V, double dk, double dV, const CavityConfig& cfg) {
    ModeWithRates out;
    out.mode.polarization = cfg.polarization();
    out.mode.branch = p;
    out.mode.k = k;
    out.mode.eta = cfg.eta;
    if (p == 0) {
        // TM zero mode: constant 1 / sqrt(L_z), independent of V.
        out.mode.left = 1.0;
        out.mode.right = 1.0;
        return out;
    }

    const Matching mv = matching_vector(k, V, cfg);
    const double d = cfg.eta;
    const double e = 1.0 - cfg.eta;
    double il, il_k, ir, ir_k;
    square_norm(cfg.polarization(), k, d, il, il_k);
    square_norm(cfg.polarization(), k, e, ir, ir_k);

    const double q = mv.u1 * mv.u1 * il + mv.u2 * mv.u2 * ir;
    if (!(q > 0.0) || mv.u1 == 0.0)
        throw DegenerateMatchingError("mode amplitudes could not be normalized");
    const double sign = mv.u1 > 0.0 ? 1.0 : -1.0;
    const double inv_root = sign / std::sqrt(q);

    out.mode.left = mv.u1 * inv_root;
    out.mode.right = mv.u2 * inv_root;
    out.dk_dt = dk;

    const double q_k = 2.0 * mv.u1 * mv.u1_k * il + mv.u1 * mv.u1 * il_k +
                       2.0 * mv.u2 * mv.u2_k * ir + mv.u2 * mv.u2 * ir_k;
    const double q_v = 2.0 * mv.u1 * mv.u1_v * il + 2.0 * mv.u2 * mv.u2_v * ir;
    const double dq = q_k * dk + q_v * dV;
    const double du1 = mv.u1_k * dk + mv.u1_v * dV;
    const double du2 = mv.u2_k * dk + mv.u2_v * dV;
    out.dleft_dt = inv_root * (du1 - 0.5 * mv.u1 * dq / q);
    out.dright_dt = inv_root * (du2 - 0.5 * mv.u2 * dq / q);
    return out;
}

LongitudinalMode build_mode(int p, double k, double V, const CavityConfig& cfg) {
    return build_mode_with_rates(p, k, V, 0.0, 0.0, cfg).mode;
}

std::vector<ModeWithRates> instantaneous_modes(const InstantSpectrum& s, const CavityConfig& cfg) {
    std::vector<ModeWithRates> modes;
    modes.reserve(s.k.size());
    for (std::size_t i = 0; i < s.k.size(); ++i) {
        const int p = cfg.branch_of(static_cast<int>(i));
        modes.push_back(build_mode_with_rates(p, s.k[i], s.v, s.dk_dt[i], s.dv_dt, cfg));
    }
    return modes;
}

double product_integral(Trig f, double alpha, Trig g, double beta, double length, int weight) {
    if (weight != 0 && weight != 1)
        throw DomainError("product_integral supports weight 0 or 1");
    const double tp = (alpha + beta) * length;
    const double tm = (alpha - beta) * length;
    const Primitives plus = primitives(tp, std::sin(tp), std::cos(tp), length);
    const Primitives minus = primitives(tm, std::sin(tm), std::cos(tm), length);
    const double cp = weight == 0 ? plus.c0 : plus.c1;
    const double cm = weight == 0 ? minus.c0 : minus.c1;
    const double sp = weight == 0 ? plus.s0 : plus.s1;
    const double sm = weight == 0 ? minus.s0 : minus.s1;
    if (f == Trig::Sin && g == Trig::Sin)
        return 0.5 * (cm - cp);
    if (f == Trig::Cos && g == Trig::Cos)
        return 0.5 * (cm + cp);
    if (f == Trig::Sin && g == Trig::Cos)
        return 0.5 * (sp + sm);
    return 0.5 * (sp - sm);
}

namespace {

void add_interval_closed_form(const std::vector<ModeWithRates>& modes, int first, bool left_interval,
                              double ell, Polarization pol, Eigen::MatrixXd& M) {
    const int count = static_cast<int>(modes.size());
    std::vector<double> sn(count), cs(count), amp(count), damp(count), kd(count);
    for (int i = first; i < count; ++i) {
        const double kl = modes[i].mode.k * ell;
        sn[i] = std::sin(kl);
        cs[i] = std::cos(kl);
        amp[i] = left_interval ? modes[i].mode.left : modes[i].mode.right;
        damp[i] = left_interval ? modes[i].dleft_dt : modes[i].dright_dt;
        kd[i] = modes[i].dk_dt;
    }
    const bool te = pol == Polarization::TE;
    for (int m = first; m < count; ++m) {
        const double km = modes[m].mode.k;
        for (int n = m; n < count; ++n) {
            const double kn = modes[n].mode.k;
            const double tp = (km + kn) * ell;
            const double tm = (km - kn) * ell;
            double c0p, s1p, c0m, s1m;
            coupling_primitives(tp, sn[m] * cs[n] + cs[m] * sn[n], cs[m] * cs[n] - sn[m] * sn[n], ell, c0p, s1p);
            coupling_primitives(tm, sn[m] * cs[n] - cs[m] * sn[n], cs[m] * cs[n] + sn[m] * sn[n], ell, c0m, s1m);
            if (te) {
                const double ss0 = 0.5 * (c0m - c0p);
                M(m, n) += amp[n] * (damp[m] * ss0 + amp[m] * kd[m] * 0.5 * (s1p - s1m));
                if (n != m)
                    M(n, m) += amp[m] * (damp[n] * ss0 + amp[n] * kd[n] * 0.5 * (s1p + s1m));
            } else {
                const double cc0 = 0.5 * (c0m + c0p);
                M(m, n) += amp[n] * (damp[m] * cc0 - amp[m] * kd[m] * 0.5 * (s1p + s1m));
                if (n != m)
                    M(n, m) += amp[m] * (damp[n] * cc0 - amp[n] * kd[n] * 0.5 * (s1p - s1m));
            }
        }
    }
}

double quadrature_entry(const ModeWithRates& from, const LongitudinalMode& to) {
    using boost::math::quadrature::gauss_kronrod;
    const double d = to.eta;
    auto left = [&](double z) { return from.time_derivative(z) * to.value(z, Side::Left); };
    auto right = [&](double z) { return from.time_derivative(z) * to.value(z, Side::Right); };
    return gauss_kronrod<double, 61>::integrate(left, 0.0, d, 15, 1e-13) +
           gauss_kronrod<double, 61>::integrate(right, d, 1.0, 15, 1e-13);
}

} // namespace

CouplingMatrix coupling_matrix(const InstantSpectrum& s, const CavityConfig& cfg, CouplingMethod method) {
    const int count = cfg.mode_count();
    CouplingMatrix cm;
    cm.t = s.t;
    cm.m = Eigen::MatrixXd::Zero(count, count);
    if (s.dv_dt == 0.0)
        return cm;
    const std::vector<ModeWithRates> modes = instantaneous_modes(s, cfg);
    const int first = cfg.first_branch() == 0 ? 1 : 0; // zero mode row/column stay 0
    if (method == CouplingMethod::ClosedForm) {
        add_interval_closed_form(modes, first, true, cfg.eta, cfg.polarization(), cm.m);
        add_interval_closed_form(modes, first, false, 1.0 - cfg.eta, cfg.polarization(), cm.m);
    } else {
        for (int m = first; m < count; ++m)
            for (int n = first; n < count; ++n)
                cm.m(m, n) = quadrature_entry(modes[m], modes[n].mode);
    }
    return cm;
}

CouplingMatrix coupling_matrix(double t, const PulseProfile& profile, const CavityConfig& cfg,
                               CouplingMethod method) {
    const InstantSpectrum s = solve_spectrum(t, profile.value(t), profile.derivative(t), cfg);
    return coupling_matrix(s, cfg, method);
}

FieldSample reconstruct_fields(const TransverseMode& transverse, const LongitudinalMode& longitudinal,
                               double omega, const CylindricalPoint& point) {
    if (transverse.polarization != longitudinal.polarization)
        throw DomainError("transverse and longitudinal modes have different polarizations");
    if (point.z < 0.0 || point.z > 1.0)
        throw DomainError("point outside the cavity length");

    using cplx = std::complex<double>;
    const cplx phase = std::polar(1.0, transverse.n * point.phi);
    const cplx i(0.0, 1.0);
    const double radial = transverse_radial(transverse, point.rho);
    const double radial_d = transverse_radial_derivative(transverse, point.rho);
    const double n = transverse.n;
    // (n / rho) * radial, finite on the axis
    const double n_over_rho = transverse.n == 0 ? 0.0 : n * transverse_radial_over_rho(transverse, point.rho);
    const double z_val = longitudinal.value(point.z);
    const double z_slope = longitudinal.slope(point.z);
    const double kp2 = transverse.k_perp() * transverse.k_perp();

    FieldSample f;
    if (transverse.polarization == Polarization::TM) {
        // E_perp = grad_perp dz Phi, E_z = -lap_perp Phi, B_perp = -z x grad_perp dt Phi
        f.e = {radial_d * z_slope * phase, i * n_over_rho * z_slope * phase, kp2 * radial * z_val * phase};
        f.b = {omega * n_over_rho * z_val * phase, i * omega * radial_d * z_val * phase, 0.0};
    } else {
        // E_perp = z x grad_perp dt Psi, B_perp = grad_perp dz Psi, B_z = -lap_perp Psi
        f.e = {-omega * n_over_rho * z_val * phase, -i * omega * radial_d * z_val * phase, 0.0};
        f.b = {radial_d * z_slope * phase, i * n_over_rho * z_slope * phase, kp2 * radial * z_val * phase};
    }
    return f;
}

} // namespace dce
