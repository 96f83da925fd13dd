#include "dce/transverse.hpp"

#include "dce/errors.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace dce {

const char* to_string(Polarization pol) noexcept {
    return pol == Polarization::TE ? "TE" : "TM";
}

namespace {

double series_j(int n, double x) {
    const double half = 0.5 * x;
    const double q = half * half;
    // (x/2)^n / n!
    double term = 1.0;
    for (int i = 1; i <= n; ++i)
        term *= half / i;
    double sum = term;
    for (int k = 1; k < 500; ++k) {
        term *= -q / (static_cast<double>(k) * (k + n));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum) && k > half)
            break;
    }
    return sum;
}

// Miller's algorithm: downward recurrence from a high order, normalized with
// J_0 + 2 sum J_2k = 1.
double miller_j(int n, double x) {
    const int top = 2 * ((static_cast<int>(std::max<double>(n, x)) + 40 +
                          static_cast<int>(std::sqrt(60.0 * std::max<double>(n, x)))) / 2);
    constexpr double big = 1e250;
    double jp1 = 0.0;
    double j = 1e-300;
    double result = 0.0;
    double norm = 0.0;
    const double two_over_x = 2.0 / x;
    for (int k = top; k > 0; --k) {
        const double jm1 = k * two_over_x * j - jp1;
        jp1 = j;
        j = jm1;
        if (std::abs(j) > big) {
            j /= big;
            jp1 /= big;
            result /= big;
            norm /= big;
        }
        // j now holds J_{k-1}
        if (k - 1 == n)
            result = j;
        if ((k - 1) % 2 == 0 && k - 1 > 0)
            norm += 2.0 * j;
    }
    norm += j; // J_0
    return result / norm;
}

} // namespace

double bessel_j(int n, double x) {
    if (n < 0)
        throw DomainError("Bessel order must be non-negative");
    if (x < 0.0)
        throw DomainError("Bessel argument must be non-negative");
    if (x == 0.0)
        return n == 0 ? 1.0 : 0.0;
    if (x < 12.0)
        return series_j(n, x);
    return miller_j(n, x);
}

double bessel_j_prime(int n, double x) {
    if (n == 0)
        return -bessel_j(1, x);
    return 0.5 * (bessel_j(n - 1, x) - bessel_j(n + 1, x));
}

double bessel_root(BesselZeroKind kind, int n, int m) {
    if (n < 0 || m < 1)
        throw DomainError("Bessel zero needs n >= 0 and m >= 1");
    // J_0' = -J_1, and its zero at the origin is not counted.
    if (kind == BesselZeroKind::JPrime && n == 0)
        return bessel_root(BesselZeroKind::J, 1, m);

    auto f = [&](double x) {
        return kind == BesselZeroKind::J ? bessel_j(n, x) : bessel_j_prime(n, x);
    };

    // Count sign changes on a grid finer than half the zero spacing (> 2.4),
    // starting below the first zero (which lies above n for both kinds, n >= 1).
    constexpr double step = 0.1;
    double lo = std::max(1e-3, 0.5 * n);
    double flo = f(lo);
    int found = 0;
    for (int i = 0; i < 100000; ++i) {
        const double hi = lo + step;
        const double fhi = f(hi);
        if (fhi == 0.0) {
            if (++found == m)
                return hi;
        } else if ((flo < 0.0) != (fhi < 0.0) && flo != 0.0) {
            if (++found == m) {
                double a = lo, b = hi, fa = flo;
                for (int it = 0; it < 200; ++it) {
                    const double mid = 0.5 * (a + b);
                    if (mid <= a || mid >= b)
                        break;
                    const double fm = f(mid);
                    if (fm == 0.0)
                        return mid;
                    if ((fm < 0.0) == (fa < 0.0)) {
                        a = mid;
                        fa = fm;
                    } else {
                        b = mid;
                    }
                }
                return 0.5 * (a + b);
            }
        }
        lo = hi;
        flo = fhi;
    }
    throw ConvergenceError("Bessel zero search did not terminate");
}

TransverseMode make_transverse_mode(Polarization pol, int n, int m, double radius) {
    if (n < 0)
        throw DomainError("transverse angular index n must be >= 0");
    if (m < 1)
        throw DomainError("transverse radial index m must be >= 1");
    if (!(radius > 0.0))
        throw DomainError("cavity radius must be positive");
    TransverseMode mode;
    mode.polarization = pol;
    mode.n = n;
    mode.m = m;
    mode.radius = radius;
    mode.root = bessel_root(pol == Polarization::TE ? BesselZeroKind::JPrime : BesselZeroKind::J, n, m);
    return mode;
}

namespace {

double normalization(const TransverseMode& mode) {
    const double R = mode.radius;
    const double x = mode.root;
    const double inv_sqrt_pi = 1.0 / std::sqrt(std::numbers::pi);
    if (mode.polarization == Polarization::TE) {
        const double n = mode.n;
        return inv_sqrt_pi / (R * bessel_j(mode.n, x) * std::sqrt(1.0 - n * n / (x * x)));
    }
    return inv_sqrt_pi / (R * bessel_j(mode.n + 1, x));
}

void check_radius(const TransverseMode& mode, double rho) {
    if (rho < 0.0 || rho > mode.radius * (1.0 + 1e-14))
        throw DomainError("radius outside the cavity cross-section");
}

} // namespace

double transverse_radial(const TransverseMode& mode, double rho) {
    check_radius(mode, rho);
    const double kp = mode.k_perp();
    return normalization(mode) * bessel_j(mode.n, std::min(kp * rho, mode.root));
}

double transverse_radial_derivative(const TransverseMode& mode, double rho) {
    check_radius(mode, rho);
    const double kp = mode.k_perp();
    return normalization(mode) * kp * bessel_j_prime(mode.n, std::min(kp * rho, mode.root));
}

double transverse_radial_over_rho(const TransverseMode& mode, double rho) {
    check_radius(mode, rho);
    const double kp = mode.k_perp();
    const double x = std::min(kp * rho, mode.root);
    if (mode.n == 0) {
        if (x == 0.0)
            throw DomainError("J_0(k rho)/rho is singular on the axis");
        return normalization(mode) * bessel_j(0, x) / rho;
    }
    // J_n(x)/x = (J_{n-1}(x) + J_{n+1}(x)) / (2n)
    return normalization(mode) * kp * (bessel_j(mode.n - 1, x) + bessel_j(mode.n + 1, x)) / (2.0 * mode.n);
}

std::complex<double> transverse_eigenfunction(const TransverseMode& mode, double rho, double phi) {
    return transverse_radial(mode, rho) * std::polar(1.0, mode.n * phi);
}

} // namespace dce
