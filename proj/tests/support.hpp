#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>

namespace dce::test {

template <class F>
double integrate(F f, double a, double b, double tol = 1e-12) {
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 8, tol);
}

inline double rel_diff(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

// Observed convergence order from errors at steps h and h/2.
inline double order(double err_h, double err_h2) { return std::log2(err_h / err_h2); }

} // namespace dce::test
