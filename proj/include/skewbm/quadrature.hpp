#pragma once

#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "skewbm/errors.hpp"

namespace skewbm {

/// Controls the adaptive Gauss-Kronrod panels used for all mass integrals.
struct QuadratureSpec {
    double truncation_sigmas = 10.0;  ///< half-width of the truncated domain in units of sqrt(t)
    double tolerance = 1e-12;         ///< relative tolerance per adaptive integral
    unsigned max_depth = 18;
    double tail_tolerance = 1e-9;     ///< largest admissible mass outside the truncated domain
};

namespace detail {

/// Upper bound of the standard normal tail Q(s) = P(Z > s).
inline double normal_tail(double s) { return 0.5 * std::erfc(s / std::sqrt(2.0)); }

/// Adaptive 31-point Gauss-Kronrod on [a, b]; a == b yields 0.
template <class F>
double integrate(F&& f, double a, double b, const QuadratureSpec& spec, double* abs_error = nullptr) {
    if (!(b > a)) {
        if (abs_error) *abs_error = 0.0;
        return 0.0;
    }
    double err = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        f, a, b, spec.max_depth, spec.tolerance, &err);
    if (!std::isfinite(value)) throw QuadratureError("non-finite quadrature result");
    if (abs_error) *abs_error = err;
    return value;
}

}  // namespace detail
}  // namespace skewbm
