#pragma once

// Closed-form joint law of skew Brownian motion B_t and its symmetric local
// time at the interface 0, started at x:
//
//   P_x(B_t in dy, L_t in dl) = continuous(x, y, l, t) dy dl + atom(x, y, t) delta_0(dl) dy
//
// Every function here is pure and thread-safe.

#include <cmath>
#include <numbers>
#include <string>

#include "skewbm/errors.hpp"
#include "skewbm/quadrature.hpp"

namespace skewbm {

/// Skewness alpha: probability that an excursion from 0 is positive. Open interval (0, 1).
class SkewParams {
  public:
    explicit SkewParams(double alpha) : alpha_(alpha) {
        if (!(alpha > 0.0 && alpha < 1.0))
            throw DomainError("skewness alpha must lie in (0, 1), got " + std::to_string(alpha));
    }

    double alpha() const noexcept { return alpha_; }

    /// Parameters of the mirrored process -B.
    SkewParams mirrored() const { return SkewParams(1.0 - alpha_); }

  private:
    double alpha_;
};

struct QueryPoint {
    double x = 0.0;    ///< start position
    double t = 1.0;    ///< elapsed time, > 0
    double y = 0.0;    ///< terminal position
    double ell = 0.0;  ///< local-time level, >= 0
};

struct DensityValue {
    double continuous = 0.0;  ///< density per dy dl
    double atom = 0.0;        ///< coefficient of delta_0(dl) per dy
};

/// Which one-sided limit to take when y == 0 exactly.
enum class Side { above, below };

namespace detail {

inline constexpr double kLogUnderflow = -700.0;

/// w / sqrt(2 pi t^3) * exp(-w^2 / 2t), assembled in log space once the exponent underflows.
inline double interface_kernel(double w, double t) {
    if (w <= 0.0) return 0.0;
    const double expo = -w * w / (2.0 * t);
    if (expo < kLogUnderflow)
        return std::exp(std::log(w) + expo - 0.5 * std::log(2.0 * std::numbers::pi * t * t * t));
    return w / std::sqrt(2.0 * std::numbers::pi * t * t * t) * std::exp(expo);
}

/// Weight of the y <= 0 branches, 2(1 - alpha) for either sign of x.
/// (Written as 2(alpha - 1) in some statements of the x <= 0 case; that sign is a misprint.)
inline double negative_side_weight(double alpha) { return 2.0 * (1.0 - alpha); }

inline double positive_side_weight(double alpha) { return 2.0 * alpha; }

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

inline void validate(const QueryPoint& p) {
    require_positive_time(p.t);
    require_nonnegative_level(p.ell);
}

inline double joint_branch(const QueryPoint& p, const SkewParams& s, Side side) {
    const double a = s.alpha();
    const double t = p.t;
    if (p.x >= 0.0) {
        if (side == Side::below) return negative_side_weight(a) * interface_kernel(p.ell - p.y + p.x, t);
        return positive_side_weight(a) * interface_kernel(p.ell + p.y + p.x, t);
    }
    if (side == Side::above) return positive_side_weight(a) * interface_kernel(p.ell + p.y - p.x, t);
    return negative_side_weight(a) * interface_kernel(p.ell - p.y - p.x, t);
}

}  // namespace detail

/// Heat kernel exp(-z^2 / 2t) / sqrt(2 pi t).
inline double gauss_kernel(double z, double t) {
    detail::require_positive_time(t);
    const double expo = -z * z / (2.0 * t);
    if (expo < detail::kLogUnderflow) return std::exp(expo - 0.5 * std::log(2.0 * std::numbers::pi * t));
    return std::exp(expo) / std::sqrt(2.0 * std::numbers::pi * t);
}

/// Continuous part of the joint law, taking the one-sided limit `side` when y == 0.
/// For y != 0 the side argument is ignored.
inline double joint_density_continuous(const QueryPoint& p, const SkewParams& s, Side side) {
    detail::validate(p);
    if (p.y > 0.0) side = Side::above;
    if (p.y < 0.0) side = Side::below;
    return detail::joint_branch(p, s, side);
}

/// Continuous part of the joint law. The density jumps across y = 0, so y == 0
/// is rejected here; use the sided or averaged variant for it.
inline double joint_density_continuous(const QueryPoint& p, const SkewParams& s) {
    detail::validate(p);
    if (p.y == 0.0)
        throw DomainError("joint density is discontinuous at y = 0; pass a Side or use joint_density_averaged");
    return joint_density_continuous(p, s, p.y > 0.0 ? Side::above : Side::below);
}

/// alpha f(0-) + (1 - alpha) f(0+) at y == 0, the plain density elsewhere.
inline double joint_density_averaged(const QueryPoint& p, const SkewParams& s) {
    detail::validate(p);
    if (p.y != 0.0) return joint_density_continuous(p, s);
    const double a = s.alpha();
    return a * detail::joint_branch(p, s, Side::below) + (1.0 - a) * detail::joint_branch(p, s, Side::above);
}

/// Coefficient of delta_0(dl): the killed-at-0 heat kernel on the starting side.
inline double atom_weight(double x, double y, double t) {
    detail::require_positive_time(t);
    if (x * y <= 0.0) return 0.0;
    const double v = gauss_kernel(y - x, t) - gauss_kernel(y + x, t);
    return v > 0.0 ? v : 0.0;
}

inline double atom_weight(const QueryPoint& p, const SkewParams& /*alpha-free*/) {
    return atom_weight(p.x, p.y, p.t);
}

inline DensityValue evaluate(const QueryPoint& p, const SkewParams& s, Side side) {
    return {joint_density_continuous(p, s, side), atom_weight(p.x, p.y, p.t)};
}

/// P_x(tau_0 > t), the total mass of the delta_0 atom.
inline double survival_probability(double x, double t) {
    detail::require_positive_time(t);
    return std::erf(std::abs(x) / std::sqrt(2.0 * t));
}

/// Mass of the atom over the starting-side segment between 0 and y
/// (0 if y is on the other side).
inline double atom_mass_to(double x, double y, double t) {
    detail::require_positive_time(t);
    if (x * y <= 0.0) return 0.0;
    const double xa = std::abs(x);
    const double ya = std::abs(y);
    const double st = std::sqrt(t);
    using detail::normal_cdf;
    return (normal_cdf((ya - xa) / st) - normal_cdf(-xa / st)) - (normal_cdf((ya + xa) / st) - normal_cdf(xa / st));
}

/// P_x(tau_0 > t, B_t <= y): cumulative mass of the atom in y.
inline double atom_cdf(double x, double y, double t) {
    detail::require_positive_time(t);
    if (x > 0.0) return y > 0.0 ? atom_mass_to(x, y, t) : 0.0;
    if (x < 0.0) return y < 0.0 ? survival_probability(x, t) - atom_mass_to(x, y, t) : survival_probability(x, t);
    return 0.0;
}

/// SBM transition density, one-sided limit `side` at y == 0.
inline double skew_marginal_density(double x, double y, double t, const SkewParams& s, Side side) {
    detail::require_positive_time(t);
    if (y > 0.0) side = Side::above;
    if (y < 0.0) side = Side::below;
    const double a = s.alpha();
    const double ya = std::abs(y);
    const double xa = std::abs(x);
    if (side == Side::above) {
        if (x >= 0.0) return gauss_kernel(y - x, t) + (2.0 * a - 1.0) * gauss_kernel(ya + xa, t);
        return detail::positive_side_weight(a) * gauss_kernel(y - x, t);
    }
    if (x <= 0.0) return gauss_kernel(y - x, t) - (2.0 * a - 1.0) * gauss_kernel(ya + xa, t);
    return detail::negative_side_weight(a) * gauss_kernel(y - x, t);
}

inline double skew_marginal_density(double x, double y, double t, const SkewParams& s) {
    if (y == 0.0) throw DomainError("transition density is discontinuous at y = 0; pass a Side");
    return skew_marginal_density(x, y, t, s, Side::above);
}

/// P_x(B_t <= y).
inline double skew_marginal_cdf(double x, double y, double t, const SkewParams& s) {
    detail::require_positive_time(t);
    if (x < 0.0) return 1.0 - skew_marginal_cdf(-x, -y, t, s.mirrored());
    const double a = s.alpha();
    const double st = std::sqrt(t);
    using detail::normal_cdf;
    const double below_zero = 2.0 * (1.0 - a) * normal_cdf((std::min(y, 0.0) - x) / st);
    if (y <= 0.0) return below_zero;
    return below_zero + normal_cdf((y - x) / st) - normal_cdf(-x / st) +
           (2.0 * a - 1.0) * (normal_cdf((y + x) / st) - normal_cdf(x / st));
}

/// Continuous part of the local-time law, 2 phi_t(ell + |x|). Independent of alpha.
inline double local_time_marginal_density(double x, double t, double ell) {
    detail::require_positive_time(t);
    detail::require_nonnegative_level(ell);
    return 2.0 * gauss_kernel(ell + std::abs(x), t);
}

/// Breakdown of a normalization integral.
struct MassBreakdown {
    double continuous = 0.0;
    double atom = 0.0;
    double quadrature_error = 0.0;  ///< summed Gauss-Kronrod error estimates
    double tail_bound = 0.0;        ///< bound on mass outside the truncated domain
    double total() const { return continuous + atom; }
};

/// Integrates both parts of the joint law numerically over a truncated domain.
/// Throws QuadratureError when the truncation leaves more than spec.tail_tolerance outside.
inline MassBreakdown normalization_breakdown(double x, double t, const SkewParams& s,
                                             const QuadratureSpec& spec = {}) {
    detail::require_positive_time(t);
    const double xa = std::abs(x);
    const double st = std::sqrt(t);
    const double k = spec.truncation_sigmas;

    // Continuous part lives on u = ell + |y| + |x| >= |x|; its mass beyond u > U is at most
    // 2 [S phi(S) + Q(S)] with S = U / sqrt(t). The atom beyond |y| > |x| + k sqrt(t) is below Q(k).
    const double upper = xa + k * st;
    const double big_s = upper / st;
    MassBreakdown out;
    out.tail_bound = 2.0 * (big_s * gauss_kernel(big_s, 1.0) + detail::normal_tail(big_s)) +
                     (x != 0.0 ? detail::normal_tail(k) : 0.0);
    if (!(out.tail_bound <= spec.tail_tolerance))
        throw QuadratureError("truncation at " + std::to_string(k) + " sigmas leaves estimated tail mass " +
                              std::to_string(out.tail_bound) + " above tolerance " +
                              std::to_string(spec.tail_tolerance));

    const double reach = upper - xa;  // max of ell + |y|
    auto column = [&](double y, Side side) {
        double err = 0.0;
        const double v = detail::integrate(
            [&](double ell) { return joint_density_continuous({x, t, y, ell}, s, side); }, 0.0,
            reach - std::abs(y), spec, &err);
        out.quadrature_error += err;
        return v;
    };
    double err_lo = 0.0;
    double err_hi = 0.0;
    out.continuous = detail::integrate([&](double y) { return column(y, Side::below); }, -reach, 0.0, spec, &err_lo) +
                     detail::integrate([&](double y) { return column(y, Side::above); }, 0.0, reach, spec, &err_hi);
    out.quadrature_error += err_lo + err_hi;

    if (x != 0.0) {
        double err = 0.0;
        const double sign = x > 0.0 ? 1.0 : -1.0;
        out.atom = detail::integrate([&](double ya) { return atom_weight(x, sign * ya, t); }, 0.0, upper, spec, &err);
        out.quadrature_error += err;
    }
    return out;
}

/// Total mass of the joint law by quadrature; 1 up to quadrature and truncation error.
inline double normalization_mass(double x, double t, const SkewParams& s, const QuadratureSpec& spec = {}) {
    return normalization_breakdown(x, t, s, spec).total();
}

}  // namespace skewbm
