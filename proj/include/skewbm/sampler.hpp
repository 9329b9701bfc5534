#pragma once

// Exact draws of (B_t, L_t) for skew Brownian motion without simulating paths.
//
// Off the atom, the continuous part of the joint law only depends on the level
// u = ell + |y| + |x|. Along a level set the mass is 2 (u - |x|) (u / t) phi_t(u),
// spread uniformly over the segment ell + |y| = u - |x|, with the sign of y
// positive with probability alpha. Sampling is therefore: draw u, pick a side,
// split the segment uniformly.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "skewbm/density.hpp"
#include "skewbm/errors.hpp"
#include "skewbm/rng.hpp"

namespace skewbm {

struct JointSample {
    double y = 0.0;
    double ell = 0.0;
    bool hit = false;    ///< false iff drawn from the delta_0 atom (path never reached 0)
    double level = 0.0;  ///< u = ell + |y| + |x| for hit samples, 0 for atom samples
};

inline constexpr std::uint64_t kRejectionCap = 1'000'000;

namespace detail {

[[noreturn]] inline void rejection_exhausted(const char* what, double x, double t, std::uint64_t tries) {
    throw InternalError(std::string(what) + ": rejection cap exceeded after " + std::to_string(tries) +
                        " proposals (x=" + std::to_string(x) + ", t=" + std::to_string(t) + ")");
}

}  // namespace detail

/// Draws u > x_abs with density proportional to (u - x_abs) u phi_t(u).
///
/// Works in w = u^2 - x_abs^2, where the target is proportional to
/// (sqrt(x_abs^2 + w) - x_abs) exp(-w / 2t). Near the interface (x_abs <= sqrt t)
/// the proposal is w ~ Gamma(3/2, 2t) = t Z^2 + 2t E, accepted with
/// (u - x_abs) / sqrt(w). Farther out it is w ~ Gamma(2, 2t), accepted with
/// 2 x_abs / (u + x_abs). Both ratios are bounded by 1.
inline double sample_u_given_hit(double x_abs, double t, RngStream& rng) {
    detail::require_positive_time(t);
    if (!(x_abs >= 0.0)) throw DomainError("x_abs must be >= 0");
    const double xa2 = x_abs * x_abs;
    if (x_abs <= std::sqrt(t)) {
        for (std::uint64_t i = 0; i < kRejectionCap; ++i) {
            const double z = rng.normal();
            const double w = t * z * z - 2.0 * t * std::log(rng.uniform_open());
            const double u = std::sqrt(xa2 + w);
            if (rng.uniform() * std::sqrt(w) < u - x_abs) return u;
        }
    } else {
        for (std::uint64_t i = 0; i < kRejectionCap; ++i) {
            const double w = -2.0 * t * (std::log(rng.uniform_open()) + std::log(rng.uniform_open()));
            const double u = std::sqrt(xa2 + w);
            if (u > x_abs && rng.uniform() * (u + x_abs) < 2.0 * x_abs) return u;
        }
    }
    detail::rejection_exhausted("sample_u_given_hit", x_abs, t, kRejectionCap);
}

/// Terminal position of a path that never reached 0: the killed heat kernel on
/// the side of x, by rejection from N(x, t) with acceptance 1 - exp(-2 |x y| / t).
inline double sample_atom_position(double x, double t, RngStream& rng) {
    detail::require_positive_time(t);
    if (x == 0.0) throw DomainError("the atom is empty for x = 0");
    const double xa = std::abs(x);
    const double st = std::sqrt(t);
    for (std::uint64_t i = 0; i < kRejectionCap; ++i) {
        const double y = xa + st * rng.normal();
        if (y <= 0.0) continue;
        if (rng.uniform() < -std::expm1(-2.0 * xa * y / t)) return x > 0.0 ? y : -y;
    }
    detail::rejection_exhausted("sample_atom_position", x, t, kRejectionCap);
}

/// One exact draw from P_x(B_t in dy, L_t in dl).
inline JointSample sample_joint(double x, double t, const SkewParams& s, RngStream& rng) {
    detail::require_positive_time(t);
    const double xa = std::abs(x);
    if (x != 0.0 && rng.uniform() < survival_probability(x, t)) return {sample_atom_position(x, t, rng), 0.0, false, 0.0};

    const double u = sample_u_given_hit(xa, t, rng);
    const bool positive = rng.uniform() < s.alpha();
    const double segment = u - xa;
    const double ell = segment * (1.0 - rng.uniform());  // in (0, segment]
    const double magnitude = segment - ell;
    return {positive ? magnitude : -magnitude, ell, true, u};
}

/// N draws from a single stream, in order.
inline std::vector<JointSample> sample_joint_batch(double x, double t, const SkewParams& s, std::size_t count,
                                                   RngStream rng) {
    std::vector<JointSample> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(sample_joint(x, t, s, rng));
    return out;
}

}  // namespace skewbm
