#pragma once

// Skew random walk approximation of skew Brownian motion with drift.
//
// Lattice hZ with h = sqrt(dt), dt = t / N. Away from 0 the walk steps +h with
// probability (1 + v h) / 2; at 0 it steps +h with probability alpha. Local time
// at 0 is h times the number of visits to site 0, which converges to the
// symmetric (occupation-density) local time.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "skewbm/density.hpp"
#include "skewbm/errors.hpp"
#include "skewbm/rng.hpp"

namespace skewbm {

/// Drift v off the interface together with the coupling gamma = (2 alpha - 1) v.
struct DriftSpec {
    double v = 0.0;
    double gamma = 0.0;

    DriftSpec() = default;
    DriftSpec(double drift, double alpha) : v(drift), gamma((2.0 * alpha - 1.0) * drift) {}
};

/// How steps spent exactly at site 0 count toward the time above the interface.
enum class OccupationTieRule {
    alpha_weighted,     ///< each step at 0 contributes alpha * dt
    strictly_positive,  ///< steps at 0 contribute nothing
};

struct WalkOptions {
    OccupationTieRule tie_rule = OccupationTieRule::alpha_weighted;
};

struct PathRecord {
    double terminal = 0.0;
    double local_time = 0.0;
    double occupation_pos = 0.0;  ///< time in (0, inf) up to t
    std::int64_t n_steps = 0;
};

/// Lattice geometry shared by every path of a run.
struct WalkGrid {
    std::int64_t steps = 0;
    double dt = 0.0;
    double h = 0.0;

    WalkGrid(double t, int steps_per_unit_time) {
        detail::require_positive_time(t);
        if (steps_per_unit_time < 100)
            throw ParameterError("need at least 100 steps per unit time, got " + std::to_string(steps_per_unit_time));
        steps = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(t * steps_per_unit_time - 1e-9)));
        dt = t / static_cast<double>(steps);
        h = std::sqrt(dt);
    }

    /// Nearest lattice site to x.
    std::int64_t site_of(double x) const { return std::llround(x / h); }
};

namespace detail {

/// P(U < p) for a raw 64-bit draw U, with exact handling of p in {0, 1}.
class BitThreshold {
  public:
    explicit BitThreshold(double p)
        : always_(p >= 1.0), never_(p <= 0.0),
          threshold_(always_ || never_ ? 0 : static_cast<std::uint64_t>(std::ldexp(p, 64))) {}

    bool operator()(RngStream& rng) const {
        if (always_) return true;
        if (never_) return false;
        return rng() < threshold_;
    }

  private:
    bool always_;
    bool never_;
    std::uint64_t threshold_;
};

/// Bernoulli(p) steps off the interface. A fair step uses one bit of a 64-bit
/// draw; a biased step compares a 32-bit half against p * 2^32.
class StepSource {
  public:
    explicit StepSource(double p)
        : fair_(p == 0.5), threshold_(static_cast<std::uint32_t>(std::ldexp(p, 32))) {}

    bool operator()(RngStream& rng) {
        if (left_ == 0) {
            word_ = rng();
            left_ = fair_ ? 64 : 2;
        }
        --left_;
        if (fair_) {
            const bool bit = word_ & 1u;
            word_ >>= 1;
            return bit;
        }
        const auto half = static_cast<std::uint32_t>(word_);
        word_ >>= 32;
        return half < threshold_;
    }

  private:
    bool fair_;
    std::uint32_t threshold_;
    std::uint64_t word_ = 0;
    int left_ = 0;
};

inline void validate_walk_alpha(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw DomainError("walk skewness alpha must lie in [0, 1], got " + std::to_string(alpha));
}

}  // namespace detail

/// One walk from x over [0, t]. alpha may be 0 or 1 (reflected limits).
inline PathRecord simulate_path(double x, double t, double alpha, const DriftSpec& drift, int steps_per_unit_time,
                                RngStream& rng, const WalkOptions& options = {}) {
    detail::validate_walk_alpha(alpha);
    const WalkGrid grid(t, steps_per_unit_time);
    const double bias = drift.v * grid.h;
    if (!(std::abs(bias) < 1.0))
        throw ParameterError("drift bias |v| h = " + std::to_string(std::abs(bias)) +
                             " must be < 1; increase steps per unit time");

    detail::StepSource step_up(0.5 * (1.0 + bias));
    const detail::BitThreshold leave_up(alpha);

    std::int64_t site = grid.site_of(x);
    std::int64_t visits = 0;
    std::int64_t positive = 0;
    for (std::int64_t k = 0; k < grid.steps; ++k) {
        std::int64_t up;
        if (site == 0) [[unlikely]] {
            ++visits;
            up = leave_up(rng);
        } else {
            positive += site > 0;
            up = step_up(rng);
        }
        site += 2 * up - 1;
    }

    const double tie_weight = options.tie_rule == OccupationTieRule::alpha_weighted ? alpha : 0.0;
    PathRecord rec;
    rec.terminal = static_cast<double>(site) * grid.h;
    rec.local_time = static_cast<double>(visits) * grid.h;
    rec.occupation_pos =
        std::min(t, (static_cast<double>(positive) + tie_weight * static_cast<double>(visits)) * grid.dt);
    rec.n_steps = grid.steps;
    return rec;
}

inline PathRecord simulate_path(double x, double t, const SkewParams& s, const DriftSpec& drift,
                                int steps_per_unit_time, RngStream& rng, const WalkOptions& options = {}) {
    return simulate_path(x, t, s.alpha(), drift, steps_per_unit_time, rng, options);
}

/// Everything needed to reproduce a batch of paths.
struct BatchSpec {
    double x = 0.0;
    double t = 1.0;
    double alpha = 0.5;
    double v = 0.0;
    int steps_per_unit_time = 10'000;
    std::size_t paths = 20'000;
    std::uint64_t seed = 0;
    std::uint64_t base_stream = 0;
    WalkOptions options{};
    unsigned threads = 0;  ///< 0 = hardware concurrency
};

/// Path i is driven by RngStream(seed, base_stream + i); the result does not
/// depend on the number of worker threads.
inline std::vector<PathRecord> simulate_batch(const BatchSpec& spec) {
    if (spec.paths == 0) throw ParameterError("batch needs at least one path");
    detail::validate_walk_alpha(spec.alpha);
    const DriftSpec drift(spec.v, spec.alpha);

    std::vector<PathRecord> out(spec.paths);
    auto run_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            RngStream rng(spec.seed, spec.base_stream + i);
            out[i] = simulate_path(spec.x, spec.t, spec.alpha, drift, spec.steps_per_unit_time, rng, spec.options);
        }
    };

    // Validate once on the calling thread so parameter errors surface as exceptions here.
    run_range(0, 1);
    unsigned workers = spec.threads != 0 ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, spec.paths - 1));
    if (workers <= 1) {
        run_range(1, spec.paths);
        return out;
    }
    {
        std::vector<std::jthread> pool;
        const std::size_t rest = spec.paths - 1;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t begin = 1 + rest * w / workers;
            const std::size_t end = 1 + rest * (w + 1) / workers;
            pool.emplace_back(run_range, begin, end);
        }
    }
    return out;
}

}  // namespace skewbm
