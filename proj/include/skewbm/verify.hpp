#pragma once

// Verification engine: named numerical and statistical checks that tie the
// exact sampler and the random-walk simulator back to the closed-form law.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "skewbm/density.hpp"
#include "skewbm/errors.hpp"
#include "skewbm/histogram.hpp"
#include "skewbm/path_sim.hpp"
#include "skewbm/rng.hpp"
#include "skewbm/sampler.hpp"
#include "skewbm/stats.hpp"
#include "skewbm/version.hpp"

namespace skewbm {

enum class CheckKind {
    normalization,
    flux_jump,
    symmetry,
    marginal_consistency,
    ks_1d,
    chisq_2d,
    atom_fraction,
    scaling,
    local_time_law,
    positive_fraction,
    local_time_mean,
};

inline constexpr std::array<std::pair<CheckKind, std::string_view>, 11> kCheckKindNames{{
    {CheckKind::normalization, "normalization"},
    {CheckKind::flux_jump, "flux-jump"},
    {CheckKind::symmetry, "symmetry"},
    {CheckKind::marginal_consistency, "marginal-consistency"},
    {CheckKind::ks_1d, "ks-1d"},
    {CheckKind::chisq_2d, "chisq-2d"},
    {CheckKind::atom_fraction, "atom-fraction"},
    {CheckKind::scaling, "scaling"},
    {CheckKind::local_time_law, "local-time-law"},
    {CheckKind::positive_fraction, "positive-fraction"},
    {CheckKind::local_time_mean, "local-time-mean"},
}};

inline std::string_view to_string(CheckKind kind) {
    for (const auto& [k, name] : kCheckKindNames)
        if (k == kind) return name;
    return "unknown";
}

inline CheckKind parse_check_kind(std::string_view name) {
    for (const auto& [k, n] : kCheckKindNames)
        if (n == name) return k;
    throw ConfigError("unknown check kind '" + std::string(name) + "'");
}

/// Parameters shared by all check kinds; each kind reads the subset it needs.
///
/// `target` selects the statistic for kinds that have several:
///   ks-1d:             terminal | occupation-arcsine | drift-mirror | sampler-y | sampler-ell | atom-y
///   chisq-2d, atom-fraction, positive-fraction, local-time-mean: sampler | path
///   local-time-law:    alpha-free | half-normal
struct CheckParams {
    double x = 0.0;
    double t = 1.0;
    double alpha = 0.5;
    double v = 0.0;
    double ell = 0.5;
    std::size_t samples = 0;  ///< N: samples, paths, or random tuples
    int steps = 10'000;       ///< n: walk steps per unit time
    int bins = 8;
    double tolerance = 0.0;
    double significance = 0.01;
    std::string target;
};

struct CheckSpec {
    std::string name;
    CheckKind kind = CheckKind::normalization;
    CheckParams params;
    std::uint64_t seed = 0;
};

struct CheckResult {
    std::string name;
    CheckKind kind = CheckKind::normalization;
    double statistic = 0.0;
    double threshold = 0.0;
    bool pass = false;
    std::size_t n_samples = 0;
    double millis = 0.0;
    std::string diagnostic;  ///< error text when a sub-module threw
};

struct VerificationReport {
    std::string version = std::string(kVersion);
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;  ///< sorted by name
    bool overall_pass = false;

    const CheckResult* find(std::string_view name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

namespace detail {

inline bool is_statistical(CheckKind kind) {
    switch (kind) {
        case CheckKind::ks_1d:
        case CheckKind::chisq_2d:
        case CheckKind::atom_fraction:
        case CheckKind::positive_fraction:
        case CheckKind::local_time_mean:
            return true;
        default:
            return false;
    }
}

inline std::string canonical(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

/// Shares walk batches and joint samples between checks with identical inputs.
/// Stream ids derive from the inputs, so a batch is the same whichever check asks first.
class SampleCache {
  public:
    const std::vector<PathRecord>& paths(const CheckParams& p, std::uint64_t seed) {
        const std::string key = "path|" + canonical(p.x) + "|" + canonical(p.t) + "|" + canonical(p.alpha) + "|" +
                                canonical(p.v) + "|" + std::to_string(p.steps);
        auto full = std::make_tuple(key, p.samples, seed);
        auto it = paths_.find(full);
        if (it != paths_.end()) return it->second;
        BatchSpec b;
        b.x = p.x;
        b.t = p.t;
        b.alpha = p.alpha;
        b.v = p.v;
        b.steps_per_unit_time = p.steps;
        b.paths = p.samples;
        b.seed = seed;
        b.base_stream = fnv1a(key);
        return paths_.emplace(full, simulate_batch(b)).first->second;
    }

    const std::vector<JointSample>& joint(const CheckParams& p, std::uint64_t seed) {
        const std::string key = "sampler|" + canonical(p.x) + "|" + canonical(p.t) + "|" + canonical(p.alpha);
        auto full = std::make_tuple(key, p.samples, seed);
        auto it = joint_.find(full);
        if (it != joint_.end()) return it->second;
        return joint_.emplace(full, sample_joint_batch(p.x, p.t, SkewParams(p.alpha), p.samples, RngStream(seed, fnv1a(key))))
            .first->second;
    }

  private:
    std::map<std::tuple<std::string, std::size_t, std::uint64_t>, std::vector<PathRecord>> paths_;
    std::map<std::tuple<std::string, std::size_t, std::uint64_t>, std::vector<JointSample>> joint_;
};

struct Outcome {
    double statistic = 0.0;
    double threshold = 0.0;
    bool pass = false;
    std::size_t n_samples = 0;
};

/// statistic <= threshold
inline Outcome at_most(double statistic, double threshold, std::size_t n = 0) {
    return {statistic, threshold, statistic <= threshold, n};
}

/// p-value >= significance
inline Outcome p_at_least(double p_value, double significance, std::size_t n) {
    return {p_value, significance, p_value >= significance, n};
}

inline double tol_or(const CheckParams& p, double fallback) { return p.tolerance > 0.0 ? p.tolerance : fallback; }

/// Uniform draw on [lo, hi).
inline double draw(RngStream& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

inline Outcome run_normalization(const CheckParams& p) {
    const double mass = normalization_mass(p.x, p.t, SkewParams(p.alpha));
    return at_most(std::abs(mass - 1.0), tol_or(p, 1e-6));
}

inline Outcome run_flux_jump(const CheckParams& p, std::uint64_t seed) {
    auto gap = [](double x, double t, double ell, double a) {
        const SkewParams s(a);
        const QueryPoint q{x, t, 0.0, ell};
        return std::abs((1.0 - a) * joint_density_continuous(q, s, Side::above) -
                        a * joint_density_continuous(q, s, Side::below));
    };
    if (p.samples == 0) return at_most(gap(p.x, p.t, p.ell, p.alpha), tol_or(p, 1e-12), 1);
    RngStream rng(seed, fnv1a("flux-jump"));
    double worst = 0.0;
    for (std::size_t i = 0; i < p.samples; ++i) {
        const double x = draw(rng, -3.0, 3.0);
        const double t = draw(rng, 0.05, 4.0);
        const double ell = draw(rng, 1e-6, 3.0);
        const double a = draw(rng, 0.01, 0.99);
        worst = std::max(worst, gap(x, t, ell, a));
    }
    return at_most(worst, tol_or(p, 1e-12), p.samples);
}

inline Outcome run_symmetry(const CheckParams& p, std::uint64_t seed) {
    RngStream rng(seed, fnv1a("symmetry"));
    const std::size_t n = std::max<std::size_t>(p.samples, 1);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = draw(rng, -3.0, 3.0);
        double y = draw(rng, -3.0, 3.0);
        if (y == 0.0) y = 0.5;
        const double ell = draw(rng, 0.0, 3.0);
        const double t = draw(rng, 0.05, 4.0);
        const double a = draw(rng, 0.01, 0.99);
        const double f = joint_density_continuous({x, t, y, ell}, SkewParams(a));
        const double g = joint_density_continuous({-x, t, -y, ell}, SkewParams(1.0 - a));
        const double atom_gap = std::abs(atom_weight(x, y, t) - atom_weight(-x, -y, t));
        worst = std::max({worst, std::abs(f - g), atom_gap});
    }
    return at_most(worst, tol_or(p, 1e-12), n);
}

/// Grid of `count` points evenly spaced on [lo, hi].
inline std::vector<double> linspace(double lo, double hi, int count) {
    std::vector<double> out;
    for (int i = 0; i < count; ++i) out.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
    return out;
}

/// Largest gap between the ell-quadrature of the joint law (plus atom) and the transition density.
inline Outcome run_marginal_consistency(const CheckParams& p) {
    const SkewParams s(p.alpha);
    const int count = p.bins > 1 ? p.bins : 20;
    const QuadratureSpec q;
    double worst = 0.0;
    for (double x : linspace(-3.0, 3.0, count)) {
        for (double y : linspace(-3.0, 3.0, count)) {
            if (y == 0.0) continue;
            const double upper = 10.0 * std::sqrt(p.t) + std::abs(x) + std::abs(y);
            const double integrated =
                integrate([&](double ell) { return joint_density_continuous({x, p.t, y, ell}, s); }, 0.0, upper, q) +
                atom_weight(x, y, p.t);
            worst = std::max(worst, std::abs(integrated - skew_marginal_density(x, y, p.t, s)));
        }
    }
    return at_most(worst, tol_or(p, 1e-6), static_cast<std::size_t>(count) * count);
}

inline Outcome run_scaling(const CheckParams& p, std::uint64_t seed) {
    RngStream rng(seed, fnv1a("scaling"));
    const std::size_t n = std::max<std::size_t>(p.samples, 1);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = draw(rng, -2.0, 2.0);
        double y = draw(rng, -2.0, 2.0);
        if (y == 0.0) y = 0.25;
        const double ell = draw(rng, 0.0, 2.0);
        const double t = draw(rng, 0.1, 2.0);
        const double lambda = std::exp(draw(rng, std::log(0.1), std::log(10.0)));
        const SkewParams s(draw(rng, 0.01, 0.99));
        const double r = std::sqrt(lambda);
        const double lhs = joint_density_continuous({x, t, y, ell}, s);
        const double rhs = joint_density_continuous({x / r, t / lambda, y / r, ell / r}, s) / lambda;
        const double scale = std::max(std::abs(lhs), 1e-300);
        worst = std::max(worst, std::abs(lhs - rhs) / scale);
    }
    return at_most(worst, tol_or(p, 1e-10), n);
}

inline Outcome run_local_time_law(const CheckParams& p) {
    const int count = p.bins > 1 ? p.bins : 50;
    const auto levels = linspace(0.0, 5.0 * std::sqrt(p.t), count);
    double worst = 0.0;
    if (p.target == "half-normal") {
        // ell_t has the law of |B_t| from 0: density sqrt(2 / (pi t)) exp(-ell^2 / 2t)
        for (double ell : levels) {
            const double half_normal = std::sqrt(2.0 / (std::numbers::pi * p.t)) * std::exp(-ell * ell / (2.0 * p.t));
            worst = std::max(worst, std::abs(local_time_marginal_density(0.0, p.t, ell) - half_normal));
        }
        return at_most(worst, tol_or(p, 1e-12), levels.size());
    }
    if (p.target != "alpha-free") throw ConfigError("local-time-law target must be alpha-free or half-normal");
    const QuadratureSpec q;
    const double reach = q.truncation_sigmas * std::sqrt(p.t) + std::abs(p.x);
    for (double a : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const SkewParams s(a);
        for (double ell : levels) {
            const double integrated =
                integrate([&](double y) { return joint_density_continuous({p.x, p.t, y, ell}, s, Side::below); },
                          -reach, 0.0, q) +
                integrate([&](double y) { return joint_density_continuous({p.x, p.t, y, ell}, s, Side::above); }, 0.0,
                          reach, q);
            worst = std::max(worst, std::abs(integrated - local_time_marginal_density(p.x, p.t, ell)));
        }
    }
    return at_most(worst, tol_or(p, 1e-9), levels.size() * 5);
}

inline void require_samples(const CheckParams& p) {
    if (p.samples < 1000) throw ConfigError("statistical checks need N >= 1000");
    if (!(p.significance > 0.0 && p.significance < 1.0)) throw ConfigError("significance must lie in (0, 1)");
}

inline double arcsine_cdf(double u) {
    return 2.0 / std::numbers::pi * std::asin(std::sqrt(std::clamp(u, 0.0, 1.0)));
}

inline Outcome run_ks(const CheckParams& p, std::uint64_t seed, SampleCache& cache) {
    const std::size_t n = p.samples;
    if (p.target == "terminal" || p.target == "occupation-arcsine") {
        const auto& paths = cache.paths(p, seed);
        std::vector<double> values;
        values.reserve(n);
        if (p.target == "terminal") {
            if (!(p.alpha > 0.0 && p.alpha < 1.0)) throw ConfigError("terminal law needs alpha in (0, 1)");
            if (p.v != 0.0) throw ConfigError("terminal law comparator has no drift");
            for (const auto& r : paths) values.push_back(r.terminal);
            const SkewParams s(p.alpha);
            const auto ks = stats::ks_one_sample_lattice(values, [&](double y) { return skew_marginal_cdf(p.x, y, p.t, s); });
            return p_at_least(ks.p_value, p.significance, n);
        }
        for (const auto& r : paths) values.push_back(r.occupation_pos / p.t);
        const auto ks = stats::ks_one_sample_lattice(values, arcsine_cdf);
        return p_at_least(ks.p_value, p.significance, n);
    }
    if (p.target == "drift-mirror") {
        CheckParams mirror = p;
        mirror.x = -p.x;
        mirror.alpha = 1.0 - p.alpha;
        mirror.v = -p.v;
        std::vector<double> a;
        std::vector<double> b;
        for (const auto& r : cache.paths(p, seed)) a.push_back(r.terminal);
        for (const auto& r : cache.paths(mirror, seed)) b.push_back(-r.terminal);
        const auto ks = stats::ks_two_sample(a, b);
        return p_at_least(ks.p_value, p.significance, 2 * n);
    }
    const auto& joint = cache.joint(p, seed);
    const SkewParams s(p.alpha);
    std::vector<double> values;
    if (p.target == "sampler-y") {
        for (const auto& j : joint) values.push_back(j.y);
        const auto ks = stats::ks_one_sample(values, [&](double y) { return skew_marginal_cdf(p.x, y, p.t, s); });
        return p_at_least(ks.p_value, p.significance, n);
    }
    const double st = std::sqrt(p.t);
    const double xa = std::abs(p.x);
    if (p.target == "sampler-ell") {
        // hit part of ell: density 2 phi_t(ell + |x|) normalised by 2 Q(|x| / sqrt t)
        for (const auto& j : joint)
            if (j.hit) values.push_back(j.ell);
        const double tail = normal_tail(xa / st);
        const auto ks = stats::ks_one_sample(values, [&](double ell) {
            return (normal_tail(xa / st) - normal_tail((ell + xa) / st)) / tail;
        });
        return p_at_least(ks.p_value, p.significance, values.size());
    }
    if (p.target == "atom-y") {
        for (const auto& j : joint)
            if (!j.hit) values.push_back(j.y);
        if (values.size() < 1000) throw ConfigError("fewer than 1000 atom samples; raise N or |x|");
        const double mass = survival_probability(p.x, p.t);
        const auto ks = stats::ks_one_sample(values, [&](double y) { return atom_cdf(p.x, y, p.t) / mass; });
        return p_at_least(ks.p_value, p.significance, values.size());
    }
    throw ConfigError("unknown ks-1d target '" + p.target + "'");
}

inline Outcome run_chisq(const CheckParams& p, std::uint64_t seed, SampleCache& cache) {
    const SkewParams s(p.alpha);
    const BinSpec bins = default_bins(p.x, p.t, p.bins);
    Histogram2D h;
    if (p.target == "path") {
        if (p.v != 0.0) throw ConfigError("joint law comparator has no drift");
        h = histogram2d(std::span<const PathRecord>(cache.paths(p, seed)), bins, p.x, p.t, s);
    } else if (p.target == "sampler" || p.target.empty()) {
        h = histogram2d(std::span<const JointSample>(cache.joint(p, seed)), bins, p.x, p.t, s);
    } else {
        throw ConfigError("chisq-2d target must be sampler or path");
    }
    return p_at_least(chi_square(h).p_value, p.significance, p.samples);
}

inline Outcome run_atom_fraction(const CheckParams& p, std::uint64_t seed, SampleCache& cache) {
    double never_hit = 0.0;
    if (p.target == "path") {
        for (const auto& r : cache.paths(p, seed)) never_hit += r.local_time == 0.0;
    } else {
        for (const auto& j : cache.joint(p, seed)) never_hit += !j.hit;
    }
    const double z = stats::binomial_z(never_hit, static_cast<double>(p.samples), survival_probability(p.x, p.t));
    return at_most(std::abs(z), tol_or(p, 3.0), p.samples);
}

/// Walks ending on site 0 count alpha toward the positive side, as the next step would.
inline Outcome run_positive_fraction(const CheckParams& p, std::uint64_t seed, SampleCache& cache) {
    if (p.v != 0.0) throw ConfigError("positive-fraction comparator has no drift");
    double above = 0.0;
    if (p.target == "sampler") {
        for (const auto& j : cache.joint(p, seed)) above += j.y > 0.0;
    } else {
        for (const auto& r : cache.paths(p, seed)) above += r.terminal > 0.0 ? 1.0 : (r.terminal == 0.0 ? p.alpha : 0.0);
    }
    const double expected = 1.0 - skew_marginal_cdf(p.x, 0.0, p.t, SkewParams(p.alpha));
    const double z = stats::binomial_z(above, static_cast<double>(p.samples), expected);
    return at_most(std::abs(z), tol_or(p, 3.0), p.samples);
}

/// E[ell_t] = 2 sqrt(t) [phi(a) - a Q(a)] with a = |x| / sqrt(t).
inline double local_time_mean(double x, double t) {
    const double st = std::sqrt(t);
    const double a = std::abs(x) / st;
    return 2.0 * st * (gauss_kernel(a, 1.0) - a * normal_tail(a));
}

inline Outcome run_local_time_mean(const CheckParams& p, std::uint64_t seed, SampleCache& cache) {
    std::vector<double> values;
    if (p.target == "sampler") {
        for (const auto& j : cache.joint(p, seed)) values.push_back(j.ell);
    } else {
        if (p.v != 0.0) throw ConfigError("local-time-mean comparator has no drift");
        for (const auto& r : cache.paths(p, seed)) values.push_back(r.local_time);
    }
    const auto ms = stats::mean_sd(values);
    const double z = (ms.mean - local_time_mean(p.x, p.t)) / (ms.sd / std::sqrt(static_cast<double>(values.size())));
    return at_most(std::abs(z), tol_or(p, 3.0), values.size());
}

inline Outcome run_one(const CheckSpec& spec, SampleCache& cache) {
    const auto& p = spec.params;
    if (is_statistical(spec.kind)) require_samples(p);
    switch (spec.kind) {
        case CheckKind::normalization: return run_normalization(p);
        case CheckKind::flux_jump: return run_flux_jump(p, spec.seed);
        case CheckKind::symmetry: return run_symmetry(p, spec.seed);
        case CheckKind::marginal_consistency: return run_marginal_consistency(p);
        case CheckKind::scaling: return run_scaling(p, spec.seed);
        case CheckKind::local_time_law: return run_local_time_law(p);
        case CheckKind::ks_1d: return run_ks(p, spec.seed, cache);
        case CheckKind::chisq_2d: return run_chisq(p, spec.seed, cache);
        case CheckKind::atom_fraction: return run_atom_fraction(p, spec.seed, cache);
        case CheckKind::positive_fraction: return run_positive_fraction(p, spec.seed, cache);
        case CheckKind::local_time_mean: return run_local_time_mean(p, spec.seed, cache);
    }
    throw ConfigError("unhandled check kind");
}

}  // namespace detail

/// Runs every check. Sub-module failures become failed checks carrying the
/// error text; only malformed specs (empty list, duplicate names) throw.
inline VerificationReport run_checks(const std::vector<CheckSpec>& specs) {
    if (specs.empty()) throw ConfigError("no checks to run");
    std::vector<const CheckSpec*> order;
    for (const auto& s : specs) order.push_back(&s);
    std::sort(order.begin(), order.end(), [](auto* a, auto* b) { return a->name < b->name; });
    for (std::size_t i = 1; i < order.size(); ++i)
        if (order[i]->name == order[i - 1]->name) throw ConfigError("duplicate check name '" + order[i]->name + "'");

    VerificationReport report;
    report.seed = specs.front().seed;
    detail::SampleCache cache;
    report.overall_pass = true;
    for (const auto* spec : order) {
        CheckResult r;
        r.name = spec->name;
        r.kind = spec->kind;
        const auto start = std::chrono::steady_clock::now();
        try {
            const auto o = detail::run_one(*spec, cache);
            r.statistic = o.statistic;
            r.threshold = o.threshold;
            r.pass = o.pass;
            r.n_samples = o.n_samples;
        } catch (const std::exception& e) {
            r.pass = false;
            r.diagnostic = e.what();
        }
        r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        report.overall_pass = report.overall_pass && r.pass;
        report.checks.push_back(std::move(r));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Built-in suite

inline std::string format_tag(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

/// Every check the acceptance criteria name, plus sampler-side consistency checks.
inline std::vector<CheckSpec> default_suite(std::uint64_t seed) {
    std::vector<CheckSpec> out;
    auto add = [&](std::string name, CheckKind kind, CheckParams p) { out.push_back({std::move(name), kind, std::move(p), seed}); };

    for (double x : {0.0, 0.5, 2.0})
        for (double t : {0.25, 1.0, 4.0})
            for (double a : {0.1, 0.5, 0.9}) {
                CheckParams p;
                p.x = x, p.t = t, p.alpha = a, p.tolerance = 1e-6;
                add("normalization/x=" + format_tag(x) + ",t=" + format_tag(t) + ",alpha=" + format_tag(a),
                    CheckKind::normalization, p);
            }

    {
        CheckParams p;
        p.samples = 1000, p.tolerance = 1e-12;
        add("flux-jump/random", CheckKind::flux_jump, p);
        add("symmetry/random", CheckKind::symmetry, p);
        p.tolerance = 1e-10;
        add("scaling/random", CheckKind::scaling, p);
    }

    for (double t : {0.5, 2.0})
        for (double a : {0.3, 0.7}) {
            CheckParams p;
            p.t = t, p.alpha = a, p.bins = 20, p.tolerance = 1e-6;
            add("marginal-consistency/t=" + format_tag(t) + ",alpha=" + format_tag(a), CheckKind::marginal_consistency, p);
        }

    {
        CheckParams p;
        p.target = "half-normal", p.t = 1.0, p.tolerance = 1e-12;
        add("local-time-law/half-normal", CheckKind::local_time_law, p);
        for (double x : {0.0, 1.0}) {
            p.target = "alpha-free", p.x = x, p.tolerance = 1e-9;
            add("local-time-law/alpha-free/x=" + format_tag(x), CheckKind::local_time_law, p);
        }
    }

    for (double x : {0.0, 1.0})
        for (double a : {0.3, 0.7}) {
            CheckParams p;
            p.x = x, p.t = 1.0, p.alpha = a, p.samples = 100'000, p.bins = 8, p.target = "sampler";
            add("chisq-2d/sampler/x=" + format_tag(x) + ",alpha=" + format_tag(a), CheckKind::chisq_2d, p);
        }
    {
        CheckParams p;
        p.x = 1.0, p.t = 1.0, p.alpha = 0.7, p.samples = 100'000, p.target = "sampler";
        add("atom-fraction/sampler/x=1", CheckKind::atom_fraction, p);
        p.target = "atom-y";
        add("ks-1d/sampler-atom-y/x=1", CheckKind::ks_1d, p);
        p.target = "sampler-y";
        add("ks-1d/sampler-y/x=1,alpha=0.7", CheckKind::ks_1d, p);
        p.x = 0.0, p.alpha = 0.75, p.target = "sampler-ell";
        add("ks-1d/sampler-ell/x=0", CheckKind::ks_1d, p);
        p.target = "sampler";
        add("positive-fraction/sampler/x=0,alpha=0.75", CheckKind::positive_fraction, p);
    }

    CheckParams walk;
    walk.t = 1.0, walk.steps = 10'000, walk.samples = 20'000, walk.target = "path";
    {
        CheckParams p = walk;
        p.x = 0.0, p.alpha = 0.75, p.target = "terminal";
        add("ks-1d/terminal/x=0,alpha=0.75", CheckKind::ks_1d, p);
        p.x = 1.0, p.alpha = 0.3;
        add("ks-1d/terminal/x=1,alpha=0.3", CheckKind::ks_1d, p);
        p.target = "path";
        add("atom-fraction/path/x=1", CheckKind::atom_fraction, p);
    }
    for (double a : {0.5, 0.75}) {
        CheckParams p = walk;
        p.x = 0.0, p.alpha = a;
        add("local-time-mean/path/x=0,alpha=" + format_tag(a), CheckKind::local_time_mean, p);
        add("positive-fraction/path/x=0,alpha=" + format_tag(a), CheckKind::positive_fraction, p);
    }
    {
        CheckParams p = walk;
        p.x = 0.3, p.alpha = 0.7, p.v = 0.5, p.target = "drift-mirror";
        add("ks-1d/drift-mirror/alpha=0.7,v=0.5,x=0.3", CheckKind::ks_1d, p);
    }
    {
        CheckParams p = walk;
        p.x = 0.0, p.alpha = 0.5, p.target = "occupation-arcsine";
        add("ks-1d/occupation-arcsine", CheckKind::ks_1d, p);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Serialization

inline nlohmann::ordered_json to_json(const VerificationReport& report, bool include_timing = true) {
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& c : report.checks) {
        nlohmann::ordered_json j;
        j["name"] = c.name;
        j["kind"] = std::string(to_string(c.kind));
        j["statistic"] = c.statistic;
        j["threshold"] = c.threshold;
        j["pass"] = c.pass;
        j["n_samples"] = c.n_samples;
        if (include_timing) j["millis"] = c.millis;
        if (!c.diagnostic.empty()) j["diagnostic"] = c.diagnostic;
        checks.push_back(std::move(j));
    }
    nlohmann::ordered_json out;
    out["version"] = report.version;
    out["seed"] = report.seed;
    out["checks"] = std::move(checks);
    out["overall_pass"] = report.overall_pass;
    return out;
}

/// Reads a JSON array of {name, kind, seed?, x?, t?, alpha?, v?, ell?, N?, n?, bins?, tolerance?, significance?, target?}.
inline std::vector<CheckSpec> parse_check_specs(const nlohmann::json& doc, std::uint64_t default_seed) {
    if (!doc.is_array()) throw ConfigError("check list must be a JSON array");
    std::vector<CheckSpec> out;
    for (const auto& item : doc) {
        if (!item.is_object() || !item.contains("name") || !item.contains("kind"))
            throw ConfigError("each check needs a name and a kind");
        try {
            CheckSpec s;
            s.name = item.at("name").get<std::string>();
            s.kind = parse_check_kind(item.at("kind").get<std::string>());
            s.seed = item.value("seed", default_seed);
            auto& p = s.params;
            p.x = item.value("x", p.x);
            p.t = item.value("t", p.t);
            p.alpha = item.value("alpha", p.alpha);
            p.v = item.value("v", p.v);
            p.ell = item.value("ell", p.ell);
            p.samples = item.value("N", p.samples);
            p.steps = item.value("n", p.steps);
            p.bins = item.value("bins", p.bins);
            p.tolerance = item.value("tolerance", p.tolerance);
            p.significance = item.value("significance", p.significance);
            p.target = item.value("target", p.target);
            out.push_back(std::move(s));
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("malformed check entry: ") + e.what());
        }
    }
    return out;
}

}  // namespace skewbm
