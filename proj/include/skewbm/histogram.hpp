#pragma once

// Joint (y, ell) histograms of samples or walk records against cell masses of
// the closed-form law. Row 0 is the ell = 0 atom; rows 1.. are ell bins.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include <boost/math/special_functions/erf.hpp>

#include "skewbm/density.hpp"
#include "skewbm/errors.hpp"
#include "skewbm/path_sim.hpp"
#include "skewbm/quadrature.hpp"
#include "skewbm/sampler.hpp"
#include "skewbm/stats.hpp"

namespace skewbm {

struct BinSpec {
    std::vector<double> y_edges;    ///< strictly increasing; 0 must be an edge if the range crosses 0
    std::vector<double> ell_edges;  ///< strictly increasing, starting at 0
};

struct Histogram2D {
    std::size_t rows = 0;  ///< 1 atom row + ell bins
    std::size_t cols = 0;  ///< y bins
    std::vector<double> counts;
    std::vector<double> expected;  ///< probabilities, sum to 1
    double total = 0.0;

    double& count(std::size_t r, std::size_t c) { return counts[r * cols + c]; }
    double& prob(std::size_t r, std::size_t c) { return expected[r * cols + c]; }
    double count(std::size_t r, std::size_t c) const { return counts[r * cols + c]; }
    double prob(std::size_t r, std::size_t c) const { return expected[r * cols + c]; }
};

struct ChiSquareResult {
    double statistic = 0.0;
    double dof = 0.0;
    double p_value = 1.0;
    std::size_t cells = 0;
};

namespace detail {

inline void validate_bins(const BinSpec& bins) {
    auto increasing = [](const std::vector<double>& e) {
        return e.size() >= 3 && std::adjacent_find(e.begin(), e.end(), std::greater_equal<>()) == e.end();
    };
    if (!increasing(bins.y_edges) || !increasing(bins.ell_edges))
        throw ConfigError("bin edges need at least 2 bins per axis and must be strictly increasing");
    if (bins.ell_edges.front() != 0.0) throw ConfigError("ell edges must start at 0");
    if (bins.y_edges.front() < 0.0 && bins.y_edges.back() > 0.0 &&
        std::find(bins.y_edges.begin(), bins.y_edges.end(), 0.0) == bins.y_edges.end())
        throw ConfigError("a y bin straddles the interface; add 0 as an edge");
}

/// Index of the bin containing v (right-open bins), or npos if outside.
inline std::size_t locate(const std::vector<double>& edges, double v) {
    if (v < edges.front() || v >= edges.back()) return static_cast<std::size_t>(-1);
    return static_cast<std::size_t>(std::upper_bound(edges.begin(), edges.end(), v) - edges.begin()) - 1;
}

inline double standard_tail_inverse(double q) { return std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * q); }

}  // namespace detail

/// Edges at equal-mass quantiles of the hit-part marginals. Both the y
/// magnitude on each side and ell have tails proportional to Q((s + |x|) / sqrt(t)).
inline BinSpec default_bins(double x, double t, int bins_per_axis) {
    detail::require_positive_time(t);
    if (bins_per_axis < 2 || bins_per_axis % 2 != 0) throw ConfigError("bins per axis must be even and >= 2");
    const double st = std::sqrt(t);
    const double a = std::abs(x) / st;
    const double qa = detail::normal_tail(a);
    const double inf = std::numeric_limits<double>::infinity();

    auto quantiles = [&](int m) {
        std::vector<double> q;
        for (int k = 1; k < m; ++k) q.push_back(st * (detail::standard_tail_inverse(qa * (1.0 - double(k) / m)) - a));
        return q;
    };
    const int half = bins_per_axis / 2;
    const auto yq = quantiles(half);
    BinSpec spec;
    spec.y_edges.push_back(-inf);
    for (auto it = yq.rbegin(); it != yq.rend(); ++it) spec.y_edges.push_back(-*it);
    spec.y_edges.push_back(0.0);
    for (double q : yq) spec.y_edges.push_back(q);
    spec.y_edges.push_back(inf);

    spec.ell_edges.push_back(0.0);
    for (double q : quantiles(bins_per_axis)) spec.ell_edges.push_back(q);
    spec.ell_edges.push_back(inf);
    return spec;
}

/// Cell probabilities of the joint law: continuous cells by nested quadrature,
/// the atom row from the closed-form y-profile of the killed kernel.
inline void fill_expected(Histogram2D& h, const BinSpec& bins, double x, double t, const SkewParams& s,
                          const QuadratureSpec& q = {}) {
    const double reach = q.truncation_sigmas * std::sqrt(t);  // ell + |y| <= reach inside the truncation
    auto clip = [&](double v) { return std::clamp(v, -reach, reach); };

    for (std::size_t c = 0; c < h.cols; ++c) {
        const double y0 = bins.y_edges[c];
        const double y1 = bins.y_edges[c + 1];
        h.prob(0, c) = std::max(0.0, atom_cdf(x, y1, t) - atom_cdf(x, y0, t));
        const Side side = y0 >= 0.0 ? Side::above : Side::below;
        for (std::size_t r = 1; r < h.rows; ++r) {
            const double l0 = bins.ell_edges[r - 1];
            const double l1 = bins.ell_edges[r];
            h.prob(r, c) = detail::integrate(
                [&](double y) {
                    const double top = std::min(l1, reach - std::abs(y));
                    return detail::integrate(
                        [&](double ell) { return joint_density_continuous({x, t, y, ell}, s, side); }, l0, top, q);
                },
                clip(y0), clip(y1), q);
        }
    }
    double sum = 0.0;
    for (double p : h.expected) sum += p;
    if (std::abs(sum - 1.0) > 1e-6)
        throw QuadratureError("expected cell masses sum to " + std::to_string(sum) + ", not 1");
}

inline Histogram2D make_histogram(const BinSpec& bins) {
    detail::validate_bins(bins);
    Histogram2D h;
    h.cols = bins.y_edges.size() - 1;
    h.rows = bins.ell_edges.size();
    h.counts.assign(h.rows * h.cols, 0.0);
    h.expected.assign(h.rows * h.cols, 0.0);
    return h;
}

/// Counts of exact joint samples with expected cell probabilities.
inline Histogram2D histogram2d(std::span<const JointSample> samples, const BinSpec& bins, double x, double t,
                               const SkewParams& s, const QuadratureSpec& q = {}) {
    if (samples.empty()) throw ConfigError("histogram needs at least one sample");
    Histogram2D h = make_histogram(bins);
    for (const auto& smp : samples) {
        const std::size_t c = detail::locate(bins.y_edges, smp.y);
        const std::size_t r = smp.hit ? detail::locate(bins.ell_edges, smp.ell) + 1 : 0;
        if (c >= h.cols || r >= h.rows) throw ConfigError("sample outside the bin range");
        h.count(r, c) += 1.0;
    }
    h.total = static_cast<double>(samples.size());
    fill_expected(h, bins, x, t, s, q);
    return h;
}

/// Counts of walk records. A walk ending exactly on site 0 is split between
/// the two cells adjacent to the interface, alpha above and 1 - alpha below,
/// and counts as having reached the interface even if it got there on the last step.
inline Histogram2D histogram2d(std::span<const PathRecord> records, const BinSpec& bins, double x, double t,
                               const SkewParams& s, const QuadratureSpec& q = {}) {
    if (records.empty()) throw ConfigError("histogram needs at least one record");
    Histogram2D h = make_histogram(bins);
    for (const auto& rec : records) {
        const bool hit = rec.local_time > 0.0 || rec.terminal == 0.0;
        const std::size_t r = hit ? detail::locate(bins.ell_edges, rec.local_time) + 1 : 0;
        if (rec.terminal == 0.0) {
            const std::size_t above = detail::locate(bins.y_edges, 0.0);
            if (above == 0 || r >= h.rows) throw ConfigError("record outside the bin range");
            h.count(r, above) += s.alpha();
            h.count(r, above - 1) += 1.0 - s.alpha();
            continue;
        }
        const std::size_t c = detail::locate(bins.y_edges, rec.terminal);
        if (c >= h.cols || r >= h.rows) throw ConfigError("record outside the bin range");
        h.count(r, c) += 1.0;
    }
    h.total = static_cast<double>(records.size());
    fill_expected(h, bins, x, t, s, q);
    return h;
}

/// Pearson chi-square. Cells expecting fewer than `min_expected` counts are
/// pooled into one cell; cells with zero probability must be empty.
inline ChiSquareResult chi_square(const Histogram2D& h, double min_expected = 5.0) {
    ChiSquareResult out;
    double pooled_obs = 0.0;
    double pooled_exp = 0.0;
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
        const double e = h.expected[i] * h.total;
        const double o = h.counts[i];
        if (h.expected[i] <= 0.0) {
            if (o > 0.0) out.statistic = std::numeric_limits<double>::infinity();
            continue;
        }
        if (e < min_expected) {
            pooled_obs += o;
            pooled_exp += e;
            continue;
        }
        out.statistic += (o - e) * (o - e) / e;
        ++out.cells;
    }
    if (pooled_exp > 0.0) {
        out.statistic += (pooled_obs - pooled_exp) * (pooled_obs - pooled_exp) / pooled_exp;
        ++out.cells;
    }
    if (out.cells < 2) throw ConfigError("chi-square undefined: fewer than two populated cells");
    out.dof = static_cast<double>(out.cells - 1);
    out.p_value = stats::chi_square_pvalue(out.statistic, out.dof);
    return out;
}

}  // namespace skewbm
