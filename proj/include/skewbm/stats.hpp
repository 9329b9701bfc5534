#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "skewbm/errors.hpp"

namespace skewbm::stats {

struct KsResult {
    double distance = 0.0;
    double p_value = 1.0;
    double effective_n = 0.0;
};

/// Asymptotic Kolmogorov tail P(sqrt(n) D > d), with Stephens' small-sample correction.
inline double kolmogorov_pvalue(double distance, double effective_n) {
    const double rn = std::sqrt(effective_n);
    const double lambda = (rn + 0.12 + 0.11 / rn) * distance;
    if (lambda < 0.2) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += sign * term;
        if (term < 1e-17) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

/// One-sample KS distance against a continuous CDF.
inline KsResult ks_one_sample(std::span<const double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw ConfigError("KS test needs samples");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
    }
    return {d, kolmogorov_pvalue(d, n), n};
}

/// KS distance for lattice-valued samples: the empirical and model CDFs are
/// compared only at midpoints between consecutive distinct sample values,
/// i.e. at the cell boundaries of the lattice.
inline KsResult ks_one_sample_lattice(std::span<const double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw ConfigError("KS test needs samples");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
        if (sorted[i + 1] == sorted[i]) continue;
        const double boundary = 0.5 * (sorted[i] + sorted[i + 1]);
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - cdf(boundary)));
    }
    return {d, kolmogorov_pvalue(d, n), n};
}

/// Two-sample KS; ties are resolved by stepping past every copy of a value.
inline KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw ConfigError("two-sample KS needs samples on both sides");
    std::vector<double> sa(a.begin(), a.end());
    std::vector<double> sb(b.begin(), b.end());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    const double na = static_cast<double>(sa.size());
    const double nb = static_cast<double>(sb.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < sa.size() && j < sb.size()) {
        const double v = std::min(sa[i], sb[j]);
        while (i < sa.size() && sa[i] == v) ++i;
        while (j < sb.size() && sb[j] == v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    const double ne = na * nb / (na + nb);
    return {d, kolmogorov_pvalue(d, ne), ne};
}

inline double chi_square_pvalue(double statistic, double dof) {
    if (!std::isfinite(statistic)) return 0.0;
    return boost::math::cdf(boost::math::complement(boost::math::chi_squared(dof), statistic));
}

/// (observed fraction - p) in units of the binomial standard error sqrt(p (1 - p) / n).
inline double binomial_z(double successes, double n, double p) {
    const double se = std::sqrt(p * (1.0 - p) / n);
    const double diff = successes / n - p;
    if (se == 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return diff / se;
}

struct MeanSd {
    double mean = 0.0;
    double sd = 0.0;
};

inline MeanSd mean_sd(std::span<const double> v) {
    if (v.size() < 2) throw ConfigError("need at least two values for a standard deviation");
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / static_cast<double>(v.size() - 1))};
}

}  // namespace skewbm::stats
