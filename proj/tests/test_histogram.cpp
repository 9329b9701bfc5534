#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "skewbm/histogram.hpp"

using namespace skewbm;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST(DefaultBins, ShapeAndValidity) {
    for (double x : {0.0, 1.0, -2.0}) {
        const auto b = default_bins(x, 1.0, 8);
        EXPECT_EQ(b.y_edges.size(), 9u);
        EXPECT_EQ(b.ell_edges.size(), 9u);
        EXPECT_EQ(b.y_edges.front(), -kInf);
        EXPECT_EQ(b.y_edges.back(), kInf);
        EXPECT_EQ(b.y_edges[4], 0.0);
        EXPECT_EQ(b.ell_edges.front(), 0.0);
        EXPECT_NO_THROW(detail::validate_bins(b));
    }
    EXPECT_THROW(default_bins(0.0, 1.0, 7), ConfigError);
}

TEST(ValidateBins, Rejections) {
    EXPECT_THROW(detail::validate_bins({{-1.0, 1.0}, {0.0, 1.0, 2.0}}), ConfigError);                  // straddles 0
    EXPECT_THROW(detail::validate_bins({{-1.0, 0.0, 1.0}, {0.0, 1.0}}), ConfigError);                  // one ell bin
    EXPECT_THROW(detail::validate_bins({{-1.0, 0.0, 1.0}, {0.5, 1.0, 2.0}}), ConfigError);             // ell not from 0
    EXPECT_THROW(detail::validate_bins({{-1.0, 0.0, 0.0, 1.0}, {0.0, 1.0, 2.0}}), ConfigError);        // not increasing
    EXPECT_NO_THROW(detail::validate_bins({{0.5, 1.0, 2.0}, {0.0, 1.0, kInf}}));
}

TEST(Histogram, EmptyInputRejected) {
    const auto bins = default_bins(0.0, 1.0, 8);
    EXPECT_THROW(histogram2d(std::span<const JointSample>(), bins, 0.0, 1.0, SkewParams(0.5)), ConfigError);
    EXPECT_THROW(histogram2d(std::span<const PathRecord>(), bins, 0.0, 1.0, SkewParams(0.5)), ConfigError);
}

TEST(Histogram, ExpectedSumsToOneAndCountsToN) {
    for (double x : {0.0, 1.0, -0.5}) {
        const std::vector<JointSample> s{{0.3, 0.2, true, 0.0}, {-0.1, 1.5, true, 0.0}};
        const auto h = histogram2d(std::span<const JointSample>(s), default_bins(x, 1.0, 8), x, 1.0, SkewParams(0.3));
        double pe = 0.0;
        double c = 0.0;
        for (std::size_t i = 0; i < h.counts.size(); ++i) {
            pe += h.expected[i];
            c += h.counts[i];
            EXPECT_GE(h.expected[i], 0.0);
        }
        EXPECT_NEAR(pe, 1.0, 1e-6);
        EXPECT_EQ(c, 2.0);
        EXPECT_EQ(h.total, 2.0);
    }
}

TEST(Histogram, AtomRowMatchesSurvival) {
    const std::vector<JointSample> s{{0.3, 0.2, true, 0.0}};
    const auto h = histogram2d(std::span<const JointSample>(s), default_bins(1.0, 1.0, 8), 1.0, 1.0, SkewParams(0.6));
    double atom = 0.0;
    for (std::size_t c = 0; c < h.cols; ++c) atom += h.prob(0, c);
    EXPECT_NEAR(atom, survival_probability(1.0, 1.0), 1e-12);
}

TEST(Histogram, HalfSkewGridIsMirrorSymmetric) {
    const std::vector<JointSample> s{{0.3, 0.2, true, 0.0}};
    const auto h = histogram2d(std::span<const JointSample>(s), default_bins(0.0, 1.0, 8), 0.0, 1.0, SkewParams(0.5));
    for (std::size_t r = 0; r < h.rows; ++r)
        for (std::size_t c = 0; c < h.cols; ++c) EXPECT_NEAR(h.prob(r, c), h.prob(r, h.cols - 1 - c), 1e-12);
}

TEST(Histogram, WalkRecordOnInterfaceIsSplit) {
    const std::vector<PathRecord> rs{{0.0, 0.3, 0.5, 100}, {0.0, 0.0, 0.5, 100}};
    const auto bins = default_bins(0.0, 1.0, 4);
    const auto h = histogram2d(std::span<const PathRecord>(rs), bins, 0.0, 1.0, SkewParams(0.7));
    const std::size_t above = 2;
    // a walk reaching 0 on its last step is a hit with local time in the first bin
    EXPECT_EQ(h.count(0, above) + h.count(0, above - 1), 0.0);
    EXPECT_NEAR(h.count(1, above) + h.count(1, above - 1), 2.0, 1e-15);
    EXPECT_NEAR(h.count(1, above), 1.4, 1e-15);
    double total = 0.0;
    for (double c : h.counts) total += c;
    EXPECT_NEAR(total, 2.0, 1e-15);
}

TEST(ChiSquareGrid, DegenerateSpecIsConfigurationError) {
    // every sample in one cell and a single usable cell after pooling
    Histogram2D h;
    h.rows = 2;
    h.cols = 2;
    h.counts = {10, 0, 0, 0};
    h.expected = {1.0, 0.0, 0.0, 0.0};
    h.total = 10;
    EXPECT_THROW(chi_square(h), ConfigError);
}

TEST(ChiSquareGrid, CountInImpossibleCellFails) {
    Histogram2D h;
    h.rows = 2;
    h.cols = 2;
    h.counts = {40, 30, 29, 1};
    h.expected = {0.4, 0.3, 0.3, 0.0};
    h.total = 100;
    EXPECT_EQ(chi_square(h).p_value, 0.0);
}

TEST(ChiSquareGrid, PoolsSmallCells) {
    Histogram2D h;
    h.rows = 2;
    h.cols = 2;
    h.counts = {50, 46, 2, 2};
    h.expected = {0.5, 0.46, 0.02, 0.02};
    h.total = 100;
    const auto r = chi_square(h);
    EXPECT_EQ(r.cells, 3u);
    EXPECT_EQ(r.dof, 2.0);
    EXPECT_NEAR(r.statistic, 0.0, 1e-12);
}
