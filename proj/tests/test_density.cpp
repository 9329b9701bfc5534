#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "skewbm/density.hpp"
#include "skewbm/rng.hpp"

using namespace skewbm;

// Expected values marked "mpmath" come from tests/oracles/compute_oracles.py
// (40-digit arithmetic on the literal branch formulas, independent of this code).

TEST(GaussKernel, ReferenceValues) {
    EXPECT_NEAR(gauss_kernel(0.0, 1.0), 1.0 / std::sqrt(2.0 * std::numbers::pi), 1e-15);
    EXPECT_NEAR(gauss_kernel(2.0, 1.0), 0.053990966513188051951, 1e-15);  // mpmath
    EXPECT_EQ(gauss_kernel(-3.0, 4.0), gauss_kernel(3.0, 4.0));
}

TEST(GaussKernel, RejectsNonPositiveTime) {
    EXPECT_THROW(gauss_kernel(0.0, 0.0), DomainError);
    EXPECT_THROW(gauss_kernel(0.0, -1.0), DomainError);
}

TEST(GaussKernel, FarTailStaysPositiveInLogSpace) {
    const double v = gauss_kernel(std::sqrt(1440.0), 1.0);  // exponent -720, subnormal result
    EXPECT_GT(v, 0.0);
    EXPECT_NEAR(std::log(v), -720.0 - 0.5 * std::log(2.0 * std::numbers::pi), 1e-9);
}

TEST(JointDensity, ZeroAtTheOriginCorner) {
    EXPECT_EQ(joint_density_continuous({0.0, 1.0, 0.0, 0.0}, SkewParams(0.3), Side::above), 0.0);
    EXPECT_EQ(joint_density_continuous({0.0, 1.0, 0.0, 0.0}, SkewParams(0.3), Side::below), 0.0);
}

TEST(JointDensity, PositiveStartValue) {
    // 2 (0.7) 3 / sqrt(2 pi) e^{-4.5}
    EXPECT_NEAR(joint_density_continuous({1.0, 1.0, -1.0, 1.0}, SkewParams(0.3)), 0.018613763330139630138, 1e-15);
}

TEST(JointDensity, NegativeStartValueMatchesByReflection) {
    EXPECT_NEAR(joint_density_continuous({-1.0, 1.0, 1.0, 1.0}, SkewParams(0.7)), 0.018613763330139630138, 1e-15);
}

TEST(JointDensity, NegativeQuadrantUsesOneMinusAlpha) {
    // x <= 0, y <= 0 branch: 2(1 - a)(l - y - x) / sqrt(2 pi t^3) exp(-(l - y - x)^2 / 2t)
    const double a = 0.2;
    const double w = 0.4 + 0.3 + 0.5;
    const double expected = 2.0 * (1.0 - a) * w / std::sqrt(2.0 * std::numbers::pi) * std::exp(-w * w / 2.0);
    const double got = joint_density_continuous({-0.5, 1.0, -0.3, 0.4}, SkewParams(a));
    EXPECT_GT(got, 0.0);
    EXPECT_NEAR(got, expected, 1e-15);
}

TEST(JointDensity, DomainErrors) {
    const SkewParams s(0.4);
    EXPECT_THROW(joint_density_continuous({0.0, 1.0, 1.0, -0.1}, s), DomainError);
    EXPECT_THROW(joint_density_continuous({0.0, 0.0, 1.0, 0.1}, s), DomainError);
    EXPECT_THROW(joint_density_continuous({0.0, 1.0, 0.0, 0.1}, s), DomainError);  // y = 0 needs a side
    EXPECT_THROW(SkewParams(0.0), DomainError);
    EXPECT_THROW(SkewParams(1.0), DomainError);
    EXPECT_THROW(SkewParams(-0.2), DomainError);
}

TEST(JointDensity, SidedLimitsAndAverage) {
    const SkewParams s(0.3);
    const QueryPoint at_zero{0.8, 1.5, 0.0, 0.6};
    const double above = joint_density_continuous(at_zero, s, Side::above);
    const double below = joint_density_continuous(at_zero, s, Side::below);
    const double eps = 1e-9;
    EXPECT_NEAR(above, joint_density_continuous({0.8, 1.5, eps, 0.6}, s), 1e-8);
    EXPECT_NEAR(below, joint_density_continuous({0.8, 1.5, -eps, 0.6}, s), 1e-8);
    EXPECT_NEAR(joint_density_averaged(at_zero, s), 0.3 * below + 0.7 * above, 1e-15);
    EXPECT_EQ(joint_density_averaged({0.8, 1.5, 0.2, 0.6}, s), joint_density_continuous({0.8, 1.5, 0.2, 0.6}, s));
}

TEST(JointDensity, StartAtInterfaceAgreesAcrossBranches) {
    // x = 0 belongs to both the x >= 0 and x <= 0 branches; they agree there.
    const SkewParams s(0.35);
    for (double y : {-1.2, -0.1, 0.3, 2.0}) {
        const double ell = 0.7;
        const double t = 0.9;
        const double w = ell + std::abs(y);
        const double second = (y >= 0 ? 2.0 * 0.35 : 2.0 * 0.65) * w / std::sqrt(2.0 * std::numbers::pi * t * t * t) *
                              std::exp(-w * w / (2.0 * t));
        EXPECT_NEAR(joint_density_continuous({0.0, t, y, ell}, s), second, 1e-15);
        EXPECT_EQ(joint_density_continuous({0.0, t, y, ell}, s), joint_density_continuous({-0.0, t, y, ell}, s));
    }
}

TEST(JointDensity, HalfSkewFromOriginIsClassicalLaw) {
    const SkewParams half(0.5);
    for (double y : {-2.0, -0.4, 0.7, 1.9})
        for (double ell : {0.0, 0.5, 2.0}) {
            const double w = ell + std::abs(y);
            const double t = 1.3;
            const double classical = w / std::sqrt(2.0 * std::numbers::pi * t * t * t) * std::exp(-w * w / (2.0 * t));
            EXPECT_NEAR(joint_density_continuous({0.0, t, y, ell}, half), classical, 1e-15);
        }
}

TEST(JointDensity, FarFieldUsesLogSpaceAssembly) {
    const double v = joint_density_continuous({1.0, 1.0 / 90.0, 2.0, 1.0}, SkewParams(0.5));  // exponent -720
    EXPECT_GT(v, 0.0);
    EXPECT_TRUE(std::isfinite(std::log(v)));
}

TEST(AtomWeight, ReferenceValues) {
    EXPECT_NEAR(atom_weight(1.0, 1.0, 1.0), 0.34495131388824462599, 1e-15);  // mpmath
    EXPECT_EQ(atom_weight(0.0, 0.7, 1.0), 0.0);
    EXPECT_EQ(atom_weight(0.0, -0.7, 1.0), 0.0);
    EXPECT_EQ(atom_weight(1.0, -0.5, 1.0), 0.0);
    EXPECT_EQ(atom_weight(-1.0, 0.5, 1.0), 0.0);
    EXPECT_THROW(atom_weight(1.0, 1.0, 0.0), DomainError);
}

TEST(AtomWeight, IndependentOfAlpha) {
    const QueryPoint p{0.6, 0.8, 0.9, 123.0};
    EXPECT_EQ(atom_weight(p, SkewParams(0.1)), atom_weight(p, SkewParams(0.9)));
}

TEST(Survival, ReferenceValues) {
    EXPECT_EQ(survival_probability(0.0, 3.0), 0.0);
    EXPECT_NEAR(survival_probability(1.0, 1.0), 0.68268949213708589717, 1e-15);  // mpmath quadrature of atom
    EXPECT_NEAR(survival_probability(10.0, 0.01), 1.0, 1e-12);
    EXPECT_THROW(survival_probability(1.0, 0.0), DomainError);
}

TEST(Survival, MonotoneInDistanceAndTime) {
    EXPECT_LT(survival_probability(0.5, 1.0), survival_probability(1.0, 1.0));
    EXPECT_EQ(survival_probability(-1.0, 1.0), survival_probability(1.0, 1.0));
    EXPECT_GT(survival_probability(1.0, 0.5), survival_probability(1.0, 2.0));
}

TEST(Survival, EqualsAtomQuadrature) {
    for (double x : {0.3, -1.1, 2.5}) {
        const double t = 0.7;
        const double sign = x > 0 ? 1.0 : -1.0;
        const double mass = detail::integrate([&](double y) { return atom_weight(x, sign * y, t); }, 0.0,
                                              std::abs(x) + 12.0 * std::sqrt(t), QuadratureSpec{});
        EXPECT_NEAR(mass, survival_probability(x, t), 1e-12);
        EXPECT_NEAR(atom_cdf(x, sign * 1e3, t) - atom_cdf(x, -sign * 1e3, t), sign * survival_probability(x, t), 1e-14);
    }
}

TEST(SkewMarginal, ReferenceValue) {
    EXPECT_NEAR(skew_marginal_density(1.0, 2.0, 1.0, SkewParams(0.3)), 0.24019798515436814693, 1e-15);  // mpmath
}

TEST(SkewMarginal, HalfSkewIsHeatKernel) {
    const SkewParams half(0.5);
    for (double x : {-1.0, 0.0, 0.4})
        for (double y : {-2.0, -0.3, 0.5, 1.7}) EXPECT_NEAR(skew_marginal_density(x, y, 0.8, half), gauss_kernel(y - x, 0.8), 1e-16);
}

TEST(SkewMarginal, MassOnPositiveSideFromInterfaceIsAlpha) {
    const SkewParams s(0.75);
    const double pos = detail::integrate([&](double y) { return skew_marginal_density(0.0, y, 1.0, s, Side::above); }, 0.0,
                                         12.0, QuadratureSpec{});
    EXPECT_NEAR(pos, 0.75, 1e-12);
    EXPECT_NEAR(1.0 - skew_marginal_cdf(0.0, 0.0, 1.0, s), 0.75, 1e-15);
}

TEST(SkewMarginal, CdfIsIntegralOfDensity) {
    for (double x : {-0.7, 0.0, 1.2})
        for (double a : {0.2, 0.8}) {
            const SkewParams s(a);
            for (double y : {-1.5, -0.2, 0.4, 2.2}) {
                const double t = 1.4;
                double q = detail::integrate([&](double z) { return skew_marginal_density(x, z, t, s, Side::below); },
                                             -15.0, std::min(y, 0.0), QuadratureSpec{});
                if (y > 0)
                    q += detail::integrate([&](double z) { return skew_marginal_density(x, z, t, s, Side::above); }, 0.0,
                                           y, QuadratureSpec{});
                EXPECT_NEAR(skew_marginal_cdf(x, y, t, s), q, 1e-12) << "x=" << x << " a=" << a << " y=" << y;
            }
        }
}

TEST(SkewMarginal, FluxJumpAtInterface) {
    for (double x : {-1.0, 0.0, 0.6}) {
        const SkewParams s(0.3);
        const double above = skew_marginal_density(x, 0.0, 1.0, s, Side::above);
        const double below = skew_marginal_density(x, 0.0, 1.0, s, Side::below);
        EXPECT_NEAR((1.0 - 0.3) * above, 0.3 * below, 1e-15);
    }
}

TEST(LocalTimeMarginal, HalfNormalFromInterface) {
    EXPECT_NEAR(local_time_marginal_density(0.0, 1.0, 0.0), 0.79788456080286535588, 1e-15);
    for (double ell : {0.0, 0.3, 1.0, 2.5})
        EXPECT_NEAR(local_time_marginal_density(0.0, 1.0, ell), std::sqrt(2.0 / std::numbers::pi) * std::exp(-ell * ell / 2.0),
                    1e-15);
    EXPECT_THROW(local_time_marginal_density(0.0, 1.0, -0.1), DomainError);
    EXPECT_THROW(local_time_marginal_density(0.0, 0.0, 0.1), DomainError);
}

TEST(LocalTimeMarginal, IsTheYIntegralForEveryAlpha) {
    for (double a : {0.1, 0.9}) {
        const SkewParams s(a);
        for (double x : {-0.8, 0.0, 1.3})
            for (double ell : {0.1, 0.9}) {
                const double t = 1.1;
                const double q =
                    detail::integrate([&](double y) { return joint_density_continuous({x, t, y, ell}, s, Side::below); },
                                      -15.0, 0.0, QuadratureSpec{}) +
                    detail::integrate([&](double y) { return joint_density_continuous({x, t, y, ell}, s, Side::above); }, 0.0,
                                      15.0, QuadratureSpec{});
                EXPECT_NEAR(q, local_time_marginal_density(x, t, ell), 1e-12);
            }
    }
}

TEST(Normalization, ReferenceConfigurations) {
    EXPECT_NEAR(normalization_mass(0.0, 1.0, SkewParams(0.3)), 1.0, 1e-6);
    EXPECT_NEAR(normalization_mass(2.0, 0.5, SkewParams(0.8)), 1.0, 1e-6);
    EXPECT_EQ(normalization_breakdown(0.0, 2.0, SkewParams(0.6)).atom, 0.0);
}

TEST(Normalization, BreakdownMatchesSurvival) {
    const auto b = normalization_breakdown(-0.9, 0.6, SkewParams(0.25));
    EXPECT_NEAR(b.atom, survival_probability(-0.9, 0.6), 1e-10);
    EXPECT_NEAR(b.continuous, 1.0 - survival_probability(-0.9, 0.6), 1e-10);
    EXPECT_LT(b.tail_bound, 1e-9);
}

TEST(Normalization, ShortTruncationIsDiagnosed) {
    QuadratureSpec q;
    q.truncation_sigmas = 3.0;
    EXPECT_THROW(normalization_mass(0.0, 1.0, SkewParams(0.5), q), QuadratureError);
}

// ---------------------------------------------------------------------------
// Properties over random inputs

class DensityProperties : public ::testing::Test {
  protected:
    RngStream rng{20240601, 1};
    double in(double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }
};

TEST_F(DensityProperties, Nonnegative) {
    for (int i = 0; i < 20000; ++i) {
        const double x = in(-20, 20), y = in(-20, 20), ell = in(0, 20), t = std::exp(in(-8, 5));
        const SkewParams s(in(1e-6, 1 - 1e-6));
        const double f = joint_density_continuous({x, t, y, ell}, s, Side::above);
        EXPECT_GE(f, 0.0);
        EXPECT_GE(atom_weight(x, y, t), 0.0);
        ASSERT_TRUE(std::isfinite(f));
    }
}

TEST_F(DensityProperties, FluxJump) {
    for (int i = 0; i < 1000; ++i) {
        const double x = in(-3, 3), ell = in(1e-6, 3), t = in(0.05, 4), a = in(0.01, 0.99);
        const SkewParams s(a);
        const QueryPoint p{x, t, 0.0, ell};
        EXPECT_NEAR((1 - a) * joint_density_continuous(p, s, Side::above), a * joint_density_continuous(p, s, Side::below), 1e-12);
    }
}

TEST_F(DensityProperties, ReflectionSymmetry) {
    for (int i = 0; i < 1000; ++i) {
        const double x = in(-3, 3), y = in(-3, 3), ell = in(0, 3), t = in(0.05, 4), a = in(0.01, 0.99);
        EXPECT_NEAR(joint_density_continuous({x, t, y, ell}, SkewParams(a)),
                    joint_density_continuous({-x, t, -y, ell}, SkewParams(1 - a)), 1e-12);
        EXPECT_EQ(atom_weight(x, y, t), atom_weight(-x, -y, t));
    }
}

TEST_F(DensityProperties, DiffusiveScaling) {
    for (int i = 0; i < 1000; ++i) {
        const double x = in(-2, 2), y = in(-2, 2), ell = in(0, 2), t = in(0.1, 2), lambda = std::exp(in(-2.3, 2.3));
        const SkewParams s(in(0.01, 0.99));
        const double r = std::sqrt(lambda);
        const double lhs = joint_density_continuous({x, t, y, ell}, s);
        const double rhs = joint_density_continuous({x / r, t / lambda, y / r, ell / r}, s) / lambda;
        EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, lhs));
    }
}

TEST_F(DensityProperties, MarginalConsistency) {
    for (int i = 0; i < 200; ++i) {
        const double x = in(-3, 3), t = in(0.2, 3);
        double y = in(-3, 3);
        if (y == 0.0) y = 0.1;
        const SkewParams s(in(0.05, 0.95));
        const double upper = 10.0 * std::sqrt(t) + std::abs(x) + std::abs(y);
        const double q = detail::integrate([&](double ell) { return joint_density_continuous({x, t, y, ell}, s); }, 0.0,
                                           upper, QuadratureSpec{}) +
                         atom_weight(x, y, t);
        EXPECT_NEAR(q, skew_marginal_density(x, y, t, s), 1e-6);
    }
}

TEST_F(DensityProperties, AtomOnlyOnStartingSide) {
    for (int i = 0; i < 1000; ++i) {
        const double x = in(-3, 3), y = in(-3, 3), t = in(0.05, 4);
        if (x * y < 0) {
            EXPECT_EQ(atom_weight(x, y, t), 0.0);
        }
    }
}

TEST(DensityGrid, MassConservation) {
    for (double x : {-1.0, 0.0, 0.5, 2.0})
        for (double t : {0.25, 1.0, 4.0})
            for (double a : {0.1, 0.5, 0.9}) EXPECT_NEAR(normalization_mass(x, t, SkewParams(a)), 1.0, 1e-9);
}
