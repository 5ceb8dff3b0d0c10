#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "camc/errors.hpp"
#include "camc/pnorm_dual.hpp"

using namespace camc;

namespace {

constexpr double kPi = std::numbers::pi;

double observed_order(double coarse, double fine) { return std::log2(coarse / fine); }

}  // namespace

TEST(PNormSpec, Validation) {
    const PNormSpec s = PNormSpec::make(4, 0.5);
    EXPECT_NEAR((s.p - 1) * (s.q - 1), 1.0, 1e-15);
    EXPECT_THROW(PNormSpec::make(3, 1.0), DomainError);
    EXPECT_THROW(PNormSpec::make(0, 1.0), DomainError);
    EXPECT_THROW(PNormSpec::make(4, 0.0), DomainError);
}

TEST(CatenoidSlope, Examples) {
    EXPECT_NEAR(catenoid_slope(PNormSpec::make(2, 1), std::sqrt(2.0)), 1.0, 1e-14);
    EXPECT_LT(catenoid_slope(PNormSpec::make(2, 1), 1e8), 1e-7);
    const double u = 0.125, q = 4.0 / 3.0;
    EXPECT_NEAR(catenoid_slope(PNormSpec::make(4, 1), 2.0), u / std::pow(1 - std::pow(u, q), 1 / q), 1e-15);
    EXPECT_THROW(catenoid_slope(PNormSpec::make(4, 1), 1.0), WaistError);
    EXPECT_THROW(catenoid_slope(PNormSpec::make(4, 1), 0.5), WaistError);
}

TEST(CatenoidHeight, ClassicalArccosh) {
    for (double c : {0.5, 1.0, 2.0})
        for (double t : {1.01, 1.5, 3.0, 10.0})
            EXPECT_NEAR(catenoid_height(PNormSpec::make(2, c), c * t), c * std::acosh(t), 1e-8);
}

TEST(CatenoidHeight, DerivativeIsSlope) {
    const PNormSpec s = PNormSpec::make(6, 0.5);
    for (double w : {0.6, 1.0, 2.5}) {
        const double d = (catenoid_height(s, w + 1e-5) - catenoid_height(s, w - 1e-5)) / 2e-5;
        EXPECT_NEAR(d, catenoid_slope(s, w), 1e-7);
    }
}

TEST(RadialCatenoid, TableMatchesDirect) {
    const RadialCatenoid t(4.0 / 3.0, 0.5, 0.6, 3.0, 1e-3);
    for (double r : {0.6, 0.7777, 1.5, 2.9999}) EXPECT_NEAR(t.height(r), radial_catenoid_height(4.0 / 3.0, 0.5, r), 1e-10);
    EXPECT_THROW(t.height(3.1), DomainError);
    EXPECT_THROW(radial_catenoid_slope(2.0, 1.0, 1.0), WaistError);
}

TEST(MOperator, ConstantIsZero) {
    const Grid2D z = Grid2D::sample(2.0, 0.05, [](double, double) { return 1.0; });
    EXPECT_EQ(m_operator_residual(PNormSpec::make(4, 1), z, pnorm_annulus(4, 0.5, 1.8)).max_abs(), 0.0);
}

TEST(MOperator, CatenoidSecondOrder) {
    for (int p : {2, 4}) {
        const PNormSpec s = PNormSpec::make(p, 1.0);
        const RegionFn region = pnorm_annulus(p, 1.5, 3.0, 0.2);
        const double coarse = m_operator_residual(s, catenoid_grid(s, 3.0, 0.02), region).max_abs();
        const double fine = m_operator_residual(s, catenoid_grid(s, 3.0, 0.01), region).max_abs();
        EXPECT_LT(coarse, 1e-2) << p;
        EXPECT_GT(observed_order(coarse, fine), 1.8) << p;
    }
}

TEST(MOperator, ConjugateSecondOrder) {
    const PNormSpec s = PNormSpec::make(4, 0.5);
    const RegionFn region = pnorm_annulus(4, 1.0, 3.0, 0.2);
    const double coarse = m_operator_residual(s, conjugate_grid(s, 3.0, 0.02), region, true).max_abs();
    const double fine = m_operator_residual(s, conjugate_grid(s, 3.0, 0.01), region, true).max_abs();
    EXPECT_GT(observed_order(coarse, fine), 1.8);
}

TEST(SuperellipseArea, Examples) {
    EXPECT_NEAR(superellipse_area(2, 1), kPi, 1e-12);
    EXPECT_NEAR(superellipse_area(2, 3), 9 * kPi, 1e-11);
    for (int p : {4, 6, 8}) {
        const double g = 4 * std::pow(std::tgamma(1 + 1.0 / p), 2) / std::tgamma(1 + 2.0 / p);
        EXPECT_NEAR(superellipse_area(p, 1), g, 1e-10 * g) << p;
        EXPECT_NEAR(superellipse_area(p, 2.5), 6.25 * g, 1e-10 * g) << p;
    }
}

TEST(SuperellipseArea, ColumnSumOracle) {
    const int n = 400000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = (i + 0.5) / n;
        sum += std::pow(1 - std::pow(x, 4), 0.25);
    }
    EXPECT_NEAR(superellipse_area(4, 1), 4 * sum / n, 1e-4);
    EXPECT_NEAR(superellipse_area(4, 1), 3.708149354602744, 1e-12);
}

TEST(Conjugate, ClassicalHelicoid) {
    const PNormSpec s = PNormSpec::make(2, 1.0);
    for (double t = 0; t < 2 * kPi; t += 0.1) EXPECT_NEAR(conjugate_height(s, t), t, 1e-8);
    const ConjugatePair pair = conjugate_helicoid(s, 1.5, 3.0, 64, 8);
    EXPECT_NEAR(pair.period, 2 * kPi, 1e-8);
    for (const HelicoidSample& h : pair.helicoid) EXPECT_NEAR(h.w, h.theta, 1e-8);
    for (const CatenoidSample& c : pair.catenoid) EXPECT_NEAR(c.z, std::acosh(c.omega), 1e-8);
}

TEST(Conjugate, PeriodFormulaAtRadiusTwo) {
    const PNormSpec s = PNormSpec::make(2, 1.0);
    EXPECT_NEAR(2 * (1.0 / 4) * superellipse_area(2, 2), 2 * kPi, 1e-12);
    const ConjugatePair pair = conjugate_helicoid(s, 1.5, 2.0, 16, 4);
    EXPECT_NEAR(pair.period_by_area.back(), 2 * kPi, 1e-10);
}

TEST(Conjugate, PeriodIndependentOfRadius) {
    for (int p : {2, 4, 6}) {
        const ConjugatePair pair = conjugate_helicoid(PNormSpec::make(p, 0.5), 1.0, 3.0, 128);
        ASSERT_EQ(pair.period_by_area.size(), 3u);
        for (double v : pair.period_by_area) EXPECT_NEAR(v, pair.period, 1e-6) << p;
        EXPECT_NEAR(pair.period_by_area[0], pair.period_by_area[2], 1e-6);
    }
}

TEST(Conjugate, Ruled) {
    const ConjugatePair pair = conjugate_helicoid(PNormSpec::make(4, 0.5), 1.0, 3.0, 32, 8);
    for (std::size_t k = 0; k < pair.helicoid.size(); ++k)
        for (std::size_t m = k + 1; m < pair.helicoid.size(); ++m)
            if (pair.helicoid[k].theta == pair.helicoid[m].theta)
                EXPECT_NEAR(pair.helicoid[k].w, pair.helicoid[m].w, 1e-10);
}

TEST(Conjugate, ConstantAlongRays) {
    const double h = 0.05;
    const Grid2D w = conjugate_grid(PNormSpec::make(6, 0.5), 3.0, h);
    const RegionFn region = pnorm_annulus(6, 1.0, 2.9, 0.0);
    auto index = [&](double v) { return static_cast<std::size_t>(std::lround((v + 3.0) / h)); };
    std::size_t checked = 0;
    for (int a = -29; a <= 29; ++a)
        for (int b = -29; b <= 29; ++b) {
            const double x = a * h, y = b * h;
            if (!region(x, y) || !region(2 * x, 2 * y)) continue;
            const double d = w.diff(index(2 * x), index(2 * y), index(x), index(y));
            EXPECT_NEAR(d, 0.0, 1e-10) << x << " " << y;
            ++checked;
        }
    EXPECT_GT(checked, 50u);
}

TEST(Conjugate, Errors) {
    EXPECT_THROW(conjugate_helicoid(PNormSpec::make(4, 1.0), 1.0, 2.0, 16), WaistError);
    EXPECT_THROW(conjugate_helicoid(PNormSpec::make(4, 0.5), 1.0, 2.0, 16, 4, 7.0), BranchCutError);
}

TEST(PlanarNorm, Basics) {
    const PlanarNorm n = PlanarNorm::pnorm(4);
    EXPECT_NEAR(n.value(1, 1), std::pow(2.0, 0.25), 1e-15);
    EXPECT_NEAR(n.dual().exponent(), 4.0 / 3.0, 1e-15);
    EXPECT_EQ(n.describe(), "l4");
    double gx, gy;
    n.gradient(0.3, -0.7, gx, gy);
    EXPECT_NEAR(gx, (n.value(0.3 + 1e-6, -0.7) - n.value(0.3 - 1e-6, -0.7)) / 2e-6, 1e-8);
    EXPECT_NEAR(gy, (n.value(0.3, -0.7 + 1e-6) - n.value(0.3, -0.7 - 1e-6)) / 2e-6, 1e-8);
    const PlanarNorm qd = PlanarNorm::quadratic(2, 1);
    EXPECT_NEAR(qd.value(1, 0), std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(qd.dual().value(1, 0), std::sqrt(0.5), 1e-15);
}

TEST(PlanarNorm, JInvariance) {
    EXPECT_LE(j_invariance_defect(PlanarNorm::pnorm(4)), 1e-12);
    EXPECT_LE(j_invariance_defect(PlanarNorm::pnorm(1.5)), 1e-12);
    EXPECT_GT(j_invariance_defect(PlanarNorm::quadratic(2, 1)), 0.1);
}

TEST(DualPair, EuclideanIsClassical) {
    const auto l2 = PlanarNorm::pnorm(2);
    const DualPairReport a = dual_pair_check(l2, l2, 0.5, 1.0, 3.0, 0.02, 0.2);
    const DualPairReport b = dual_pair_check(l2, l2, 0.5, 1.0, 3.0, 0.01, 0.2);
    EXPECT_NEAR(a.period_line, kPi, 1e-9);
    EXPECT_NEAR(a.period_area, kPi, 1e-9);
    EXPECT_GT(observed_order(a.catenoid_residual, b.catenoid_residual), 1.8);
    EXPECT_GT(observed_order(a.conjugate_residual, b.conjugate_residual), 1.8);
}

TEST(DualPair, MixedNorms) {
    for (auto [H, V] : {std::pair{4.0, 2.0}, std::pair{4.0 / 3.0, 3.0}}) {
        const auto h = PlanarNorm::pnorm(H), v = PlanarNorm::pnorm(V);
        const DualPairReport a = dual_pair_check(h, v, 0.5, 1.0, 3.0, 0.02, 0.2);
        const DualPairReport b = dual_pair_check(h, v, 0.5, 1.0, 3.0, 0.01, 0.2);
        EXPECT_NEAR(a.period_line, a.period_area, 1e-9) << H << " " << V;
        EXPECT_GT(a.points, 1000u);
        EXPECT_GT(observed_order(a.catenoid_residual, b.catenoid_residual), 1.8) << H << " " << V;
        EXPECT_GT(observed_order(a.conjugate_residual, b.conjugate_residual), 1.8) << H << " " << V;
    }
}

TEST(DualPair, BrokenJInvariance) {
    EXPECT_THROW(dual_pair_check(PlanarNorm::quadratic(2, 1), PlanarNorm::pnorm(2), 0.5, 1.0, 3.0, 0.05),
                 HypothesisError);
}
