#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "camc/errors.hpp"
#include "camc/helicoid_graph.hpp"

using namespace camc;

namespace {

const AnisotropyProfile kIso = AnisotropyProfile::isotropic();
const AnisotropyProfile kDir = AnisotropyProfile::dirichlet();

}  // namespace

TEST(FirstIntegral, Examples) {
    for (double lambda : {0.0, 0.7, -2.0})
        for (double r : {0.5, 1.0, 4.0}) EXPECT_DOUBLE_EQ(first_integral_residual(kIso, lambda, 0, 0, r, 0.0), 0.0);
    EXPECT_NEAR(first_integral_residual(kIso, 0, 0, 1 / std::sqrt(2.0), 1.0, 1.0), 0.0, 1e-15);
}

TEST(FirstIntegral, DirichletCancelsNu3) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> r(0.2, 5.0), gr(-4.0, 4.0), lam(-3.0, 3.0), L(-2.0, 2.0);
    for (int k = 0; k < 100; ++k) {
        const double rr = r(rng), g = gr(rng), Lambda = L(rng);
        const double C = 0.3;
        const double expected = rr * g - Lambda * rr * rr / 2 - C;
        EXPECT_NEAR(first_integral_residual(kDir, lam(rng), Lambda, C, rr, g), expected,
                    1e-12 * std::max(1.0, std::abs(expected)));
        const double slope = Lambda * rr / 2 + C / rr;
        EXPECT_NEAR(first_integral_residual(kDir, lam(rng), Lambda, C, rr, slope), 0.0, 1e-12);
    }
}

TEST(SolveGr, Examples) {
    const auto a = solve_g_r(kDir, 1, 1, 0, 2);
    ASSERT_EQ(a.size(), 1u);
    EXPECT_NEAR(a[0], 1.0, 1e-12);

    const auto b = solve_g_r(kIso, 0, 0, 0, 1.7);
    ASSERT_EQ(b.size(), 1u);
    EXPECT_NEAR(b[0], 0.0, 1e-12);

    const auto c = solve_g_r(kIso, 0, 1, 0, 1);
    ASSERT_EQ(c.size(), 1u);
    EXPECT_NEAR(c[0], 1 / std::sqrt(3.0), 1e-12);
}

TEST(SolveGr, PolishedAndSorted) {
    const auto prof = AnisotropyProfile::rapini_papoular(0.2);
    const auto roots = solve_g_r(prof, 0.5, -1, 0.1, 0.8);
    ASSERT_FALSE(roots.empty());
    for (std::size_t k = 0; k < roots.size(); ++k) {
        EXPECT_LT(std::abs(first_integral_residual(prof, 0.5, -1, 0.1, 0.8, roots[k])), 1e-12);
        if (k) EXPECT_LT(roots[k - 1], roots[k]);
    }
}

TEST(SolveGr, NoRoot) { EXPECT_THROW(solve_g_r(kIso, 0, 1, 0, 3), NoRoot); }

TEST(IntegrateProfile, DirichletClosedForm) {
    const GraphProfile g = integrate_profile(kDir, 0.7, 1, 1, 1, 3, 1e-3);
    ASSERT_EQ(g.samples.front().r, 1.0);
    EXPECT_NEAR(g.samples.back().r, 3.0, 1e-12);
    for (const GraphSample& s : g.samples) {
        EXPECT_NEAR(s.g, s.r * s.r / 4 + std::log(s.r) - 0.25, 1e-8);
        EXPECT_LT(std::abs(first_integral_residual(kDir, 0.7, 1, 1, s.r, s.g_r)), 1e-9);
    }
    EXPECT_NEAR(g.height(2.5005), 2.5005 * 2.5005 / 4 + std::log(2.5005) - 0.25, 1e-8);
    EXPECT_THROW(g.height(3.5), DomainError);
}

TEST(IntegrateProfile, HelicoidIsFlat) {
    const GraphProfile g = integrate_profile(kIso, 1, 0, 0, 1, 3, 1e-2);
    for (const GraphSample& s : g.samples) {
        EXPECT_NEAR(s.g, 0.0, 1e-12);
        EXPECT_NEAR(s.g_r, 0.0, 1e-12);
    }
}

TEST(IntegrateProfile, ResidualAtSamples) {
    const auto prof = AnisotropyProfile::rapini_papoular(-0.3);
    const GraphProfile g = integrate_profile(prof, 0.5, -1, 0.1, 0.5, 1.2, 1e-3);
    for (const GraphSample& s : g.samples)
        EXPECT_LT(std::abs(first_integral_residual(prof, 0.5, -1, 0.1, s.r, s.g_r)), 1e-9);
}

TEST(IntegrateProfile, BranchLost) { EXPECT_THROW(integrate_profile(kIso, 0, -1, 0.1, 0.5, 3, 1e-2), BranchLost); }

TEST(ElGraph, ConstantIsZero) {
    const Grid2D z = Grid2D::sample(1.0, 0.05, [](double, double) { return 2.5; });
    const ResidualGrid r = elgraph_residual(kIso, z, 0.0, annulus(0.2, 0.9));
    EXPECT_GT(r.count(), 100u);
    EXPECT_EQ(r.max_abs(), 0.0);
}

TEST(ElGraph, DirichletQuadraticExact) {
    const Grid2D z = Grid2D::sample(2.0, 0.05, [](double x, double y) { return 2.0 * (x * x + y * y) / 4; });
    EXPECT_LT(elgraph_residual(kDir, z, 2.0, annulus(0.5, 1.5)).max_abs(), 1e-10);
}

TEST(ElGraph, HelicoidSecondOrder) {
    for (double e : {0.2, -0.2}) {
        const auto prof = AnisotropyProfile::rapini_papoular(e);
        const double coarse = elgraph_residual(prof, helicoid_grid(0.8, 3.0, 0.02), 0, annulus(0.5, 3)).max_abs();
        const double fine = elgraph_residual(prof, helicoid_grid(0.8, 3.0, 0.01), 0, annulus(0.5, 3)).max_abs();
        EXPECT_LT(coarse, 1e-2) << e;
        EXPECT_GT(coarse / fine, 3.5) << e;
    }
}

TEST(ElGraph, DelaunayProfile) {
    const GraphProfile g = integrate_profile(kIso, 0, -1, 0.1, 0.5, 1.2, 1e-3);
    const double coarse =
        elgraph_residual(kIso, helicoidal_graph_grid(g, 1.2, 0.01), -1, annulus(0.6, 1.1)).max_abs();
    const double fine =
        elgraph_residual(kIso, helicoidal_graph_grid(g, 1.2, 0.005), -1, annulus(0.6, 1.1)).max_abs();
    EXPECT_LT(coarse, 1e-3);
    EXPECT_GT(coarse / fine, 3.0);
}

TEST(ElGraph, HelicoidalGraphAnisotropic) {
    const auto prof = AnisotropyProfile::rapini_papoular(0.2);
    const GraphProfile g = integrate_profile(prof, 0.5, -1, 0.1, 0.5, 1.2, 1e-3);
    const Grid2D z = helicoidal_graph_grid(g, 1.2, 0.005);
    EXPECT_TRUE(z.period.has_value());
    EXPECT_LT(elgraph_residual(prof, z, -1, annulus(0.6, 1.1)).max_abs(), 1e-3);
}

TEST(GraphFromSled, MatchesFirstIntegral) {
    const auto prof = AnisotropyProfile::rapini_papoular(0.2);
    const SledParams p(1.0, 0.5, 1.0);
    const auto loop = find_sled_period(p, prof, sled_start(p, prof, Branch::Minus));
    ASSERT_TRUE(loop.has_value());
    const auto states = trace_sled(p, prof, sled_start(p, prof, Branch::Minus), loop->period, 1e-3);
    // longest run with omega eta1 > 0.05
    std::size_t best_a = 0, best_b = 0;
    for (std::size_t a = 0; a < states.size();) {
        if (states[a].eta1 * p.omega <= 0.05) {
            ++a;
            continue;
        }
        std::size_t b = a;
        while (b < states.size() && states[b].eta1 * p.omega > 0.05) ++b;
        if (b - a > best_b - best_a) best_a = a, best_b = b;
        a = b;
    }
    ASSERT_GT(best_b - best_a, 100u);
    const std::vector<SledState> seg(states.begin() + best_a, states.begin() + best_b);
    const GraphProfile g = graph_profile_from_sled(seg, p);
    EXPECT_DOUBLE_EQ(g.lambda, -1.0);
    EXPECT_DOUBLE_EQ(g.C, 0.25);
    for (std::size_t k = 1; k < g.samples.size(); ++k) EXPECT_LT(g.samples[k - 1].r, g.samples[k].r);
    for (const GraphSample& s : g.samples)
        EXPECT_LT(std::abs(first_integral_residual(prof, g.lambda, g.Lambda, g.C, s.r, s.g_r)), 1e-9);
}
