#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "camc/anisotropy.hpp"
#include "camc/errors.hpp"

using namespace camc;

namespace {

std::vector<AnisotropyProfile> sample_profiles() {
    return {AnisotropyProfile::isotropic(), AnisotropyProfile::rapini_papoular(0.2),
            AnisotropyProfile::rapini_papoular(-0.3), AnisotropyProfile::polynomial({1.0, 0.0, 0.1, 0.0, 0.05}),
            AnisotropyProfile::polynomial({1.2, 0.1, -0.05, 0.02})};
}

// Centred difference of order-(k-1) values.
double fd(const AnisotropyProfile& p, double x, int order, double h = 1e-5) {
    return (p.gamma(x + h, order - 1) - p.gamma(x - h, order - 1)) / (2 * h);
}

}  // namespace

TEST(GammaEval, IsotropicIsOne) { EXPECT_DOUBLE_EQ(gamma_eval(AnisotropyProfile::isotropic(), 0.5, 0), 1.0); }

TEST(GammaEval, RapiniFirstDerivative) {
    EXPECT_NEAR(gamma_eval(AnisotropyProfile::rapini_papoular(0.2), 1.0, 1), 0.4, 1e-15);
}

TEST(GammaEval, DirichletValue) {
    // gamma = (1/nu3 - nu3) / 2
    EXPECT_NEAR(gamma_eval(AnisotropyProfile::dirichlet(), 0.5, 0), 0.75, 1e-15);
    EXPECT_NEAR(gamma_eval(AnisotropyProfile::dirichlet(), 0.5, 1), -0.5 * (4.0 + 1.0), 1e-14);
}

TEST(GammaEval, DomainErrors) {
    EXPECT_THROW(gamma_eval(AnisotropyProfile::dirichlet(), 0.0, 0), DomainError);
    EXPECT_THROW(gamma_eval(AnisotropyProfile::dirichlet(), -0.5, 0), DomainError);
    EXPECT_THROW(gamma_eval(AnisotropyProfile::rapini_papoular(0.2), 1.5, 0), DomainError);
    EXPECT_THROW(gamma_eval(AnisotropyProfile::isotropic(), 0.2, 4), DomainError);
}

TEST(GammaEval, DerivativesMatchFiniteDifferences) {
    auto profiles = sample_profiles();
    profiles.push_back(AnisotropyProfile::dirichlet());
    for (const auto& p : profiles) {
        for (int k = 1; k <= 3; ++k) {
            for (double x = -0.9; x <= 0.9; x += 0.05) {
                if (!p.contains(x - 1e-3) || x < p.domain_lo() + 0.05) continue;
                const double exact = p.gamma(x, k);
                const double approx = fd(p, x, k);
                EXPECT_NEAR(approx, exact, 1e-6 * std::max(1.0, std::abs(exact)))
                    << p.describe() << " order " << k << " at " << x;
            }
        }
    }
}

TEST(Mu, Examples) {
    EXPECT_DOUBLE_EQ(mu2(AnisotropyProfile::isotropic(), 0.37), 1.0);
    EXPECT_NEAR(mu2(AnisotropyProfile::rapini_papoular(0.2), 1.0), 1.25, 1e-14);
    EXPECT_NEAR(mu2(AnisotropyProfile::rapini_papoular(0.2), 0.0), 1.0, 1e-15);
    EXPECT_DOUBLE_EQ(mu1(AnisotropyProfile::isotropic(), 0.3), 1.0);
    EXPECT_NEAR(mu1(AnisotropyProfile::rapini_papoular(0.2), 0.0), 1.0 / 1.4, 1e-14);
    EXPECT_NEAR(mu1(AnisotropyProfile::rapini_papoular(-0.3), 0.0), 2.5, 1e-14);
}

TEST(Mu, ConvexityErrors) {
    const auto p = AnisotropyProfile::rapini_papoular(2.0);
    EXPECT_THROW(mu2(p, 1.0), ConvexityError);
    EXPECT_THROW(mu1(AnisotropyProfile::rapini_papoular(-0.6), 0.0), ConvexityError);
}

TEST(Convexity, RapiniPositive) {
    const ConvexityReport r = convexity_check(AnisotropyProfile::rapini_papoular(0.2), 101);
    EXPECT_TRUE(r.pass);
    EXPECT_NEAR(r.min_inv_mu2, 0.8, 1e-14);
    EXPECT_NEAR(std::abs(r.argmin_inv_mu2), 1.0, 1e-14);
}

TEST(Convexity, RapiniNegative) {
    const ConvexityReport r = convexity_check(AnisotropyProfile::rapini_papoular(-0.3), 101);
    EXPECT_TRUE(r.pass);
    EXPECT_NEAR(r.min_inv_mu1, 0.4, 1e-14);
    EXPECT_NEAR(r.argmin_inv_mu1, 0.0, 1e-14);
}

TEST(Convexity, FailsForLargeE) {
    EXPECT_FALSE(convexity_check(AnisotropyProfile::rapini_papoular(2.0), 101).pass);
}

TEST(Convexity, DirichletFlagged) {
    const ConvexityReport r = convexity_check(AnisotropyProfile::dirichlet());
    EXPECT_TRUE(r.pass);
    EXPECT_TRUE(r.non_compact_wulff);
}

TEST(Wulff, IsotropicSphere) {
    const WulffMesh w = wulff_mesh(AnisotropyProfile::isotropic(), 32, 64);
    double worst = 0.0;
    for (const auto& v : w.mesh.vertices) worst = std::max(worst, std::abs(v.norm() - 1.0));
    EXPECT_LT(worst, 1e-12);
}

TEST(Wulff, DirichletParaboloid) {
    const auto p = AnisotropyProfile::dirichlet().restricted(0.1, 1.0);
    const WulffMesh w = wulff_mesh(p, 40, 48);
    for (const auto& v : w.mesh.vertices) EXPECT_NEAR(v.x() * v.x() + v.y() * v.y(), -2.0 * v.z(), 1e-9);
}

TEST(Wulff, SupportIdentity) {
    for (const auto& p : sample_profiles()) {
        const WulffMesh w = wulff_mesh(p, 24, 36);
        ASSERT_EQ(w.samples.size(), w.mesh.vertices.size());
        for (std::size_t k = 0; k < w.samples.size(); ++k) {
            const WulffSample& s = w.samples[k];
            const double st = std::sqrt(1.0 - s.nu3 * s.nu3);
            const Eigen::Vector3d n(st * std::cos(s.azimuth), st * std::sin(s.azimuth), s.nu3);
            EXPECT_NEAR(w.mesh.vertices[k].dot(n), p.gamma(s.nu3), 1e-12);
        }
    }
}

TEST(Wulff, OutwardOrientation) {
    const WulffMesh w = wulff_mesh(AnisotropyProfile::rapini_papoular(0.2), 24, 36);
    for (std::size_t f = 0; f < w.mesh.faces.size(); ++f) {
        const auto& fc = w.mesh.faces[f];
        const Eigen::Vector3d c =
            (w.mesh.vertices[fc[0]] + w.mesh.vertices[fc[1]] + w.mesh.vertices[fc[2]]) / 3.0;
        EXPECT_GT(face_area_vector(w.mesh, f).dot(c), 0.0);
    }
}

TEST(Wulff, CahnHoffmanHorizontalPart) {
    const auto p = AnisotropyProfile::rapini_papoular(-0.3);
    const WulffSample s = wulff_point(p, 0.4, 1.1);
    const Eigen::Vector3d n = unit_normal(0.4, 1.1);
    EXPECT_NEAR(s.point.x(), n.x() / mu2(p, 0.4), 1e-15);
    EXPECT_NEAR(s.point.y(), n.y() / mu2(p, 0.4), 1e-15);
}

TEST(Harmonicity, Examples) {
    EXPECT_DOUBLE_EQ(harmonicity_residual(AnisotropyProfile::isotropic(), 1.0, 0.5), 0.0);
    EXPECT_NEAR(harmonicity_residual(AnisotropyProfile::rapini_papoular(0.2), 1.0, 0.5), -0.6, 1e-14);
    // gamma = 1 + a nu^2 + b nu^3 with b = 2a balances the equation at nu = 1/2, lambda = 1.
    const auto p = AnisotropyProfile::polynomial({1.0, 0.0, 0.05, 0.1});
    EXPECT_NEAR(harmonicity_residual(p, 1.0, 0.5), 0.0, 1e-15);
    EXPECT_GT(std::abs(harmonicity_residual(p, 1.0, 0.3)), 1e-3);
    EXPECT_THROW(harmonicity_residual(p, 0.0, 0.5), DomainError);
}

TEST(Properties, WulffCurvatureIdentity) {
    for (const auto& p : sample_profiles()) {
        auto g = [&](double x) { return (1 - x * x) * std::pow(p.inv_mu2(x), 2); };
        for (int k = 0; k < 100; ++k) {
            const double x = -0.99 + 1.98 * (k + 0.5) / 100;
            const double lhs = (g(x + 1e-5) - g(x - 1e-5)) / 2e-5;
            const double rhs = -2 * x / (mu1(p, x) * mu2(p, x));
            EXPECT_NEAR(lhs, rhs, 1e-6 * std::max(1.0, std::abs(rhs)));
        }
    }
}

TEST(Properties, MaximumAtEquator) {
    for (const auto& p : sample_profiles()) {
        const double at0 = std::pow(p.inv_mu2(0.0), 2);
        for (double x = -1.0; x <= 1.0; x += 0.01) EXPECT_LE((1 - x * x) * std::pow(p.inv_mu2(x), 2), at0 + 1e-15);
    }
}

TEST(Parse, Grammar) {
    EXPECT_EQ(AnisotropyProfile::parse("isotropic").kind(), AnisotropyProfile::Kind::Isotropic);
    EXPECT_DOUBLE_EQ(AnisotropyProfile::parse("rapini:e=-0.3").e(), -0.3);
    EXPECT_EQ(AnisotropyProfile::parse("dirichlet").kind(), AnisotropyProfile::Kind::Dirichlet);
    const auto poly = AnisotropyProfile::parse("poly:1,0,0.1");
    ASSERT_EQ(poly.coeffs().size(), 3u);
    EXPECT_DOUBLE_EQ(poly.coeffs()[2], 0.1);
    for (const auto& p : sample_profiles())
        EXPECT_EQ(AnisotropyProfile::parse(p.describe()).describe(), p.describe());
}

TEST(Parse, Rejects) {
    for (const char* bad : {"", "iso", "rapini", "rapini:e=", "rapini:x=1", "poly:", "poly:1,,2", "dirichlet:1"})
        EXPECT_THROW(AnisotropyProfile::parse(bad), UsageError) << bad;
}
