#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Geometry>

#include "camc/amc_verify.hpp"
#include "camc/errors.hpp"
#include "camc/twizzler.hpp"

using namespace camc;

namespace {

constexpr double kPi = std::numbers::pi;

// Periodic-seam cylinder band of radius R, height H, outward faces.
TriMesh cylinder(double R, double H, int around, int rows) {
    TriMesh m;
    for (int i = 0; i <= rows; ++i)
        for (int j = 0; j < around; ++j) {
            const double t = 2 * kPi * j / around;
            m.vertices.emplace_back(R * std::cos(t), R * std::sin(t), H * i / rows);
        }
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < around; ++j) {
            const int a = i * around + j, b = i * around + (j + 1) % around;
            const int c = a + around, d = b + around;
            m.faces.push_back({a, b, d});
            m.faces.push_back({a, d, c});
        }
    return m;
}

// (r cos t, r sin t, lambda t)
TriMesh helicoid(double lambda, double r0, double r1, int nr, int nt) {
    TriMesh m;
    for (int i = 0; i <= nr; ++i)
        for (int j = 0; j <= nt; ++j) {
            const double r = r0 + (r1 - r0) * i / nr, t = 2 * kPi * j / nt;
            m.vertices.emplace_back(r * std::cos(t), r * std::sin(t), lambda * t);
        }
    const int w = nt + 1;
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nt; ++j) {
            const int a = i * w + j, b = a + 1, c = a + w, d = c + 1;
            m.faces.push_back({a, c, d});
            m.faces.push_back({a, d, b});
        }
    return m;
}

std::vector<int> valence(const TriMesh& m) {
    std::vector<int> v(m.vertices.size(), 0);
    for (const Face& f : m.faces)
        for (int k : f) ++v[static_cast<std::size_t>(k)];
    return v;
}

HelicoidalMesh figure_mesh(double e, double ds, int theta_samples) {
    const auto prof = AnisotropyProfile::rapini_papoular(e);
    const SledParams p(1.0, 0.5, 1.0);
    const SledState st = sled_start(p, prof, Branch::Minus);
    const double step = 1e-3;
    const auto loop = find_sled_period(p, prof, st, step);
    const double s_max = std::ceil(loop->period / ds) * ds;
    const auto states = trace_sled(p, prof, st, s_max, step);
    return sweep(subsample(generating_curve(states), static_cast<std::size_t>(std::lround(ds / step))), p,
                 theta_samples, 1.0);
}

}  // namespace

TEST(MeshEnergy, SphereArea) {
    const TriMesh s = icosphere(4);
    ASSERT_GE(s.faces.size(), 5000u);
    EXPECT_NEAR(mesh_energy(s, AnisotropyProfile::isotropic()), 4 * kPi, 0.005 * 4 * kPi);
}

TEST(MeshEnergy, FlatSquare) {
    TriMesh sq;
    sq.vertices = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
    sq.faces = {{0, 1, 2}, {0, 2, 3}};
    for (double e : {0.2, -0.3}) {
        const auto prof = AnisotropyProfile::rapini_papoular(e);
        EXPECT_NEAR(mesh_energy(sq, prof), prof.gamma(1.0), 1e-15);
    }
}

TEST(MeshEnergy, CylinderBand) {
    const TriMesh c = cylinder(1.0, 1.0, 256, 4);
    const double exact_polygon = 256 * std::sin(kPi / 256);  // perimeter / 2 of the inscribed polygon
    for (double e : {0.2, -0.3})
        EXPECT_NEAR(mesh_energy(c, AnisotropyProfile::rapini_papoular(e)), 2 * exact_polygon, 1e-12);
    EXPECT_NEAR(2 * exact_polygon, 2 * kPi, 1e-3);
}

TEST(MeshEnergy, DomainError) {
    EXPECT_THROW(mesh_energy(icosphere(1), AnisotropyProfile::dirichlet()), DomainError);
}

TEST(MeshVolume, Sphere) {
    const TriMesh s = icosphere(4);
    const double v = mesh_volume(s);
    EXPECT_NEAR(v, 4 * kPi / 3, 0.005 * 4 * kPi / 3);
    EXPECT_NEAR(mesh_volume(flipped(s)), -v, 1e-14);
    EXPECT_NEAR(mesh_volume(transformed(s, Eigen::Matrix3d::Identity(), Vec3(3, -2, 7))), v, 1e-12);
}

TEST(LambdaEstimate, SphereMedian) {
    const TriMesh s = icosphere(4);
    const MeshEnergyReport r = verify_mesh(s, AnisotropyProfile::isotropic(), -2.0);
    ASSERT_EQ(r.estimates.size(), s.vertices.size());
    std::vector<double> sorted = r.estimates;
    std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
    EXPECT_NEAR(sorted[sorted.size() / 2], -2.0, 0.02);
    const auto val = valence(s);
    for (std::size_t k = 0; k < r.vertices.size(); ++k)
        if (val[r.vertices[k]] == 6) EXPECT_NEAR(r.estimates[k], -2.0, 0.02) << r.vertices[k];
}

TEST(LambdaEstimate, CylinderIsotropic) {
    for (double R : {0.5, 1.0, 2.0}) {
        const MeshEnergyReport r = verify_mesh(cylinder(R, R, 128, 16), AnisotropyProfile::isotropic(), -1.0 / R);
        EXPECT_FALSE(r.estimates.empty());
        EXPECT_LT(r.max_deviation, 0.01 / R) << R;
    }
}

TEST(LambdaEstimate, CylinderAnisotropic) {
    const auto prof = AnisotropyProfile::polynomial({1.2, 0.1, -0.05, 0.02});
    const double expected = -1.0 / mu2(prof, 0.0);
    const MeshEnergyReport r = verify_mesh(cylinder(1.0, 1.0, 128, 16), prof, expected);
    EXPECT_LT(r.max_deviation, 0.01 * std::abs(expected));
}

TEST(LambdaEstimate, HelicoidIsMinimal) {
    for (double e : {0.2, -0.3}) {
        const MeshEnergyReport r =
            verify_mesh(helicoid(0.5, 0.5, 3.0, 40, 160), AnisotropyProfile::rapini_papoular(e), 0.0);
        EXPECT_GT(r.estimates.size(), 1000u);
        EXPECT_LT(r.max_deviation, 2e-2) << e;
    }
}

TEST(LambdaEstimate, BoundaryAndDegenerate) {
    const TriMesh h = helicoid(0.5, 0.5, 3.0, 4, 16);
    EXPECT_FALSE(is_interior_vertex(h, 0));
    EXPECT_THROW(lambda_estimate(h, AnisotropyProfile::isotropic(), 0), DomainError);
    TriMesh flat;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) flat.vertices.emplace_back(i, j, 0.0);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const int a = i * 3 + j;
            flat.faces.push_back({a, a + 3, a + 4});
            flat.faces.push_back({a, a + 4, a + 1});
        }
    ASSERT_TRUE(is_interior_vertex(flat, 4));
    EXPECT_NEAR(lambda_estimate(flat, AnisotropyProfile::isotropic(), 4, 1e-3), 0.0, 1e-9);
    EXPECT_THROW(lambda_estimate(flat, AnisotropyProfile::isotropic(), 4, 1e-20), DegenerateStencil);
}

TEST(TwizzlerVerify, DeviationHalvesUnderRefinement) {
    const auto prof = AnisotropyProfile::rapini_papoular(0.2);
    const MeshEnergyReport coarse = verify_mesh(figure_mesh(0.2, 0.04, 160).mesh, prof, 1.0);
    const MeshEnergyReport fine = verify_mesh(figure_mesh(0.2, 0.02, 319).mesh, prof, 1.0);
    EXPECT_LT(coarse.max_deviation, 2e-2);
    EXPECT_LT(fine.max_deviation, 0.5 * coarse.max_deviation);
}

TEST(TwizzlerVerify, AmplitudeDecade) {
    const auto prof = AnisotropyProfile::rapini_papoular(-0.3);
    const TriMesh m = figure_mesh(-0.3, 0.04, 160).mesh;
    const MeshEnergyReport a = verify_mesh(m, prof, 1.0, 1e-4);
    const MeshEnergyReport b = verify_mesh(m, prof, 1.0, 1e-5);
    ASSERT_EQ(a.estimates.size(), b.estimates.size());
    for (std::size_t k = 0; k < a.estimates.size(); ++k)
        EXPECT_NEAR(a.estimates[k], b.estimates[k], 0.01 * std::abs(a.estimates[k]));
}

TEST(TwizzlerVerify, RigidMotionInvariance) {
    const auto prof = AnisotropyProfile::rapini_papoular(0.2);
    const TriMesh m = figure_mesh(0.2, 0.04, 160).mesh;
    const Eigen::Matrix3d rot = Eigen::AngleAxisd(0.7, Vec3::UnitZ()).toRotationMatrix();
    const TriMesh moved = transformed(m, rot, Vec3(0, 0, 2.5));
    for (std::size_t v = 0; v < m.vertices.size(); v += 37) {
        if (!is_interior_vertex(m, v)) continue;
        EXPECT_NEAR(lambda_estimate(moved, prof, v), lambda_estimate(m, prof, v), 1e-10);
    }
}
