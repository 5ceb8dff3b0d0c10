#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "camc/anisotropy.hpp"
#include "camc/mesh.hpp"
#include "camc/twizzler.hpp"

namespace camc {

/// Sum over faces of gamma(nu3(face)) * area(face). Zero-area faces contribute
/// nothing. Throws DomainError listing faces whose nu3 is outside the profile domain.
double mesh_energy(const TriMesh& mesh, const AnisotropyProfile& profile);

/// Signed enclosed volume (1/6) sum det(v0, v1, v2).
double mesh_volume(const TriMesh& mesh);

/// True when every edge at `vertex` is shared by two of its faces.
bool is_interior_vertex(const TriMesh& mesh, std::size_t vertex);

/// -dF/dV for a single-vertex bump along the area-weighted vertex normal,
/// by centred differences at +-amplitude. amplitude <= 0 selects
/// 1e-4 * (shortest incident edge). Throws DomainError for boundary vertices
/// and DegenerateStencil when |dV| < 1e-14.
double lambda_estimate(const TriMesh& mesh, const AnisotropyProfile& profile, std::size_t vertex,
                       double amplitude = 0.0);

struct MeshEnergyReport {
    std::vector<std::size_t> vertices;  // interior vertices, ascending
    std::vector<double> estimates;
    double mean = 0.0;
    std::optional<double> target;
    double max_deviation = 0.0;  // from target when given, else from mean
    double bump_radius = 0.0;    // longest edge incident to a tested vertex
    double bump_amplitude = 0.0;  // largest displacement used
};

/// Lambda estimates at every interior vertex. `relative_amplitude` scales the
/// shortest incident edge of each vertex.
MeshEnergyReport verify_mesh(const TriMesh& mesh, const AnisotropyProfile& profile,
                             std::optional<double> target = std::nullopt, double relative_amplitude = 1e-4);

struct CurvatureReport {
    std::vector<double> values;  // kappa1 + kappa2 at interior grid vertices
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
};

/// Classical mean curvature kappa1 + kappa2 from a finite-difference second
/// fundamental form on the structured (s, theta) grid. The normal is taken
/// from the difference tangents, oriented along X_s x X_theta. Requires a
/// uniform s spacing.
CurvatureReport classical_mean_curvature(const HelicoidalMesh& mesh);

}  // namespace camc
