#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include <Eigen/Core>

namespace camc {

using Vec3 = Eigen::Vector3d;
using Face = std::array<int, 3>;

/// Triangle soup with shared vertices. Faces are counter-clockwise when seen
/// from the side their normal points to.
struct TriMesh {
    std::vector<Vec3> vertices;
    std::vector<Face> faces;

    bool empty() const { return vertices.empty(); }
    /// Throws std::out_of_range when a face index is outside the vertex range.
    void validate() const;
};

/// Unnormalised normal (v1 - v0) x (v2 - v0); its norm is twice the area.
Vec3 face_area_vector(const TriMesh& mesh, std::size_t face);

/// Area-weighted average of incident face normals, normalised.
std::vector<Vec3> vertex_normals(const TriMesh& mesh);

/// Incident faces per vertex.
std::vector<std::vector<int>> vertex_faces(const TriMesh& mesh);

/// Vertices touching an edge that belongs to exactly one face.
std::vector<bool> boundary_vertices(const TriMesh& mesh);

/// Icosahedron subdivided `levels` times and projected to the sphere of the
/// given radius (20 * 4^levels faces, outward orientation).
TriMesh icosphere(int levels, double radius = 1.0);

/// Applies x -> R x + t to every vertex.
TriMesh transformed(const TriMesh& mesh, const Eigen::Matrix3d& rotation, const Vec3& translation);

/// Reverses every face, flipping the orientation.
TriMesh flipped(const TriMesh& mesh);

}  // namespace camc
