#include "camc/mesh.hpp"

#include <map>
#include <stdexcept>
#include <utility>

#include <Eigen/Geometry>

namespace camc {

void TriMesh::validate() const {
    const int n = static_cast<int>(vertices.size());
    for (const Face& f : faces)
        for (int idx : f)
            if (idx < 0 || idx >= n) throw std::out_of_range("face index out of range");
}

Vec3 face_area_vector(const TriMesh& mesh, std::size_t face) {
    const Face& f = mesh.faces[face];
    const Vec3& a = mesh.vertices[f[0]];
    return (mesh.vertices[f[1]] - a).cross(mesh.vertices[f[2]] - a);
}

std::vector<Vec3> vertex_normals(const TriMesh& mesh) {
    std::vector<Vec3> normals(mesh.vertices.size(), Vec3::Zero());
    for (std::size_t k = 0; k < mesh.faces.size(); ++k) {
        const Vec3 n = face_area_vector(mesh, k);
        for (int v : mesh.faces[k]) normals[v] += n;
    }
    for (Vec3& n : normals) {
        const double len = n.norm();
        if (len > 0) n /= len;
    }
    return normals;
}

std::vector<std::vector<int>> vertex_faces(const TriMesh& mesh) {
    std::vector<std::vector<int>> out(mesh.vertices.size());
    for (std::size_t k = 0; k < mesh.faces.size(); ++k)
        for (int v : mesh.faces[k]) out[v].push_back(static_cast<int>(k));
    return out;
}

std::vector<bool> boundary_vertices(const TriMesh& mesh) {
    std::map<std::pair<int, int>, int> edge_count;
    for (const Face& f : mesh.faces) {
        for (int e = 0; e < 3; ++e) {
            int a = f[e], b = f[(e + 1) % 3];
            if (a > b) std::swap(a, b);
            ++edge_count[{a, b}];
        }
    }
    std::vector<bool> boundary(mesh.vertices.size(), false);
    for (const auto& [edge, count] : edge_count) {
        if (count == 1) {
            boundary[edge.first] = true;
            boundary[edge.second] = true;
        }
    }
    // Isolated vertices have no one-ring either.
    std::vector<bool> used(mesh.vertices.size(), false);
    for (const Face& f : mesh.faces)
        for (int v : f) used[v] = true;
    for (std::size_t v = 0; v < used.size(); ++v)
        if (!used[v]) boundary[v] = true;
    return boundary;
}

TriMesh icosphere(int levels, double radius) {
    const double t = (1.0 + std::sqrt(5.0)) / 2.0;
    TriMesh mesh;
    mesh.vertices = {{-1, t, 0}, {1, t, 0},  {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
                     {0, -1, -t}, {0, 1, -t}, {t, 0, -1},  {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1}};
    for (Vec3& v : mesh.vertices) v.normalize();
    mesh.faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
                  {11, 10, 2}, {10, 7, 6}, {7, 1, 8},  {3, 9, 4},  {3, 4, 2},   {3, 2, 6}, {3, 6, 8},
                  {3, 8, 9},  {4, 9, 5},  {2, 4, 11}, {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};

    for (int level = 0; level < levels; ++level) {
        std::map<std::pair<int, int>, int> midpoint;
        auto mid = [&](int a, int b) {
            const std::pair<int, int> key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
            if (auto it = midpoint.find(key); it != midpoint.end()) return it->second;
            mesh.vertices.push_back((mesh.vertices[a] + mesh.vertices[b]).normalized());
            const int idx = static_cast<int>(mesh.vertices.size()) - 1;
            midpoint.emplace(key, idx);
            return idx;
        };
        std::vector<Face> refined;
        refined.reserve(mesh.faces.size() * 4);
        for (const Face& f : mesh.faces) {
            const int ab = mid(f[0], f[1]);
            const int bc = mid(f[1], f[2]);
            const int ca = mid(f[2], f[0]);
            refined.push_back({f[0], ab, ca});
            refined.push_back({f[1], bc, ab});
            refined.push_back({f[2], ca, bc});
            refined.push_back({ab, bc, ca});
        }
        mesh.faces = std::move(refined);
    }
    for (Vec3& v : mesh.vertices) v *= radius;
    return mesh;
}

TriMesh transformed(const TriMesh& mesh, const Eigen::Matrix3d& rotation, const Vec3& translation) {
    TriMesh out = mesh;
    for (Vec3& v : out.vertices) v = rotation * v + translation;
    return out;
}

TriMesh flipped(const TriMesh& mesh) {
    TriMesh out = mesh;
    for (Face& f : out.faces) std::swap(f[1], f[2]);
    return out;
}

}  // namespace camc
