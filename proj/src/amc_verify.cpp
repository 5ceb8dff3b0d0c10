#include "camc/amc_verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <utility>

#include <Eigen/Geometry>

#include "camc/errors.hpp"
#include "camc/numerics.hpp"

namespace camc {

namespace {

// gamma(nu3) |A| at A = a0 + t b minus its value at a0 - t b, arranged so that
// no two nearly equal energies are subtracted.
double energy_difference(const Vec3& a0, const Vec3& b, double t, const AnisotropyProfile& profile) {
    const Vec3 ap = a0 + t * b, am = a0 - t * b;
    const double lp = ap.norm(), lm = am.norm();
    if (lp == 0.0 || lm == 0.0) {
        auto energy = [&](const Vec3& a, double len) { return len == 0.0 ? 0.0 : profile.gamma(a.z() / len) * len; };
        return energy(ap, lp) - energy(am, lm);
    }
    const double sum = lp + lm;
    const double dlen = 4.0 * t * a0.dot(b) / sum;
    const double num = am.z() / lm;
    const double dnu = (t * b.z() * sum - a0.z() * dlen) / (lp * lm);
    const double slope = gauss_legendre([&](double u) { return profile.gamma(num + u * dnu, 1); }, 0.0, 1.0);
    const double gp = profile.gamma(ap.z() / lp), gm = profile.gamma(num);
    return dlen * 0.5 * (gp + gm) + 0.5 * sum * dnu * slope;
}

double face_volume(const Vec3& a, const Vec3& b, const Vec3& c) { return a.dot(b.cross(c)) / 6.0; }

std::vector<std::size_t> incident_faces(const TriMesh& mesh, std::size_t vertex) {
    std::vector<std::size_t> out;
    const int v = static_cast<int>(vertex);
    for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
        const Face& fc = mesh.faces[f];
        if (fc[0] == v || fc[1] == v || fc[2] == v) out.push_back(f);
    }
    return out;
}

bool ring_closed(const TriMesh& mesh, std::size_t vertex, const std::vector<std::size_t>& faces) {
    if (faces.empty()) return false;
    std::map<int, int> uses;
    const int v = static_cast<int>(vertex);
    for (std::size_t f : faces)
        for (int w : mesh.faces[f])
            if (w != v) ++uses[w];
    return std::all_of(uses.begin(), uses.end(), [](const auto& kv) { return kv.second == 2; });
}

struct Stencil {
    double estimate = 0.0;
    double amplitude = 0.0;
    double radius = 0.0;
};

Stencil estimate_on(const TriMesh& mesh, const AnisotropyProfile& profile, std::size_t vertex,
                    const std::vector<std::size_t>& faces, double amplitude, double relative_amplitude) {
    Vec3 normal = Vec3::Zero();
    double shortest = std::numeric_limits<double>::infinity();
    double longest = 0.0;
    const Vec3& p = mesh.vertices[vertex];
    for (std::size_t f : faces) {
        normal += face_area_vector(mesh, f);
        for (int w : mesh.faces[f]) {
            if (static_cast<std::size_t>(w) == vertex) continue;
            const double e = (mesh.vertices[static_cast<std::size_t>(w)] - p).norm();
            shortest = std::min(shortest, e);
            longest = std::max(longest, e);
        }
    }
    if (normal.norm() == 0.0) throw DegenerateStencil("vertex " + std::to_string(vertex) + " has no normal");
    normal.normalize();
    if (!(amplitude > 0.0)) amplitude = relative_amplitude * shortest;

    // Area vectors are affine in the bump, A(t) = A0 + t B, so the moved
    // vertex is never formed and p + t n does not round.
    double df = 0.0, flux = 0.0;
    for (std::size_t f : faces) {
        const Face& fc = mesh.faces[f];
        std::size_t k = 0;
        while (static_cast<std::size_t>(fc[k]) != vertex) ++k;
        const Vec3 e1 = mesh.vertices[static_cast<std::size_t>(fc[(k + 1) % 3])] - p;
        const Vec3 e2 = mesh.vertices[static_cast<std::size_t>(fc[(k + 2) % 3])] - p;
        const Vec3 a0 = 0.5 * e1.cross(e2);
        const Vec3 b = -0.5 * normal.cross(e2 - e1);
        df += energy_difference(a0, b, amplitude, profile);
        flux += normal.dot(a0);
    }
    const double dv = 2.0 * amplitude * flux / 3.0;
    if (std::abs(dv) < 1e-14)
        throw DegenerateStencil("volume change below 1e-14 at vertex " + std::to_string(vertex));
    return {-df / dv, amplitude, longest};
}

}  // namespace

double mesh_energy(const TriMesh& mesh, const AnisotropyProfile& profile) {
    mesh.validate();
    double total = 0.0;
    std::vector<std::size_t> bad;
    for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
        const Vec3 n = face_area_vector(mesh, f);
        const double len = n.norm();
        if (len == 0.0) continue;
        const double nu3 = n.z() / len;
        if (!profile.contains(nu3)) {
            bad.push_back(f);
            continue;
        }
        total += profile.gamma(nu3) * 0.5 * len;
    }
    if (!bad.empty()) {
        std::string list;
        for (std::size_t i = 0; i < bad.size() && i < 10; ++i) list += (i ? ", " : "") + std::to_string(bad[i]);
        if (bad.size() > 10) list += ", ...";
        throw DomainError(std::to_string(bad.size()) + " face normal(s) outside the profile domain: " + list);
    }
    return total;
}

double mesh_volume(const TriMesh& mesh) {
    mesh.validate();
    double total = 0.0;
    for (const Face& f : mesh.faces)
        total += face_volume(mesh.vertices[static_cast<std::size_t>(f[0])], mesh.vertices[static_cast<std::size_t>(f[1])],
                             mesh.vertices[static_cast<std::size_t>(f[2])]);
    return total;
}

bool is_interior_vertex(const TriMesh& mesh, std::size_t vertex) {
    if (vertex >= mesh.vertices.size()) return false;
    return ring_closed(mesh, vertex, incident_faces(mesh, vertex));
}

double lambda_estimate(const TriMesh& mesh, const AnisotropyProfile& profile, std::size_t vertex, double amplitude) {
    if (vertex >= mesh.vertices.size()) throw DomainError("vertex index " + std::to_string(vertex) + " out of range");
    const std::vector<std::size_t> faces = incident_faces(mesh, vertex);
    if (!ring_closed(mesh, vertex, faces))
        throw DomainError("vertex " + std::to_string(vertex) + " is on the boundary");
    return estimate_on(mesh, profile, vertex, faces, amplitude, 1e-4).estimate;
}

MeshEnergyReport verify_mesh(const TriMesh& mesh, const AnisotropyProfile& profile, std::optional<double> target,
                             double relative_amplitude) {
    mesh.validate();
    if (!(relative_amplitude > 0.0)) throw DomainError("relative amplitude must be positive");
    const std::vector<std::vector<int>> adjacency = vertex_faces(mesh);
    MeshEnergyReport report;
    report.target = target;
    std::vector<std::size_t> faces;
    for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
        faces.assign(adjacency[v].begin(), adjacency[v].end());
        if (!ring_closed(mesh, v, faces)) continue;
        const Stencil st = estimate_on(mesh, profile, v, faces, 0.0, relative_amplitude);
        report.vertices.push_back(v);
        report.estimates.push_back(st.estimate);
        report.bump_radius = std::max(report.bump_radius, st.radius);
        report.bump_amplitude = std::max(report.bump_amplitude, st.amplitude);
    }
    if (report.estimates.empty()) throw DomainError("mesh has no interior vertices");
    double sum = 0.0;
    for (double e : report.estimates) sum += e;
    report.mean = sum / static_cast<double>(report.estimates.size());
    const double ref = target.value_or(report.mean);
    for (double e : report.estimates) report.max_deviation = std::max(report.max_deviation, std::abs(e - ref));
    return report;
}

CurvatureReport classical_mean_curvature(const HelicoidalMesh& hm) {
    if (hm.rows < 3 || hm.cols < 3) throw DomainError("classical_mean_curvature needs at least a 3x3 grid");
    const double ds = hm.s[1] - hm.s[0];
    const double dt = hm.theta[1] - hm.theta[0];
    for (std::size_t i = 1; i + 1 < hm.rows; ++i)
        if (std::abs((hm.s[i + 1] - hm.s[i]) - ds) > 1e-9 * std::abs(ds))
            throw DomainError("classical_mean_curvature needs uniform s spacing");

    CurvatureReport out;
    out.min = std::numeric_limits<double>::infinity();
    out.max = -std::numeric_limits<double>::infinity();
    double sum = 0.0;
    auto X = [&](std::size_t i, std::size_t j) -> const Vec3& { return hm.mesh.vertices[hm.index(i, j)]; };
    for (std::size_t i = 1; i + 1 < hm.rows; ++i) {
        for (std::size_t j = 1; j + 1 < hm.cols; ++j) {
            const Vec3 xs = (X(i + 1, j) - X(i - 1, j)) / (2 * ds);
            const Vec3 xt = (X(i, j + 1) - X(i, j - 1)) / (2 * dt);
            const Vec3 xss = (X(i + 1, j) - 2 * X(i, j) + X(i - 1, j)) / (ds * ds);
            const Vec3 xtt = (X(i, j + 1) - 2 * X(i, j) + X(i, j - 1)) / (dt * dt);
            const Vec3 xst = (X(i + 1, j + 1) - X(i + 1, j - 1) - X(i - 1, j + 1) + X(i - 1, j - 1)) / (4 * ds * dt);
            const Vec3 n = xs.cross(xt).normalized();
            const double E = xs.dot(xs), F = xs.dot(xt), G = xt.dot(xt);
            const double L = xss.dot(n), M = xst.dot(n), N = xtt.dot(n);
            const double H = (E * N - 2 * F * M + G * L) / (E * G - F * F);
            out.values.push_back(H);
            sum += H;
            out.min = std::min(out.min, H);
            out.max = std::max(out.max, H);
        }
    }
    out.mean = sum / static_cast<double>(out.values.size());
    return out;
}

}  // namespace camc
