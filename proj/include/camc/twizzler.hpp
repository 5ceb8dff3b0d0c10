#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "camc/anisotropy.hpp"
#include "camc/mesh.hpp"

namespace camc {

/// Parameters of the sled equation
///   F(eta1, eta2) = Lambda (eta1^2 + eta2^2) + 2 eta2 / (mu2(nu3) sqrt(1 + omega^2 eta1^2)) + A = 0,
///   nu3 = omega eta1 / sqrt(1 + omega^2 eta1^2).
struct SledParams {
    double Lambda = 0.0;
    double A = 0.0;
    double omega = 1.0;

    SledParams() = default;
    /// Throws DomainError when omega == 0.
    SledParams(double Lambda_, double A_, double omega_);

    /// Pitch of the equivalent graph z = g(r) + pitch * theta; pitch * omega == -1.
    double pitch() const { return -1.0 / omega; }
};

enum class Branch { Plus, Minus };

/// Point on the treadmill sled. `phi` is the tangent angle of the generating
/// curve (x_s + i y_s = e^{i phi}) and `kappa` its curvature with
/// d phi = -kappa ds.
struct SledState {
    double eta1 = 0.0;
    double eta2 = 0.0;
    double phi = 0.0;
    double s = 0.0;
    double kappa = 0.0;
};

/// nu3 of the swept surface along the curve point with the given eta1.
double sled_nu3(const SledParams& params, double eta1);

/// Left-hand side of the sled equation. Throws ConvexityError when mu2 is not positive.
double eq_H_residual(const SledParams& params, const AnisotropyProfile& profile, double eta1, double eta2);

/// Root of the sled equation regarded as a quadratic in eta2. Plus/Minus pick
/// the +sqrt / -sqrt root; with Lambda == 0 the equation is linear.
/// Throws NoRealRoot or DegenerateEquation.
double solve_eta2(const SledParams& params, const AnisotropyProfile& profile, double eta1, Branch branch);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Maximal eta1 intervals on which
///   (1 - nu3^2)/mu2(nu3)^2 - Lambda^2 eta1^2 - Lambda A >= 0,
/// i.e. where the quadratic in eta2 has real roots. A degenerate interval
/// [t, t] is reported where the inequality only holds with equality.
/// Throws DomainError when Lambda == 0 and EmptyDomain when no eta1 qualifies.
std::vector<Interval> discriminant_domain(const SledParams& params, const AnisotropyProfile& profile,
                                          int grid_points = 4001);

/// Turning rate of the generating curve at a sled point. The factor eta1
/// shared by F_eta1 and the implicit-differentiation denominator is cancelled
/// analytically, so the value is regular on eta1 = 0.
double sled_kappa(const SledParams& params, const AnisotropyProfile& profile, double eta1, double eta2);

/// Sled point at eta1 = 0 on the requested branch, with phi = s = 0.
SledState sled_start(const SledParams& params, const AnisotropyProfile& profile, Branch branch);

/// Integrates eta1' = -1 - kappa eta2, eta2' = kappa eta1, phi' = -kappa with
/// a fixed-step fourth-order Runge-Kutta scheme in arc length, projecting each
/// step back onto F = 0 along grad F. Returns round(s_max / step) + 1 states.
/// Steps crossing a zero of the turning denominator are halved down to 1e-7
/// before SingularTurning is thrown.
std::vector<SledState> trace_sled(const SledParams& params, const AnisotropyProfile& profile,
                                  const SledState& start, double s_max, double step = 1e-3);

struct SledLoop {
    double period = 0.0;         // arc length of one sled circuit
    double closure_error = 0.0;  // |(eta1, eta2)(period) - (eta1, eta2)(0)|
    double turning = 0.0;        // phi(period) - phi(0)
    SledState end;
};

/// Traces from `start` until the sled returns to it and locates the return
/// arc length by bisection on a partial step. Returns nullopt for a stationary
/// sled (the cylinder) or when no return happens before `s_limit`.
std::optional<SledLoop> find_sled_period(const SledParams& params, const AnisotropyProfile& profile,
                                         const SledState& start, double step = 1e-3,
                                         double s_limit = 1000.0);

struct CurvePoint {
    double x = 0.0;
    double y = 0.0;
    double s = 0.0;
    double phi = 0.0;
};

struct GeneratingCurve {
    std::vector<CurvePoint> samples;
};

/// x + i y = -(eta1 + i eta2) e^{i phi} at every state. Throws DomainError
/// when the states are empty or s is not strictly increasing.
GeneratingCurve generating_curve(const std::vector<SledState>& states);

/// Every k-th sample of the curve (the last sample is always kept).
GeneratingCurve subsample(const GeneratingCurve& curve, std::size_t every);

/// Orbit of a generating curve under the helicoidal motion, on a structured
/// (curve sample, theta) grid: vertex (i, j) is
///   ((x_i + i y_i) e^{-i omega theta_j}, theta_j + C).
struct HelicoidalMesh {
    TriMesh mesh;
    std::vector<Vec3> normals;  // analytic unit normals, parallel to X_s x X_theta
    std::vector<double> s;      // per row
    std::vector<double> theta;  // per column
    std::size_t rows = 0;
    std::size_t cols = 0;
    SledParams params;
    double C = 0.0;

    std::size_t index(std::size_t row, std::size_t col) const { return row * cols + col; }
};

/// Sweeps the curve over theta in [0, 2 pi turns / |omega|] with
/// `theta_samples` columns. Throws DomainError on bad sizes and
/// DegenerateFace when consecutive curve samples coincide.
HelicoidalMesh sweep(const GeneratingCurve& curve, const SledParams& params, int theta_samples,
                     double turns, double C = 0.0);

/// Largest |n_analytic - n_faces| over interior grid vertices, where n_faces
/// is the normalised area-weighted sum of the incident face normals.
double max_normal_discrepancy(const HelicoidalMesh& mesh);

/// (Lambda, A) of the circular cylinder of radius R:
/// Lambda = -1/(R mu2(0)), A = -R/mu2(0). Throws DomainError when 0 is not in the domain.
std::pair<double, double> cylinder_params(const AnisotropyProfile& profile, double R);

}  // namespace camc
