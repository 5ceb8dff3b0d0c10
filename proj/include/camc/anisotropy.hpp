#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "camc/mesh.hpp"

namespace camc {

/// Axially symmetric anisotropic energy density gamma(nu3), where nu3 is the
/// vertical component of the unit normal.
///
/// Kinds:
///   Isotropic        gamma = 1
///   RapiniPapoular   gamma = 1 + e nu3^2
///   Dirichlet        gamma = (1/nu3 - nu3) / 2, defined for nu3 > 0; its
///                    critical graphs are harmonic and its Wulff shape is the
///                    paraboloid xi1^2 + xi2^2 = -2 xi3 (non-compact)
///   Polynomial       gamma = sum_k c_k nu3^k, differentiated exactly
///
/// Instances are immutable after construction.
class AnisotropyProfile {
public:
    enum class Kind { Isotropic, RapiniPapoular, Dirichlet, Polynomial };

    static AnisotropyProfile isotropic();
    static AnisotropyProfile rapini_papoular(double e);
    static AnisotropyProfile dirichlet();
    static AnisotropyProfile polynomial(std::vector<double> coeffs);

    /// Parses `isotropic`, `rapini:e=<real>`, `dirichlet` or `poly:c0,c1,...`.
    /// Throws UsageError on malformed input.
    static AnisotropyProfile parse(const std::string& text);

    /// Copy restricted to the closed interval [lo, hi] (must lie inside the
    /// current domain).
    AnisotropyProfile restricted(double lo, double hi) const;

    Kind kind() const { return kind_; }
    double e() const { return e_; }
    const std::vector<double>& coeffs() const { return coeffs_; }
    double domain_lo() const { return lo_; }
    double domain_hi() const { return hi_; }
    bool lower_open() const { return lo_open_; }
    bool contains(double nu3) const;
    /// The Wulff shape of the Dirichlet density is unbounded.
    bool non_compact_wulff() const { return kind_ == Kind::Dirichlet; }

    /// Canonical text form, accepted back by parse().
    std::string describe() const;

    /// d^order gamma / d nu3^order for order in 0..3. Throws DomainError.
    double gamma(double nu3, int order = 0) const;

    /// 1/mu2 = gamma - nu3 gamma' (no convexity check).
    double inv_mu2(double nu3) const;
    /// 1/mu1 = (1 - nu3^2) gamma'' + 1/mu2 (no convexity check).
    double inv_mu1(double nu3) const;
    /// d(1/mu2)/d nu3 = -nu3 gamma''.
    double inv_mu2_derivative(double nu3) const;

private:
    AnisotropyProfile(Kind kind, double e, std::vector<double> coeffs, double lo, double hi,
                      bool lo_open);

    Kind kind_;
    double e_ = 0.0;
    std::vector<double> coeffs_;
    double lo_ = -1.0;
    double hi_ = 1.0;
    bool lo_open_ = false;
};

/// gamma and its derivatives; see AnisotropyProfile::gamma.
double gamma_eval(const AnisotropyProfile& profile, double nu3, int order);

/// Principal curvature mu2 of the Wulff shape (inward normal). Throws
/// ConvexityError when gamma - nu3 gamma' <= 0.
double mu2(const AnisotropyProfile& profile, double nu3);

/// Principal curvature mu1 of the Wulff shape. Throws ConvexityError when
/// (1 - nu3^2) gamma'' + 1/mu2 <= 0.
double mu1(const AnisotropyProfile& profile, double nu3);

struct ConvexityReport {
    double min_inv_mu1 = 0.0;
    double argmin_inv_mu1 = 0.0;
    double min_inv_mu2 = 0.0;
    double argmin_inv_mu2 = 0.0;
    bool non_compact_wulff = false;
    bool pass = false;
};

/// Minima of 1/mu1 and 1/mu2 on a uniform grid over the profile domain.
ConvexityReport convexity_check(const AnisotropyProfile& profile, int samples = 1001);

struct WulffSample {
    double nu3 = 0.0;
    double azimuth = 0.0;
    Eigen::Vector3d point = Eigen::Vector3d::Zero();
};

/// Normal with vertical component nu3 and azimuth alpha.
Eigen::Vector3d unit_normal(double nu3, double azimuth);

/// Cahn-Hoffman image of the normal: xi = (1/mu2) nu + gamma'(nu3) E3.
WulffSample wulff_point(const AnisotropyProfile& profile, double nu3, double azimuth);

struct WulffMesh {
    TriMesh mesh;
    std::vector<WulffSample> samples;  // one per mesh vertex
};

/// Regular (nu3, azimuth) grid over the profile domain with fan caps at the
/// poles nu3 = +-1 when they belong to the domain. Faces are oriented so
/// that their normals point outward.
WulffMesh wulff_mesh(const AnisotropyProfile& profile, int nu3_samples, int azimuth_samples);

/// gamma''' - (4/lambda^2) nu3 (1 - nu3^2) gamma''. Vanishes identically iff
/// the Cahn-Hoffman map of the helicoid with pitch lambda is harmonic.
double harmonicity_residual(const AnisotropyProfile& profile, double lambda, double nu3);

}  // namespace camc
