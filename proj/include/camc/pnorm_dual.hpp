#pragma once

#include <string>
#include <vector>

#include "camc/numerics.hpp"

namespace camc {

/// Wulff shape W_p = {|xi1|^p + |xi2|^p + |xi3|^p = 1} for even p, with the
/// conjugate exponent q (1/p + 1/q = 1) and catenoid constant c.
struct PNormSpec {
    int p = 2;
    double q = 2.0;
    double c = 1.0;

    /// Throws DomainError unless p is even, p >= 2 and c > 0.
    static PNormSpec make(int p, double c);
};

/// (|x|^p + |y|^p)^(1/p).
double pnorm2(double p, double x, double y);

/// Slope z_omega = u / (1 - u^q)^(1/q), u = (c/omega)^(p-1), of the
/// anisotropic catenoid solving M_p[z] = 0. Throws WaistError when u >= 1.
double catenoid_slope(const PNormSpec& spec, double omega);

/// Height of the catenoid above its waist omega = c. For p = 2 this equals
/// c arccosh(omega/c).
double catenoid_height(const PNormSpec& spec, double omega);

/// Slope of the radial catenoid for a vertical p-norm with exponent b:
/// t = slope / (1 + slope^b)^(1/b) with t = (k/rho)^(1/(b-1)). The waist is
/// rho = k. Throws WaistError for rho <= k.
double radial_catenoid_slope(double b, double k, double rho);

/// Height above the waist, integrated with the substitution
/// rho = k + t^(b/(b-1)), which removes the waist singularity.
double radial_catenoid_height(double b, double k, double rho);

/// Radial catenoid tabulated on [rho_min, rho_max] and evaluated by cubic
/// Hermite interpolation with exact slopes.
class RadialCatenoid {
public:
    RadialCatenoid(double b, double k, double rho_min, double rho_max, double spacing = 1e-3);

    double slope(double rho) const { return radial_catenoid_slope(b_, k_, rho); }
    /// Throws DomainError outside [rho_min, rho_max].
    double height(double rho) const;
    double waist() const { return k_; }

private:
    double b_;
    double k_;
    double lo_;
    double spacing_;
    std::vector<double> z_;
    std::vector<double> dz_;
};

/// Region selector for a_min <= omega <= a_max, omega = (|x|^p + |y|^p)^(1/p),
/// that also drops the wedges |x| < axis_gap * omega and |y| < axis_gap * omega
/// around the coordinate axes.
RegionFn pnorm_annulus(double p, double a_min, double a_max, double axis_gap = 0.0);

/// Centred-difference Div0[(1 + |z_x|^e + |z_y|^e)^((1-e)/e) (z_x|z_x|^(e-2), z_y|z_y|^(e-2))]
/// with e = q (the M_p operator) or, with `dual`, e = p (the M_q operator).
ResidualGrid m_operator_residual(const PNormSpec& spec, const Grid2D& z, const RegionFn& region,
                                 bool dual = false);

/// Area of {|x|^p + |y|^p <= a^p} from the boundary integral
/// (a^2 / 2) * integral of (|cos t|^p + |sin t|^p)^(-2/p) over [0, 2 pi].
double superellipse_area(int p, double a);

/// Multivalued conjugate w with grad w = (c / omega^2)(-y, x), integrated
/// along angular arcs from the cut theta = 0 (w(0) = 0).
double conjugate_height(const PNormSpec& spec, double theta);

struct CatenoidSample {
    double omega = 0.0;
    double z = 0.0;
    double z_omega = 0.0;
};

struct HelicoidSample {
    double omega = 0.0;
    double theta = 0.0;
    double w = 0.0;
};

struct ConjugatePair {
    PNormSpec spec;
    std::vector<CatenoidSample> catenoid;
    std::vector<HelicoidSample> helicoid;  // slit annulus, theta in [0, sector)
    double period = 0.0;                   // jump of w over one full turn
    std::vector<double> test_radii;
    std::vector<double> period_by_area;  // 2 f(a) Area(omega <= a) at each test radius
};

/// Samples the catenoid and its conjugate over the annulus a_min <= omega <= a_max.
/// Throws WaistError when a_min is not beyond the waist and BranchCutError when
/// the requested sector exceeds one full turn.
ConjugatePair conjugate_helicoid(const PNormSpec& spec, double a_min, double a_max, int angular_samples,
                                 int radial_samples = 16, double sector = 6.283185307179586);

/// Cartesian samples of the catenoid z(omega) on [-extent, extent]^2 (zero
/// inside the waist; exclude with the region).
Grid2D catenoid_grid(const PNormSpec& spec, double extent, double h);

/// Cartesian samples of the conjugate w with its period recorded.
Grid2D conjugate_grid(const PNormSpec& spec, double extent, double h);

/// A norm on the plane: a p-norm (p > 1) or sqrt(a x^2 + b y^2).
class PlanarNorm {
public:
    static PlanarNorm pnorm(double p);
    static PlanarNorm quadratic(double a, double b);

    double value(double x, double y) const;
    void gradient(double x, double y, double& gx, double& gy) const;
    PlanarNorm dual() const;
    bool is_pnorm() const { return kind_ == Kind::P; }
    double exponent() const { return p_; }
    std::string describe() const;

private:
    enum class Kind { P, Quadratic };
    Kind kind_ = Kind::P;
    double p_ = 2.0;
    double a_ = 1.0;
    double b_ = 1.0;
};

/// Largest |N(Jv) - N(v)| over `trials` random vectors with J(x, y) = (-y, x).
double j_invariance_defect(const PlanarNorm& norm, int trials = 1000);

struct DualPairReport {
    double catenoid_residual = 0.0;   // max Euler-Lagrange residual on w(Psi*)
    double conjugate_residual = 0.0;  // max dual-equation residual on alpha
    double period_line = 0.0;         // jump of alpha over one turn
    double period_area = 0.0;         // 2 g(a) Area(Psi* <= a)
    std::size_t points = 0;
};

/// Duality check for ||(a, b, c)|| = |(|(a, b)|_H, c)|_V with a planar p-norm
/// V. The catenoid w = w(Psi*(x, y)) solves the Euler-Lagrange equation of
/// the integral of ||nu||, and its conjugate alpha (grad alpha = (k/Psi*^2)(-y, x))
/// is checked against the dual equation. Throws HypothesisError when the dual
/// of H fails the J-invariance test (tolerance 1e-12). `axis_gap` removes
/// wedges around the axes as in pnorm_annulus, measured in Psi*.
DualPairReport dual_pair_check(const PlanarNorm& horizontal, const PlanarNorm& vertical, double k,
                               double a_min, double a_max, double h, double axis_gap = 0.0);

}  // namespace camc
