#include "camc/pnorm_dual.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>

#include "camc/errors.hpp"

namespace camc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double signed_pow(double v, double e) { return std::copysign(std::pow(std::abs(v), e), v); }

// d/da |(a, 1)|_b for a >= 0.
double vertical_partial(double b, double a) {
    const double ab = std::pow(a, b);
    return std::pow(a, b - 1.0) * std::pow(1.0 + ab, 1.0 / b - 1.0);
}

// Cumulative angular integral of k / N(theta)^2 over a fixed table, with
// cubic Hermite evaluation. Nodes include every multiple of pi/2 so kinks of
// non-smooth norms fall on nodes.
class AngularTable {
public:
    AngularTable(const PlanarNorm& norm, double k, int per_quarter) : norm_(norm), k_(k) {
        n_ = 4 * per_quarter;
        dt_ = kTwoPi / n_;
        values_.resize(n_ + 1);
        rates_.resize(n_ + 1);
        values_[0] = 0.0;
        for (int i = 0; i <= n_; ++i) rates_[i] = rate(i * dt_);
        for (int i = 0; i < n_; ++i)
            values_[i + 1] = values_[i] + gauss_legendre([&](double t) { return rate(t); }, i * dt_, (i + 1) * dt_);
    }

    double rate(double t) const {
        const double nv = norm_.value(std::cos(t), std::sin(t));
        return k_ / (nv * nv);
    }

    double period() const { return values_[n_]; }

    // theta in (-pi, pi] mapped to [0, 2 pi); the cut sits on the positive x-axis.
    double operator()(double theta) const {
        double t = std::fmod(theta, kTwoPi);
        if (t < 0) t += kTwoPi;
        int i = std::min(static_cast<int>(t / dt_), n_ - 1);
        const double u = (t - i * dt_) / dt_;
        const double u2 = u * u, u3 = u2 * u;
        return (2 * u3 - 3 * u2 + 1) * values_[i] + (u3 - 2 * u2 + u) * dt_ * rates_[i] +
               (-2 * u3 + 3 * u2) * values_[i + 1] + (u3 - u2) * dt_ * rates_[i + 1];
    }

private:
    PlanarNorm norm_;
    double k_;
    int n_ = 0;
    double dt_ = 0.0;
    std::vector<double> values_;
    std::vector<double> rates_;
};

// integral_0^theta (|cos|^p + |sin|^p)^(-2/p) for theta in [0, pi/4], via u = tan t.
double octant_integral(int p, double theta) {
    const double u = std::tan(theta);
    return gauss_legendre([p](double v) { return std::pow(1.0 + std::pow(v, p), -2.0 / p); }, 0.0, u, 4);
}

}  // namespace

PNormSpec PNormSpec::make(int p, double c) {
    if (p < 2 || p % 2 != 0) throw DomainError("p must be an even integer >= 2, got " + std::to_string(p));
    if (!(c > 0.0)) throw DomainError("catenoid constant c must be positive");
    PNormSpec s;
    s.p = p;
    s.q = static_cast<double>(p) / (p - 1);
    s.c = c;
    return s;
}

double pnorm2(double p, double x, double y) {
    const double ax = std::abs(x), ay = std::abs(y);
    const double m = std::max(ax, ay);
    if (m == 0.0) return 0.0;
    return m * std::pow(std::pow(ax / m, p) + std::pow(ay / m, p), 1.0 / p);
}

namespace {

// Slope at rho = k + delta, accurate for tiny delta.
double slope_at_offset(double b, double k, double delta) {
    const double l = std::log1p(delta / k);
    const double t = std::exp(-l / (b - 1.0));
    return t / std::pow(-std::expm1(-l * b / (b - 1.0)), 1.0 / b);
}

}  // namespace

double radial_catenoid_slope(double b, double k, double rho) {
    if (!(rho > k)) throw WaistError("rho = " + std::to_string(rho) + " is inside the catenoid waist");
    return slope_at_offset(b, k, rho - k);
}

double radial_catenoid_height(double b, double k, double rho) {
    if (rho < k) throw WaistError("rho = " + std::to_string(rho) + " is inside the catenoid waist");
    if (rho == k) return 0.0;
    const double m = b / (b - 1.0);
    const double t_max = std::pow(rho - k, 1.0 / m);
    return gauss_legendre([&](double t) { return slope_at_offset(b, k, std::pow(t, m)) * m * std::pow(t, m - 1.0); },
                          0.0, t_max, 16);
}

RadialCatenoid::RadialCatenoid(double b, double k, double rho_min, double rho_max, double spacing)
    : b_(b), k_(k), lo_(rho_min), spacing_(spacing) {
    if (!(rho_min > k) || !(rho_max > rho_min)) throw WaistError("catenoid table must lie outside the waist");
    const auto n = static_cast<std::size_t>(std::ceil((rho_max - rho_min) / spacing)) + 1;
    z_.resize(n);
    dz_.resize(n);
    z_[0] = radial_catenoid_height(b, k, rho_min);
    dz_[0] = slope(rho_min);
    for (std::size_t i = 1; i < n; ++i) {
        const double r0 = lo_ + spacing_ * static_cast<double>(i - 1);
        const double r1 = lo_ + spacing_ * static_cast<double>(i);
        z_[i] = z_[i - 1] + gauss_legendre([this](double r) { return slope(r); }, r0, r1);
        dz_[i] = slope(r1);
    }
}

double RadialCatenoid::height(double rho) const {
    const double pos = (rho - lo_) / spacing_;
    if (pos < 0.0 || pos > static_cast<double>(z_.size() - 1))
        throw DomainError("rho = " + std::to_string(rho) + " outside the catenoid table");
    const auto i = std::min(static_cast<std::size_t>(pos), z_.size() - 2);
    const double u = pos - static_cast<double>(i);
    const double u2 = u * u, u3 = u2 * u;
    return (2 * u3 - 3 * u2 + 1) * z_[i] + (u3 - 2 * u2 + u) * spacing_ * dz_[i] + (-2 * u3 + 3 * u2) * z_[i + 1] +
           (u3 - u2) * spacing_ * dz_[i + 1];
}

double catenoid_slope(const PNormSpec& spec, double omega) {
    const double u = std::pow(spec.c / omega, spec.p - 1);
    if (!(u < 1.0)) throw WaistError("omega = " + std::to_string(omega) + " is inside the catenoid waist");
    return u / std::pow(1.0 - std::pow(u, spec.q), 1.0 / spec.q);
}

double catenoid_height(const PNormSpec& spec, double omega) { return radial_catenoid_height(spec.q, spec.c, omega); }

RegionFn pnorm_annulus(double p, double a_min, double a_max, double axis_gap) {
    return [=](double x, double y) {
        const double w = pnorm2(p, x, y);
        if (std::abs(x) < axis_gap * w || std::abs(y) < axis_gap * w) return false;
        return w >= a_min && w <= a_max;
    };
}

ResidualGrid m_operator_residual(const PNormSpec& spec, const Grid2D& z, const RegionFn& region, bool dual) {
    const double e = dual ? static_cast<double>(spec.p) : spec.q;
    const FluxFn flux = [e](double gx, double gy, double& fx, double& fy) {
        const double scale = std::pow(1.0 + std::pow(std::abs(gx), e) + std::pow(std::abs(gy), e), (1.0 - e) / e);
        fx = scale * signed_pow(gx, e - 1.0);
        fy = scale * signed_pow(gy, e - 1.0);
    };
    return divergence_residual(z, flux, 0.0, region);
}

double superellipse_area(int p, double a) {
    if (!(a > 0.0)) throw DomainError("superellipse_area needs a > 0");
    const double pp = static_cast<double>(p);
    const double unit = adaptive_quadrature(
        [pp](double t) {
            return std::pow(std::pow(std::abs(std::cos(t)), pp) + std::pow(std::abs(std::sin(t)), pp), -2.0 / pp);
        },
        0.0, kTwoPi, 1e-13);
    return 0.5 * a * a * unit;
}

double conjugate_height(const PNormSpec& spec, double theta) {
    const double quarter = std::numbers::pi / 2.0;
    const double eighth = std::numbers::pi / 4.0;
    const double half_quarter = octant_integral(spec.p, eighth);
    const double Q = 2.0 * half_quarter;  // integral over one quadrant
    const double sign = theta < 0 ? -1.0 : 1.0;
    const double t = std::abs(theta);
    const double k = std::floor(t / quarter);
    const double rem = t - k * quarter;
    const double partial = rem <= eighth ? octant_integral(spec.p, rem) : Q - octant_integral(spec.p, quarter - rem);
    return sign * spec.c * (k * Q + partial);
}

ConjugatePair conjugate_helicoid(const PNormSpec& spec, double a_min, double a_max, int angular_samples,
                                 int radial_samples, double sector) {
    if (!(a_min > spec.c)) throw WaistError("annulus must lie outside the waist omega = c");
    if (!(a_max > a_min)) throw DomainError("annulus needs a_max > a_min");
    if (angular_samples < 2 || radial_samples < 2) throw DomainError("need at least two samples per direction");
    if (sector > kTwoPi + 1e-12)
        throw BranchCutError("sector exceeds one full turn; w is only single-valued on a slit annulus");

    ConjugatePair out;
    out.spec = spec;
    const std::vector<double> radii = linspace(a_min, a_max, static_cast<std::size_t>(radial_samples));
    for (double w : radii) out.catenoid.push_back({w, catenoid_height(spec, w), catenoid_slope(spec, w)});

    for (int j = 0; j < angular_samples; ++j) {
        const double theta = sector * j / angular_samples;
        const double height = conjugate_height(spec, theta);
        for (double w : radii) out.helicoid.push_back({w, theta, height});
    }
    out.period = conjugate_height(spec, kTwoPi);

    out.test_radii = {a_min, 0.5 * (a_min + a_max), a_max};
    for (double a : out.test_radii) {
        const double f = spec.c / (a * a);
        out.period_by_area.push_back(2.0 * f * superellipse_area(spec.p, a));
    }
    return out;
}

Grid2D catenoid_grid(const PNormSpec& spec, double extent, double h) {
    const double reach = std::sqrt(2.0) * extent + 1.0;
    const double lo = spec.c * 1.05;
    const RadialCatenoid table(spec.q, spec.c, lo, reach, 1e-4);
    return Grid2D::sample(extent, h, [&](double x, double y) {
        const double w = pnorm2(spec.p, x, y);
        return w < lo ? 0.0 : table.height(w);
    });
}

Grid2D conjugate_grid(const PNormSpec& spec, double extent, double h) {
    Grid2D g = Grid2D::sample(extent, h, [&](double x, double y) { return conjugate_height(spec, std::atan2(y, x)); });
    g.period = conjugate_height(spec, kTwoPi);
    return g;
}

PlanarNorm PlanarNorm::pnorm(double p) {
    if (!(p > 1.0)) throw DomainError("planar p-norm needs p > 1");
    PlanarNorm n;
    n.kind_ = Kind::P;
    n.p_ = p;
    return n;
}

PlanarNorm PlanarNorm::quadratic(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("quadratic norm needs positive weights");
    PlanarNorm n;
    n.kind_ = Kind::Quadratic;
    n.a_ = a;
    n.b_ = b;
    return n;
}

double PlanarNorm::value(double x, double y) const {
    if (kind_ == Kind::P) return pnorm2(p_, x, y);
    return std::sqrt(a_ * x * x + b_ * y * y);
}

void PlanarNorm::gradient(double x, double y, double& gx, double& gy) const {
    const double v = value(x, y);
    if (v == 0.0) {
        gx = gy = 0.0;
        return;
    }
    if (kind_ == Kind::P) {
        const double sx = std::abs(x) / v, sy = std::abs(y) / v;
        gx = std::copysign(std::pow(sx, p_ - 1.0), x);
        gy = std::copysign(std::pow(sy, p_ - 1.0), y);
        return;
    }
    gx = a_ * x / v;
    gy = b_ * y / v;
}

PlanarNorm PlanarNorm::dual() const {
    if (kind_ == Kind::P) return pnorm(p_ / (p_ - 1.0));
    return quadratic(1.0 / a_, 1.0 / b_);
}

std::string PlanarNorm::describe() const {
    char buf[96];
    if (kind_ == Kind::P)
        std::snprintf(buf, sizeof buf, "l%.17g", p_);
    else
        std::snprintf(buf, sizeof buf, "quadratic(%.17g,%.17g)", a_, b_);
    return buf;
}

double j_invariance_defect(const PlanarNorm& norm, int trials) {
    std::mt19937_64 rng(0x5eed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < trials; ++i) {
        const double x = dist(rng), y = dist(rng);
        worst = std::max(worst, std::abs(norm.value(-y, x) - norm.value(x, y)));
    }
    return worst;
}

DualPairReport dual_pair_check(const PlanarNorm& horizontal, const PlanarNorm& vertical, double k, double a_min,
                               double a_max, double h, double axis_gap) {
    if (!vertical.is_pnorm()) throw DomainError("vertical norm must be a planar p-norm");
    const PlanarNorm psi = horizontal;
    const PlanarNorm psi_star = horizontal.dual();
    const double defect = j_invariance_defect(psi_star);
    if (defect > 1e-12)
        throw HypothesisError("dual horizontal norm " + psi_star.describe() + " is not invariant under rotation by "
                              "pi/2 (defect " + std::to_string(defect) + ")");
    if (!(a_min > k)) throw WaistError("annulus must lie outside the waist Psi* = k");

    const double b = vertical.exponent();
    const double b_star = b / (b - 1.0);

    const RegionFn region = [&](double x, double y) {
        const double r = psi_star.value(x, y);
        if (std::abs(x) < axis_gap * r || std::abs(y) < axis_gap * r) return false;
        return r >= a_min && r <= a_max;
    };

    // Extent: the Psi*-ball of radius a_max fits inside the Euclidean disc of
    // radius a_max * max_theta 1/Psi*(cos, sin).
    double reach = 0.0;
    for (int i = 0; i < 720; ++i) {
        const double t = kTwoPi * i / 720;
        reach = std::max(reach, 1.0 / psi_star.value(std::cos(t), std::sin(t)));
    }
    const double extent = std::ceil((a_max * reach + 4 * h) / h) * h;

    // Catenoid w = W(Psi*) solving the Euler-Lagrange equation of ||nu||.
    double lo = std::max(k * 1.001, a_min - 0.5 * (a_min - k));
    const RadialCatenoid cat(b, k, lo, a_max * 2.0 + 1.0);
    const Grid2D w = Grid2D::sample(extent, h, [&](double x, double y) {
        const double r = psi_star.value(x, y);
        return r < lo ? 0.0 : cat.height(r);
    });
    const FluxFn eln = [&](double gx, double gy, double& fx, double& fy) {
        double nx = 0.0, ny = 0.0;
        psi.gradient(gx, gy, nx, ny);
        const double scale = vertical_partial(b, psi.value(gx, gy));
        fx = scale * nx;
        fy = scale * ny;
    };

    // Conjugate alpha with grad alpha = (k / Psi*^2)(-y, x).
    const AngularTable table(psi_star, k, 4096);
    Grid2D alpha = Grid2D::sample(extent, h, [&](double x, double y) { return table(std::atan2(y, x)); });
    alpha.period = table.period();
    const FluxFn eln3 = [&](double gx, double gy, double& fx, double& fy) {
        double nx = 0.0, ny = 0.0;
        psi_star.gradient(gx, gy, nx, ny);
        const double scale = vertical_partial(b_star, psi_star.value(gx, gy));
        fx = scale * nx;
        fy = scale * ny;
    };

    DualPairReport report;
    const ResidualGrid rc = divergence_residual(w, eln, 0.0, region);
    const ResidualGrid ra = divergence_residual(alpha, eln3, 0.0, region);
    report.catenoid_residual = rc.max_abs();
    report.conjugate_residual = ra.max_abs();
    report.points = rc.count();
    report.period_line = table.period();
    const double unit_area = 0.5 * adaptive_quadrature(
                                       [&](double t) {
                                           const double nv = psi_star.value(std::cos(t), std::sin(t));
                                           return 1.0 / (nv * nv);
                                       },
                                       0.0, kTwoPi, 1e-13);
    const double a = a_max;
    report.period_area = 2.0 * (k / (a * a)) * unit_area * a * a;
    return report;
}

}  // namespace camc
