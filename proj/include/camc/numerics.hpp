#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

namespace camc {

using ScalarFn = std::function<double(double)>;

/// Composite Gauss-Legendre quadrature (10 nodes per panel).
double gauss_legendre(const ScalarFn& f, double a, double b, int panels = 1);

/// Adaptive Gauss-Kronrod (7/15) quadrature to the requested relative tolerance.
double adaptive_quadrature(const ScalarFn& f, double a, double b, double rel_tol = 1e-12,
                           int max_depth = 50);

/// Bisection on a sign-changing bracket, terminating at interval width `x_tol`
/// or an exact zero. Requires f(lo) and f(hi) of opposite sign.
double bisect(const ScalarFn& f, double lo, double hi, double x_tol = 0.0);

/// Bisection down to adjacent doubles; returns the endpoint with the smaller
/// residual, so the root stays inside [lo, hi].
double polish_root(const ScalarFn& f, double lo, double hi);

/// All sign changes of f on the sample grid `xs`, each refined by polish_root.
std::vector<double> bracketed_roots(const ScalarFn& f, const std::vector<double>& xs);

/// Symmetric grid: 0, ±10^k for k spread log-uniformly over [lo_exp, hi_exp].
std::vector<double> symmetric_log_grid(double lo_exp, double hi_exp, int per_decade);

/// Uniform grid of n >= 2 points including both endpoints.
std::vector<double> linspace(double a, double b, std::size_t n);

/// Scalar field sampled on a uniform square grid, stored row-major with `x`
/// varying fastest. `period` marks a multivalued field whose values jump by
/// multiples of the period across a branch cut; differences are then taken
/// modulo the period.
struct Grid2D {
    std::size_t nx = 0;
    std::size_t ny = 0;
    double x0 = 0.0;
    double y0 = 0.0;
    double h = 0.0;
    std::vector<double> values;
    std::optional<double> period;

    Grid2D() = default;
    Grid2D(std::size_t nx_, std::size_t ny_, double x0_, double y0_, double h_);

    double x(std::size_t i) const { return x0 + static_cast<double>(i) * h; }
    double y(std::size_t j) const { return y0 + static_cast<double>(j) * h; }
    double& at(std::size_t i, std::size_t j) { return values[j * nx + i]; }
    double at(std::size_t i, std::size_t j) const { return values[j * nx + i]; }

    /// Value difference at(i2,j2) - at(i1,j1), wrapped when periodic.
    double diff(std::size_t i2, std::size_t j2, std::size_t i1, std::size_t j1) const;

    /// Square grid covering [-extent, extent]^2 with spacing h, sampling f.
    static Grid2D sample(double extent, double h, const std::function<double(double, double)>& f);
};

/// Residual grid paired with the mask of points where it was evaluated.
struct ResidualGrid {
    Grid2D grid;
    std::vector<unsigned char> mask;

    double max_abs() const;
    double max_abs_deviation(double target) const;
    std::size_t count() const;
};

/// Flux of a divergence-form operator as a function of the gradient.
using FluxFn = std::function<void(double gx, double gy, double& fx, double& fy)>;

/// Region selector on (x, y).
using RegionFn = std::function<bool(double x, double y)>;

/// Conservative second-order discretisation of Div0[flux(grad u)] - rhs.
/// Face gradients use a one-sided normal difference and the average of the
/// two adjacent centred tangential differences. Interior points selected by
/// `region` are evaluated; the rest are left unmasked.
ResidualGrid divergence_residual(const Grid2D& u, const FluxFn& flux, double rhs,
                                 const RegionFn& region);

}  // namespace camc
