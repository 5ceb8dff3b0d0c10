#pragma once

#include <vector>

#include "camc/anisotropy.hpp"
#include "camc/numerics.hpp"
#include "camc/twizzler.hpp"

namespace camc {

struct GraphSample {
    double r = 0.0;
    double g = 0.0;
    double g_r = 0.0;
};

/// Radial profile of a helicoidal graph z = g(r) + lambda theta solving
///   nu3 r g_r / mu2(nu3) - Lambda r^2 / 2 = C,  nu3 = (1 + g_r^2 + lambda^2/r^2)^(-1/2).
struct GraphProfile {
    double lambda = 0.0;
    double Lambda = 0.0;
    double C = 0.0;
    std::vector<GraphSample> samples;  // strictly increasing r

    /// Cubic Hermite interpolation of g using the stored slopes. Throws
    /// DomainError outside [r_front, r_back].
    double height(double r) const;
};

/// nu3 r g_r / mu2(nu3) - Lambda r^2/2 - C. DomainError propagates from the profile.
double first_integral_residual(const AnisotropyProfile& profile, double lambda, double Lambda, double C,
                               double r, double g_r);

/// All real roots g_r of the first integral found by sign changes on a
/// symmetric log-spaced grid over [-1e6, 1e6], sorted ascending.
/// Throws NoRoot when none is found.
std::vector<double> solve_g_r(const AnisotropyProfile& profile, double lambda, double Lambda, double C, double r);

/// Quadrature of the chosen g_r branch on a uniform r grid, g(r_min) = 0.
/// The branch is continued by nearest-root selection; each interval uses
/// Simpson's rule with the root at its midpoint. Throws BranchLost.
GraphProfile integrate_profile(const AnisotropyProfile& profile, double lambda, double Lambda, double C,
                               double r_min, double r_max, double step, int root_index = 0);

/// Annulus a <= sqrt(x^2 + y^2) <= b.
RegionFn annulus(double a, double b);

/// Div0[(nu3/mu2)(z_x, z_y)] - Lambda at interior grid points inside `region`.
ResidualGrid elgraph_residual(const AnisotropyProfile& profile, const Grid2D& z, double Lambda,
                              const RegionFn& region);

/// z = lambda atan2(y, x) on [-extent, extent]^2 with period 2 pi |lambda|.
Grid2D helicoid_grid(double lambda, double extent, double h);

/// z = g(r) + lambda theta on [-extent, extent]^2; points outside the
/// profile's r range are set to zero and must be excluded by the region.
Grid2D helicoidal_graph_grid(const GraphProfile& profile, double extent, double h);

/// Graph representation of a traced sled segment on which omega eta1 > 0:
/// r = |x + i y|, g = arg(x + i y)/omega, r g_r = -eta2/(omega eta1),
/// lambda = -1/omega and C = A/2. Samples are returned in increasing r.
/// Throws DomainError if the segment changes sign of omega eta1 or r is not
/// monotone along it.
GraphProfile graph_profile_from_sled(const std::vector<SledState>& states, const SledParams& params);

}  // namespace camc
