#include "camc/helicoid_graph.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "camc/errors.hpp"

namespace camc {

namespace {

const std::vector<double>& slope_grid() {
    static const std::vector<double> grid = symmetric_log_grid(-8.0, 6.0, 40);
    return grid;
}

}  // namespace

double GraphProfile::height(double r) const {
    if (samples.size() < 2 || r < samples.front().r || r > samples.back().r)
        throw DomainError("graph profile evaluated outside its radial range at r = " + std::to_string(r));
    auto it = std::upper_bound(samples.begin(), samples.end(), r,
                               [](double v, const GraphSample& s) { return v < s.r; });
    if (it == samples.end()) --it;
    const GraphSample& b = *it;
    const GraphSample& a = *(it - 1);
    const double h = b.r - a.r;
    const double t = (r - a.r) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * a.g + (t3 - 2 * t2 + t) * h * a.g_r + (-2 * t3 + 3 * t2) * b.g +
           (t3 - t2) * h * b.g_r;
}

double first_integral_residual(const AnisotropyProfile& profile, double lambda, double Lambda, double C,
                               double r, double g_r) {
    if (!(r > 0.0)) throw DomainError("first integral needs r > 0");
    const double nu3 = 1.0 / std::sqrt(1.0 + g_r * g_r + lambda * lambda / (r * r));
    return nu3 * r * g_r * profile.inv_mu2(nu3) - 0.5 * Lambda * r * r - C;
}

std::vector<double> solve_g_r(const AnisotropyProfile& profile, double lambda, double Lambda, double C, double r) {
    if (!(r > 0.0)) throw DomainError("solve_g_r needs r > 0");
    auto f = [&](double g_r) { return first_integral_residual(profile, lambda, Lambda, C, r, g_r); };
    std::vector<double> roots = bracketed_roots(f, slope_grid());
    if (roots.empty())
        throw NoRoot("no root g_r of the first integral in [-1e6, 1e6] at r = " + std::to_string(r));
    return roots;
}

GraphProfile integrate_profile(const AnisotropyProfile& profile, double lambda, double Lambda, double C,
                               double r_min, double r_max, double step, int root_index) {
    if (!(r_min > 0.0) || !(r_max > r_min) || !(step > 0.0))
        throw DomainError("integrate_profile needs 0 < r_min < r_max and step > 0");
    const auto n = static_cast<std::size_t>(std::ceil((r_max - r_min) / step - 1e-9));
    const double dr = (r_max - r_min) / static_cast<double>(n);

    GraphProfile out;
    out.lambda = lambda;
    out.Lambda = Lambda;
    out.C = C;

    std::vector<double> roots0 = solve_g_r(profile, lambda, Lambda, C, r_min);
    if (root_index < 0 || static_cast<std::size_t>(root_index) >= roots0.size())
        throw DomainError("root_index " + std::to_string(root_index) + " out of range: " +
                          std::to_string(roots0.size()) + " roots at r_min");
    double prev = roots0[static_cast<std::size_t>(root_index)];
    double prev_slope = 0.0;  // d g_r / dr estimate for prediction
    out.samples.push_back({r_min, 0.0, prev});

    auto track = [&](double r, double predicted, double last_r) {
        const double window = 0.25 * (1.0 + std::abs(predicted));
        auto f = [&](double g_r) { return first_integral_residual(profile, lambda, Lambda, C, r, g_r); };
        std::vector<double> roots = bracketed_roots(f, linspace(predicted - window, predicted + window, 17));
        if (roots.empty()) {
            try {
                roots = solve_g_r(profile, lambda, Lambda, C, r);
            } catch (const NoRoot&) {
                throw BranchLost("root branch disappeared at r = " + std::to_string(r), last_r);
            }
        }
        const double best = *std::min_element(roots.begin(), roots.end(), [&](double a, double b) {
            return std::abs(a - predicted) < std::abs(b - predicted);
        });
        if (std::abs(best - predicted) > window)
            throw BranchLost("tracked root jumped at r = " + std::to_string(r), last_r);
        return best;
    };

    double g = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
        const double r0 = r_min + dr * static_cast<double>(k - 1);
        const double r1 = k == n ? r_max : r_min + dr * static_cast<double>(k);
        const double h = r1 - r0;
        const double mid = track(0.5 * (r0 + r1), prev + prev_slope * 0.5 * h, r0);
        const double end = track(r1, prev + prev_slope * h, r0);
        g += h / 6.0 * (prev + 4.0 * mid + end);
        prev_slope = (end - prev) / h;
        prev = end;
        out.samples.push_back({r1, g, end});
    }
    return out;
}

RegionFn annulus(double a, double b) {
    return [a, b](double x, double y) {
        const double r = std::hypot(x, y);
        return r >= a && r <= b;
    };
}

ResidualGrid elgraph_residual(const AnisotropyProfile& profile, const Grid2D& z, double Lambda,
                              const RegionFn& region) {
    const FluxFn flux = [&profile](double gx, double gy, double& fx, double& fy) {
        const double nu3 = 1.0 / std::sqrt(1.0 + gx * gx + gy * gy);
        const double w = nu3 * profile.inv_mu2(nu3);
        fx = w * gx;
        fy = w * gy;
    };
    return divergence_residual(z, flux, Lambda, region);
}

Grid2D helicoid_grid(double lambda, double extent, double h) {
    Grid2D g = Grid2D::sample(extent, h, [lambda](double x, double y) { return lambda * std::atan2(y, x); });
    if (lambda != 0.0) g.period = 2.0 * std::numbers::pi * std::abs(lambda);
    return g;
}

Grid2D helicoidal_graph_grid(const GraphProfile& profile, double extent, double h) {
    const double r_lo = profile.samples.front().r;
    const double r_hi = profile.samples.back().r;
    Grid2D g = Grid2D::sample(extent, h, [&](double x, double y) {
        const double r = std::hypot(x, y);
        if (r < r_lo || r > r_hi) return 0.0;
        return profile.height(r) + profile.lambda * std::atan2(y, x);
    });
    if (profile.lambda != 0.0) g.period = 2.0 * std::numbers::pi * std::abs(profile.lambda);
    return g;
}

GraphProfile graph_profile_from_sled(const std::vector<SledState>& states, const SledParams& params) {
    if (states.size() < 2) throw DomainError("graph_profile_from_sled needs at least two states");
    const double omega = params.omega;
    GraphProfile out;
    out.lambda = params.pitch();
    out.Lambda = params.Lambda;
    out.C = 0.5 * params.A;

    double unwrapped = 0.0;
    double last_arg = 0.0;
    for (std::size_t k = 0; k < states.size(); ++k) {
        const SledState& st = states[k];
        if (!(omega * st.eta1 > 0.0))
            throw DomainError("sled segment leaves the region omega * eta1 > 0 at s = " + std::to_string(st.s));
        const std::complex<double> pos = -std::complex<double>(st.eta1, st.eta2) * std::polar(1.0, st.phi);
        const double arg = std::arg(pos);
        if (k == 0) {
            unwrapped = arg;
        } else {
            double d = arg - last_arg;
            d -= 2.0 * std::numbers::pi * std::round(d / (2.0 * std::numbers::pi));
            unwrapped += d;
        }
        last_arg = arg;
        const double r = std::abs(pos);
        out.samples.push_back({r, unwrapped / omega, -st.eta2 / (omega * st.eta1 * r)});
    }
    if (out.samples.front().r > out.samples.back().r) std::reverse(out.samples.begin(), out.samples.end());
    for (std::size_t k = 1; k < out.samples.size(); ++k)
        if (!(out.samples[k].r > out.samples[k - 1].r))
            throw DomainError("radius is not monotone along the sled segment");
    return out;
}

}  // namespace camc
