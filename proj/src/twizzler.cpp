#include "camc/twizzler.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "camc/errors.hpp"
#include "camc/numerics.hpp"

namespace camc {

namespace {

using cplx = std::complex<double>;

constexpr double kMinSubstep = 1e-7;

// Quantities of the sled equation at one point.
struct SledTerms {
    double nu3;
    double G;      // sqrt(1 - nu3^2) / mu2(nu3)
    double Q;      // F_eta1 / (2 eta1)
    double F;
    double F1;
    double F2;
    double denom;  // turning denominator after cancelling eta1
};

SledTerms sled_terms(const SledParams& p, const AnisotropyProfile& profile, double eta1, double eta2) {
    SledTerms t{};
    const double root = std::sqrt(1.0 + p.omega * p.omega * eta1 * eta1);
    t.nu3 = p.omega * eta1 / root;
    const double c = 1.0 / root;  // sqrt(1 - nu3^2)
    const double inv_m2 = 1.0 / mu2(profile, t.nu3);
    const double inv_m1 = 1.0 / mu1(profile, t.nu3);
    t.G = c * inv_m2;
    t.Q = p.Lambda - eta2 * p.omega * p.omega * c * c * c * inv_m1;
    t.F = p.Lambda * (eta1 * eta1 + eta2 * eta2) + 2.0 * eta2 * t.G + p.A;
    t.F1 = 2.0 * eta1 * t.Q;
    t.F2 = 2.0 * (p.Lambda * eta2 + t.G);
    t.denom = p.Lambda * eta2 + t.G - t.Q * eta2;
    return t;
}

struct Deriv {
    double d1, d2, dphi;
    double denom;
};

Deriv sled_rhs(const SledParams& p, const AnisotropyProfile& profile, double eta1, double eta2) {
    const SledTerms t = sled_terms(p, profile, eta1, eta2);
    const double kappa = t.Q / t.denom;
    return {-1.0 - kappa * eta2, kappa * eta1, -kappa, t.denom};
}

void project(const SledParams& p, const AnisotropyProfile& profile, double& eta1, double& eta2) {
    for (int it = 0; it < 20; ++it) {
        const SledTerms t = sled_terms(p, profile, eta1, eta2);
        if (std::abs(t.F) < 1e-15) return;
        const double g2 = t.F1 * t.F1 + t.F2 * t.F2;
        if (g2 < 1e-28) return;  // stationary point of F
        const double step = t.F / g2;
        eta1 -= step * t.F1;
        eta2 -= step * t.F2;
    }
}

// One RK4 step; returns false when the turning denominator changes sign or
// vanishes at any stage.
bool rk4_step(const SledParams& p, const AnisotropyProfile& profile, const SledState& in, double h,
              SledState& out) {
    const Deriv k1 = sled_rhs(p, profile, in.eta1, in.eta2);
    const double sign0 = k1.denom;
    if (sign0 == 0.0 || !std::isfinite(sign0)) return false;
    const Deriv k2 = sled_rhs(p, profile, in.eta1 + 0.5 * h * k1.d1, in.eta2 + 0.5 * h * k1.d2);
    const Deriv k3 = sled_rhs(p, profile, in.eta1 + 0.5 * h * k2.d1, in.eta2 + 0.5 * h * k2.d2);
    const Deriv k4 = sled_rhs(p, profile, in.eta1 + h * k3.d1, in.eta2 + h * k3.d2);
    for (const Deriv* k : {&k2, &k3, &k4})
        if (!(k->denom * sign0 > 0.0)) return false;
    out.eta1 = in.eta1 + h / 6.0 * (k1.d1 + 2 * k2.d1 + 2 * k3.d1 + k4.d1);
    out.eta2 = in.eta2 + h / 6.0 * (k1.d2 + 2 * k2.d2 + 2 * k3.d2 + k4.d2);
    out.phi = in.phi + h / 6.0 * (k1.dphi + 2 * k2.dphi + 2 * k3.dphi + k4.dphi);
    out.s = in.s + h;
    project(p, profile, out.eta1, out.eta2);
    const Deriv end = sled_rhs(p, profile, out.eta1, out.eta2);
    if (!(end.denom * sign0 > 0.0)) return false;
    out.kappa = -end.dphi;
    return true;
}

// Advances by exactly h, halving sub-steps near singular turning.
SledState advance(const SledParams& p, const AnisotropyProfile& profile, const SledState& in, double h) {
    SledState cur = in;
    double remaining = h;
    double sub = h;
    while (remaining > 0.0) {
        sub = std::min(sub, remaining);
        SledState next;
        if (rk4_step(p, profile, cur, sub, next)) {
            cur = next;
            remaining -= sub;
            if (remaining < 1e-15 * h) remaining = 0.0;
        } else {
            sub *= 0.5;
            if (sub < kMinSubstep)
                throw SingularTurning("turning denominator vanishes near s = " + std::to_string(cur.s), cur.s);
        }
    }
    cur.s = in.s + h;
    return cur;
}

}  // namespace

SledParams::SledParams(double Lambda_, double A_, double omega_) : Lambda(Lambda_), A(A_), omega(omega_) {
    if (omega == 0.0) throw DomainError("helicoidal rate omega must be non-zero");
}

double sled_nu3(const SledParams& params, double eta1) {
    return params.omega * eta1 / std::sqrt(1.0 + params.omega * params.omega * eta1 * eta1);
}

double eq_H_residual(const SledParams& params, const AnisotropyProfile& profile, double eta1, double eta2) {
    const double root = std::sqrt(1.0 + params.omega * params.omega * eta1 * eta1);
    const double nu3 = params.omega * eta1 / root;
    return params.Lambda * (eta1 * eta1 + eta2 * eta2) + 2.0 * eta2 / (mu2(profile, nu3) * root) + params.A;
}

double solve_eta2(const SledParams& params, const AnisotropyProfile& profile, double eta1, Branch branch) {
    const double root = std::sqrt(1.0 + params.omega * params.omega * eta1 * eta1);
    const double G = 1.0 / (mu2(profile, params.omega * eta1 / root) * root);
    const double L = params.Lambda;
    const double c = L * eta1 * eta1 + params.A;

    double eta2 = 0.0;
    if (L == 0.0) {
        if (G == 0.0) throw DegenerateEquation("sled equation degenerates: Lambda = 0 and G = 0");
        eta2 = -c / (2.0 * G);
    } else {
        // L eta2^2 + 2 G eta2 + c = 0, reduced discriminant G^2 - L c.
        double disc = G * G - L * c;
        const double scale = std::max({G * G, std::abs(L * c), 1e-300});
        if (disc < 0.0) {
            if (disc < -1e-14 * scale)
                throw NoRealRoot("sled quadratic has negative discriminant " + std::to_string(disc) +
                                 " at eta1 = " + std::to_string(eta1));
            disc = 0.0;
        }
        const double sq = std::sqrt(disc);
        const double plus_root = (-G + sq) / L;
        const double minus_root = (-G - sq) / L;
        // Use the cancellation-free form for the root of smaller magnitude.
        const double qv = -(G + std::copysign(sq, G));
        const double big = qv / L;
        const double small = qv != 0.0 ? c / qv : big;
        auto closest = [&](double target) {
            return std::abs(big - target) < std::abs(small - target) ? big : small;
        };
        eta2 = branch == Branch::Plus ? closest(plus_root) : closest(minus_root);
    }

    // Newton polish in eta2 (F is quadratic in eta2).
    for (int it = 0; it < 4; ++it) {
        const double F = L * (eta1 * eta1 + eta2 * eta2) + 2.0 * eta2 * G + params.A;
        const double dF = 2.0 * (L * eta2 + G);
        if (F == 0.0 || dF == 0.0) break;
        const double next = eta2 - F / dF;
        const double Fn = L * (eta1 * eta1 + next * next) + 2.0 * next * G + params.A;
        if (std::abs(Fn) >= std::abs(F)) break;
        eta2 = next;
    }
    return eta2;
}

std::vector<Interval> discriminant_domain(const SledParams& params, const AnisotropyProfile& profile,
                                          int grid_points) {
    if (params.Lambda == 0.0) throw DomainError("discriminant_domain requires Lambda != 0");
    const double L = params.Lambda;
    const double LA = L * params.A;
    auto D = [&](double t) {
        const double nu3 = sled_nu3(params, t);
        if (!profile.contains(nu3)) return -std::numeric_limits<double>::infinity();
        const double g = std::sqrt(1.0 - nu3 * nu3) * profile.inv_mu2(nu3);
        return g * g - L * L * t * t - LA;
    };

    // (1 - nu3^2)/mu2^2 is maximal at nu3 = 0, so D < 0 beyond |t| = T.
    double peak = 0.0;
    if (profile.contains(0.0)) {
        const double i0 = profile.inv_mu2(0.0);
        peak = i0 * i0;
    } else {
        for (int k = 0; k <= 1000; ++k) {
            const double nu3 = profile.domain_lo() + (profile.domain_hi() - profile.domain_lo()) * k / 1000.0;
            if (!profile.contains(nu3)) continue;
            const double g = std::sqrt(1.0 - nu3 * nu3) * profile.inv_mu2(nu3);
            peak = std::max(peak, g * g);
        }
    }
    const double T = (1.05 * std::sqrt(std::max(0.0, peak - LA)) + 0.05 * std::sqrt(peak)) / std::abs(L) + 1e-9;

    const int n = std::max(grid_points | 1, 3);  // odd, so t = 0 is a node
    std::vector<double> ts(n);
    for (int k = 0; k < n; ++k) ts[k] = -T + 2.0 * T * k / (n - 1);
    ts[n / 2] = 0.0;

    constexpr double kEqTol = 1e-12;
    std::vector<Interval> out;
    std::vector<double> vals(n);
    for (int k = 0; k < n; ++k) vals[k] = D(ts[k]);

    auto edge = [&](double a, double b) {
        // Finite sign change between a (D < 0) and b (D >= 0), or vice versa.
        return polish_root(
            [&](double t) {
                const double v = D(t);
                return std::isfinite(v) ? v : -1.0;
            },
            a, b);
    };

    int k = 0;
    while (k < n) {
        if (vals[k] > kEqTol) {
            const double lo = k == 0 ? ts[0] : edge(ts[k - 1], ts[k]);
            int m = k;
            while (m + 1 < n && vals[m + 1] > kEqTol) ++m;
            const double hi = m + 1 < n ? edge(ts[m], ts[m + 1]) : ts[n - 1];
            out.push_back({lo, hi});
            k = m + 1;
        } else if (std::abs(vals[k]) <= kEqTol) {
            int m = k;
            while (m + 1 < n && std::abs(vals[m + 1]) <= kEqTol) ++m;
            out.push_back({ts[k], ts[m]});
            k = m + 1;
        } else {
            ++k;
        }
    }
    if (out.empty())
        throw EmptyDomain("no eta1 admits a real eta2 for Lambda = " + std::to_string(L) +
                          ", A = " + std::to_string(params.A));
    return out;
}

double sled_kappa(const SledParams& params, const AnisotropyProfile& profile, double eta1, double eta2) {
    const SledTerms t = sled_terms(params, profile, eta1, eta2);
    return t.Q / t.denom;
}

SledState sled_start(const SledParams& params, const AnisotropyProfile& profile, Branch branch) {
    SledState s;
    s.eta1 = 0.0;
    s.eta2 = solve_eta2(params, profile, 0.0, branch);
    s.kappa = sled_kappa(params, profile, s.eta1, s.eta2);
    return s;
}

std::vector<SledState> trace_sled(const SledParams& params, const AnisotropyProfile& profile,
                                  const SledState& start, double s_max, double step) {
    if (!(step > 0.0) || !(s_max >= 0.0)) throw DomainError("trace_sled needs step > 0 and s_max >= 0");
    const double F0 = eq_H_residual(params, profile, start.eta1, start.eta2);
    if (!(std::abs(F0) < 1e-10))
        throw DomainError("start state violates the sled equation (|F| = " + std::to_string(std::abs(F0)) + ")");
    const SledTerms t0 = sled_terms(params, profile, start.eta1, start.eta2);
    if (t0.denom == 0.0) throw SingularTurning("turning denominator vanishes at the start state", start.s);

    const auto n = static_cast<std::size_t>(std::llround(s_max / step));
    std::vector<SledState> out;
    out.reserve(n + 1);
    SledState cur = start;
    cur.kappa = t0.Q / t0.denom;
    out.push_back(cur);
    for (std::size_t k = 0; k < n; ++k) {
        SledState next = advance(params, profile, cur, step);
        next.s = start.s + static_cast<double>(k + 1) * step;
        out.push_back(next);
        cur = next;
    }
    return out;
}

std::optional<SledLoop> find_sled_period(const SledParams& params, const AnisotropyProfile& profile,
                                         const SledState& start, double step, double s_limit) {
    const Deriv v0 = sled_rhs(params, profile, start.eta1, start.eta2);
    const double speed = std::hypot(v0.d1, v0.d2);
    if (speed < 1e-12) return std::nullopt;  // stationary sled
    const double ux = v0.d1 / speed;
    const double uy = v0.d2 / speed;
    auto along = [&](const SledState& s) { return (s.eta1 - start.eta1) * ux + (s.eta2 - start.eta2) * uy; };
    auto dist = [&](const SledState& s) { return std::hypot(s.eta1 - start.eta1, s.eta2 - start.eta2); };

    SledState cur = start;
    cur.kappa = sled_kappa(params, profile, start.eta1, start.eta2);
    double max_dist = 0.0;
    bool went_behind = false;
    while (cur.s - start.s < s_limit) {
        const SledState next = advance(params, profile, cur, step);
        max_dist = std::max(max_dist, dist(next));
        if (along(next) < 0.0) went_behind = true;
        if (went_behind && along(cur) < 0.0 && along(next) >= 0.0 && dist(next) < 0.25 * max_dist) {
            // Locate the crossing of the start's normal line inside this step.
            const double tau = bisect(
                [&](double t) { return t == 0.0 ? along(cur) : along(advance(params, profile, cur, t)); }, 0.0,
                step, 1e-15);
            SledLoop loop;
            loop.end = tau > 0.0 ? advance(params, profile, cur, tau) : cur;
            loop.end.s = cur.s + tau;
            loop.period = loop.end.s - start.s;
            loop.closure_error = dist(loop.end);
            loop.turning = loop.end.phi - start.phi;
            return loop;
        }
        cur = next;
    }
    return std::nullopt;
}

GeneratingCurve generating_curve(const std::vector<SledState>& states) {
    if (states.empty()) throw DomainError("generating_curve needs at least one sled state");
    GeneratingCurve curve;
    curve.samples.reserve(states.size());
    for (std::size_t k = 0; k < states.size(); ++k) {
        const SledState& st = states[k];
        if (k > 0 && !(st.s > states[k - 1].s))
            throw DomainError("sled states must have strictly increasing arc length");
        const cplx pos = -cplx(st.eta1, st.eta2) * std::polar(1.0, st.phi);
        curve.samples.push_back({pos.real(), pos.imag(), st.s, st.phi});
    }
    return curve;
}

GeneratingCurve subsample(const GeneratingCurve& curve, std::size_t every) {
    if (every == 0) throw DomainError("subsample stride must be positive");
    GeneratingCurve out;
    const std::size_t n = curve.samples.size();
    for (std::size_t k = 0; k < n; k += every) out.samples.push_back(curve.samples[k]);
    if (n > 0 && (n - 1) % every != 0) out.samples.push_back(curve.samples.back());
    return out;
}

HelicoidalMesh sweep(const GeneratingCurve& curve, const SledParams& params, int theta_samples, double turns,
                     double C) {
    if (theta_samples < 3) throw DomainError("sweep needs theta_samples >= 3");
    if (!(turns > 0.0)) throw DomainError("sweep needs turns > 0");
    if (curve.samples.size() < 2) throw DomainError("sweep needs at least two curve samples");
    for (std::size_t k = 1; k < curve.samples.size(); ++k) {
        const CurvePoint& a = curve.samples[k - 1];
        const CurvePoint& b = curve.samples[k];
        if (std::hypot(b.x - a.x, b.y - a.y) < 1e-14)
            throw DegenerateFace("consecutive curve samples " + std::to_string(k - 1) + " and " +
                                 std::to_string(k) + " coincide");
    }

    HelicoidalMesh out;
    out.params = params;
    out.C = C;
    out.rows = curve.samples.size();
    out.cols = static_cast<std::size_t>(theta_samples);
    const double omega = params.omega;
    const double theta_max = 2.0 * std::numbers::pi * turns / std::abs(omega);
    out.theta.resize(out.cols);
    for (std::size_t j = 0; j < out.cols; ++j)
        out.theta[j] = theta_max * static_cast<double>(j) / static_cast<double>(out.cols - 1);

    out.mesh.vertices.resize(out.rows * out.cols);
    out.normals.resize(out.rows * out.cols);
    out.s.resize(out.rows);
    for (std::size_t i = 0; i < out.rows; ++i) {
        const CurvePoint& cp = curve.samples[i];
        out.s[i] = cp.s;
        const cplx pos(cp.x, cp.y);
        const cplx tangent = std::polar(1.0, cp.phi);
        const double eta1 = -(cp.x * tangent.real() + cp.y * tangent.imag());
        const double norm = std::sqrt(1.0 + omega * omega * eta1 * eta1);
        for (std::size_t j = 0; j < out.cols; ++j) {
            const cplx rot = std::polar(1.0, -omega * out.theta[j]);
            const cplx p = pos * rot;
            const cplx nh = -cplx(0.0, 1.0) * tangent * rot;
            out.mesh.vertices[out.index(i, j)] = Vec3(p.real(), p.imag(), out.theta[j] + C);
            out.normals[out.index(i, j)] = Vec3(nh.real(), nh.imag(), omega * eta1) / norm;
        }
    }

    out.mesh.faces.reserve(2 * (out.rows - 1) * (out.cols - 1));
    for (std::size_t i = 0; i + 1 < out.rows; ++i) {
        for (std::size_t j = 0; j + 1 < out.cols; ++j) {
            const int a = static_cast<int>(out.index(i, j));
            const int b = static_cast<int>(out.index(i, j + 1));
            const int c = static_cast<int>(out.index(i + 1, j + 1));
            const int d = static_cast<int>(out.index(i + 1, j));
            out.mesh.faces.push_back({a, d, c});
            out.mesh.faces.push_back({a, c, b});
        }
    }
    return out;
}

double max_normal_discrepancy(const HelicoidalMesh& mesh) {
    const std::vector<Vec3> discrete = vertex_normals(mesh.mesh);
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < mesh.rows; ++i)
        for (std::size_t j = 1; j + 1 < mesh.cols; ++j) {
            const std::size_t v = mesh.index(i, j);
            worst = std::max(worst, (discrete[v] - mesh.normals[v]).norm());
        }
    return worst;
}

std::pair<double, double> cylinder_params(const AnisotropyProfile& profile, double R) {
    if (!(R > 0.0)) throw DomainError("cylinder radius must be positive");
    if (!profile.contains(0.0)) throw DomainError("cylinder needs nu3 = 0 in the profile domain");
    const double m2 = mu2(profile, 0.0);
    return {-1.0 / (R * m2), -R / m2};
}

}  // namespace camc
