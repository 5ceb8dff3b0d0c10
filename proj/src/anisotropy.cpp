#include "camc/anisotropy.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "camc/errors.hpp"

namespace camc {

namespace {

std::string fmt_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_real(const std::string& s, const std::string& context) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw UsageError("invalid number '" + s + "' in profile '" + context + "'");
    }
    if (used != s.size() || !std::isfinite(v))
        throw UsageError("invalid number '" + s + "' in profile '" + context + "'");
    return v;
}

// n!/(n-k)!
double falling_factorial(int n, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= static_cast<double>(n - i);
    return r;
}

}  // namespace

AnisotropyProfile::AnisotropyProfile(Kind kind, double e, std::vector<double> coeffs, double lo,
                                     double hi, bool lo_open)
    : kind_(kind), e_(e), coeffs_(std::move(coeffs)), lo_(lo), hi_(hi), lo_open_(lo_open) {}

AnisotropyProfile AnisotropyProfile::isotropic() {
    return AnisotropyProfile(Kind::Isotropic, 0.0, {}, -1.0, 1.0, false);
}

AnisotropyProfile AnisotropyProfile::rapini_papoular(double e) {
    return AnisotropyProfile(Kind::RapiniPapoular, e, {}, -1.0, 1.0, false);
}

AnisotropyProfile AnisotropyProfile::dirichlet() {
    return AnisotropyProfile(Kind::Dirichlet, 0.0, {}, 0.0, 1.0, true);
}

AnisotropyProfile AnisotropyProfile::polynomial(std::vector<double> coeffs) {
    if (coeffs.empty()) throw UsageError("polynomial profile needs at least one coefficient");
    return AnisotropyProfile(Kind::Polynomial, 0.0, std::move(coeffs), -1.0, 1.0, false);
}

AnisotropyProfile AnisotropyProfile::parse(const std::string& text) {
    if (text == "isotropic") return isotropic();
    if (text == "dirichlet") return dirichlet();
    if (text.rfind("rapini:e=", 0) == 0) return rapini_papoular(parse_real(text.substr(9), text));
    if (text.rfind("poly:", 0) == 0) {
        std::vector<double> coeffs;
        std::stringstream ss(text.substr(5));
        std::string item;
        while (std::getline(ss, item, ',')) coeffs.push_back(parse_real(item, text));
        if (coeffs.empty()) throw UsageError("empty coefficient list in profile '" + text + "'");
        return polynomial(std::move(coeffs));
    }
    throw UsageError("unknown profile '" + text +
                     "' (expected isotropic, rapini:e=<real>, dirichlet or poly:c0,c1,...)");
}

AnisotropyProfile AnisotropyProfile::restricted(double lo, double hi) const {
    const bool lo_ok = lo_open_ ? lo > lo_ : lo >= lo_;
    if (!(lo < hi) || !lo_ok || hi > hi_)
        throw DomainError("restricted domain [" + fmt_real(lo) + ", " + fmt_real(hi) +
                          "] is not inside the profile domain");
    AnisotropyProfile out = *this;
    out.lo_ = lo;
    out.hi_ = hi;
    out.lo_open_ = false;
    return out;
}

bool AnisotropyProfile::contains(double nu3) const {
    if (!(nu3 <= hi_)) return false;
    return lo_open_ ? nu3 > lo_ : nu3 >= lo_;
}

std::string AnisotropyProfile::describe() const {
    switch (kind_) {
        case Kind::Isotropic: return "isotropic";
        case Kind::RapiniPapoular: return "rapini:e=" + fmt_real(e_);
        case Kind::Dirichlet: return "dirichlet";
        case Kind::Polynomial: {
            std::string s = "poly:";
            for (std::size_t k = 0; k < coeffs_.size(); ++k) s += (k ? "," : "") + fmt_real(coeffs_[k]);
            return s;
        }
    }
    return "unknown";
}

double AnisotropyProfile::gamma(double nu3, int order) const {
    if (order < 0 || order > 3) throw DomainError("derivative order must be in 0..3");
    if (kind_ == Kind::Dirichlet && !(nu3 > 0.0))
        throw DomainError("Dirichlet density requires nu3 > 0, got " + fmt_real(nu3));
    if (!contains(nu3))
        throw DomainError("nu3 = " + fmt_real(nu3) + " outside profile domain of " + describe());

    switch (kind_) {
        case Kind::Isotropic: return order == 0 ? 1.0 : 0.0;
        case Kind::RapiniPapoular:
            switch (order) {
                case 0: return 1.0 + e_ * nu3 * nu3;
                case 1: return 2.0 * e_ * nu3;
                case 2: return 2.0 * e_;
                default: return 0.0;
            }
        case Kind::Dirichlet: {
            const double n2 = nu3 * nu3;
            switch (order) {
                case 0: return 0.5 * (1.0 / nu3 - nu3);
                case 1: return -0.5 * (1.0 / n2 + 1.0);
                case 2: return 1.0 / (n2 * nu3);
                default: return -3.0 / (n2 * n2);
            }
        }
        case Kind::Polynomial: {
            // Horner on the differentiated coefficients.
            double acc = 0.0;
            const int degree = static_cast<int>(coeffs_.size()) - 1;
            for (int k = degree; k >= order; --k)
                acc = acc * nu3 + coeffs_[k] * falling_factorial(k, order);
            return acc;
        }
    }
    return 0.0;
}

double AnisotropyProfile::inv_mu2(double nu3) const { return gamma(nu3, 0) - nu3 * gamma(nu3, 1); }

double AnisotropyProfile::inv_mu1(double nu3) const {
    return (1.0 - nu3 * nu3) * gamma(nu3, 2) + inv_mu2(nu3);
}

double AnisotropyProfile::inv_mu2_derivative(double nu3) const { return -nu3 * gamma(nu3, 2); }

double gamma_eval(const AnisotropyProfile& profile, double nu3, int order) {
    return profile.gamma(nu3, order);
}

double mu2(const AnisotropyProfile& profile, double nu3) {
    const double inv = profile.inv_mu2(nu3);
    if (!(inv > 0.0))
        throw ConvexityError("gamma - nu3 gamma' = " + fmt_real(inv) + " <= 0 at nu3 = " + fmt_real(nu3) +
                             " for " + profile.describe());
    return 1.0 / inv;
}

double mu1(const AnisotropyProfile& profile, double nu3) {
    const double inv = profile.inv_mu1(nu3);
    if (!(inv > 0.0))
        throw ConvexityError("(1 - nu3^2) gamma'' + 1/mu2 = " + fmt_real(inv) + " <= 0 at nu3 = " +
                             fmt_real(nu3) + " for " + profile.describe());
    return 1.0 / inv;
}

ConvexityReport convexity_check(const AnisotropyProfile& profile, int samples) {
    if (samples < 2) throw DomainError("convexity_check needs at least 2 samples");
    ConvexityReport report;
    report.non_compact_wulff = profile.non_compact_wulff();
    report.min_inv_mu1 = std::numeric_limits<double>::infinity();
    report.min_inv_mu2 = std::numeric_limits<double>::infinity();
    const double lo = profile.domain_lo();
    const double hi = profile.domain_hi();
    // An open lower end is approached but never sampled.
    const int first = profile.lower_open() ? 1 : 0;
    const int intervals = profile.lower_open() ? samples : samples - 1;
    for (int k = first; k <= intervals; ++k) {
        const double nu3 = k == intervals ? hi : lo + (hi - lo) * k / intervals;
        const double i1 = profile.inv_mu1(nu3);
        const double i2 = profile.inv_mu2(nu3);
        if (i1 < report.min_inv_mu1) {
            report.min_inv_mu1 = i1;
            report.argmin_inv_mu1 = nu3;
        }
        if (i2 < report.min_inv_mu2) {
            report.min_inv_mu2 = i2;
            report.argmin_inv_mu2 = nu3;
        }
    }
    report.pass = report.min_inv_mu1 > 0.0 && report.min_inv_mu2 > 0.0;
    return report;
}

Eigen::Vector3d unit_normal(double nu3, double azimuth) {
    const double rho = std::sqrt(std::max(0.0, 1.0 - nu3 * nu3));
    return {rho * std::cos(azimuth), rho * std::sin(azimuth), nu3};
}

WulffSample wulff_point(const AnisotropyProfile& profile, double nu3, double azimuth) {
    WulffSample s;
    s.nu3 = nu3;
    s.azimuth = azimuth;
    s.point = profile.inv_mu2(nu3) * unit_normal(nu3, azimuth);
    s.point.z() += profile.gamma(nu3, 1);
    return s;
}

WulffMesh wulff_mesh(const AnisotropyProfile& profile, int nu3_samples, int azimuth_samples) {
    if (nu3_samples < 2 || azimuth_samples < 3)
        throw DomainError("wulff_mesh needs nu3_samples >= 2 and azimuth_samples >= 3");
    const ConvexityReport conv = convexity_check(profile);
    if (!conv.pass)
        throw ConvexityError("profile " + profile.describe() + " is not convex on its domain (min 1/mu1 = " +
                             fmt_real(conv.min_inv_mu1) + ", min 1/mu2 = " + fmt_real(conv.min_inv_mu2) + ")");

    const double lo = profile.domain_lo();
    const double hi = profile.domain_hi();
    const int first = profile.lower_open() ? 1 : 0;
    const int intervals = profile.lower_open() ? nu3_samples : nu3_samples - 1;

    WulffMesh out;
    auto add = [&](double nu3, double az) {
        out.samples.push_back(wulff_point(profile, nu3, az));
        out.mesh.vertices.push_back(out.samples.back().point);
        return static_cast<int>(out.mesh.vertices.size()) - 1;
    };

    // Rings ordered by increasing nu3; a ring at |nu3| = 1 collapses to a pole.
    std::vector<std::vector<int>> rings;
    for (int k = first; k <= intervals; ++k) {
        const double nu3 = k == intervals ? hi : lo + (hi - lo) * k / intervals;
        std::vector<int> ring;
        if (std::abs(nu3) == 1.0) {
            ring.push_back(add(nu3, 0.0));
        } else {
            for (int j = 0; j < azimuth_samples; ++j)
                ring.push_back(add(nu3, 2.0 * std::numbers::pi * j / azimuth_samples));
        }
        rings.push_back(std::move(ring));
    }

    for (std::size_t k = 0; k + 1 < rings.size(); ++k) {
        const auto& a = rings[k];
        const auto& b = rings[k + 1];
        const int m = azimuth_samples;
        for (int j = 0; j < m; ++j) {
            const int jn = (j + 1) % m;
            if (a.size() == 1 && b.size() == 1) continue;
            if (a.size() == 1) {
                out.mesh.faces.push_back({a[0], b[jn], b[j]});
            } else if (b.size() == 1) {
                out.mesh.faces.push_back({a[j], a[jn], b[0]});
            } else {
                out.mesh.faces.push_back({a[j], a[jn], b[jn]});
                out.mesh.faces.push_back({a[j], b[jn], b[j]});
            }
        }
    }
    return out;
}

double harmonicity_residual(const AnisotropyProfile& profile, double lambda, double nu3) {
    if (lambda == 0.0) throw DomainError("harmonicity_residual requires lambda != 0");
    return profile.gamma(nu3, 3) - 4.0 / (lambda * lambda) * nu3 * (1.0 - nu3 * nu3) * profile.gamma(nu3, 2);
}

}  // namespace camc
