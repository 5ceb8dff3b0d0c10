#include "camc/numerics.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace camc {

namespace {

constexpr std::array<double, 5> kGl10Nodes = {
    0.1488743389816312108848260, 0.4333953941292471907992659, 0.6794095682990244062343274,
    0.8650633666889845107320967, 0.9739065285171717200779640};
constexpr std::array<double, 5> kGl10Weights = {
    0.2955242247147528701738930, 0.2692667193099963550912269, 0.2190863625159820439955349,
    0.1494513491505805931457763, 0.0666713443086881375935688};

// Kronrod 15-point extension of the 7-point Gauss rule.
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGauss7Weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct GkResult {
    double value;
    double error;
};

GkResult gauss_kronrod15(const ScalarFn& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double r = 0.5 * (b - a);
    const double fc = f(c);
    double kronrod = fc * kKronrodWeights[7];
    double gauss = fc * kGauss7Weights[3];
    for (int k = 0; k < 7; ++k) {
        const double dx = r * kKronrodNodes[k];
        const double sum = f(c - dx) + f(c + dx);
        kronrod += kKronrodWeights[k] * sum;
        if (k % 2 == 1) gauss += kGauss7Weights[k / 2] * sum;
    }
    return {kronrod * r, std::abs((kronrod - gauss) * r)};
}

double adaptive_step(const ScalarFn& f, double a, double b, double abs_tol, int depth,
                     const GkResult& whole) {
    if (depth <= 0 || whole.error <= abs_tol) return whole.value;
    const double m = 0.5 * (a + b);
    const GkResult left = gauss_kronrod15(f, a, m);
    const GkResult right = gauss_kronrod15(f, m, b);
    return adaptive_step(f, a, m, 0.5 * abs_tol, depth - 1, left) +
           adaptive_step(f, m, b, 0.5 * abs_tol, depth - 1, right);
}

}  // namespace

double gauss_legendre(const ScalarFn& f, double a, double b, int panels) {
    const double width = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * width;
        const double c = lo + 0.5 * width;
        const double r = 0.5 * width;
        double sum = 0.0;
        for (std::size_t k = 0; k < kGl10Nodes.size(); ++k) {
            const double dx = r * kGl10Nodes[k];
            sum += kGl10Weights[k] * (f(c - dx) + f(c + dx));
        }
        total += sum * r;
    }
    return total;
}

double adaptive_quadrature(const ScalarFn& f, double a, double b, double rel_tol, int max_depth) {
    if (a == b) return 0.0;
    const GkResult whole = gauss_kronrod15(f, a, b);
    const double scale = std::max(std::abs(whole.value), std::numeric_limits<double>::min());
    return adaptive_step(f, a, b, rel_tol * scale, max_depth, whole);
}

double bisect(const ScalarFn& f, double lo, double hi, double x_tol) {
    double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0) == (fhi > 0)) throw std::invalid_argument("bisect: bracket has no sign change");
    for (int it = 0; it < 2000; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= std::min(lo, hi) || mid >= std::max(lo, hi)) break;
        if (std::abs(hi - lo) <= x_tol) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double polish_root(const ScalarFn& f, double lo, double hi) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0) == (fhi > 0)) throw std::invalid_argument("polish_root: no sign change");
    for (int it = 0; it < 2000; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (!(mid > std::min(lo, hi) && mid < std::max(lo, hi))) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    return std::abs(flo) <= std::abs(fhi) ? lo : hi;
}

std::vector<double> bracketed_roots(const ScalarFn& f, const std::vector<double>& xs) {
    std::vector<double> roots;
    if (xs.empty()) return roots;
    double prev_x = xs.front();
    double prev_f = f(prev_x);
    if (prev_f == 0.0) roots.push_back(prev_x);
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const double x = xs[i];
        const double fx = f(x);
        if (fx == 0.0) {
            roots.push_back(x);
        } else if (prev_f != 0.0 && (fx > 0) != (prev_f > 0)) {
            roots.push_back(polish_root(f, prev_x, x));
        }
        prev_x = x;
        prev_f = fx;
    }
    return roots;
}

std::vector<double> symmetric_log_grid(double lo_exp, double hi_exp, int per_decade) {
    const int n = static_cast<int>(std::ceil((hi_exp - lo_exp) * per_decade)) + 1;
    std::vector<double> pos(n);
    for (int k = 0; k < n; ++k) pos[k] = std::pow(10.0, lo_exp + (hi_exp - lo_exp) * k / (n - 1));
    std::vector<double> grid;
    grid.reserve(2 * n + 1);
    for (auto it = pos.rbegin(); it != pos.rend(); ++it) grid.push_back(-*it);
    grid.push_back(0.0);
    grid.insert(grid.end(), pos.begin(), pos.end());
    return grid;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
    if (n < 2) throw std::invalid_argument("linspace: need at least two points");
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    out.back() = b;
    return out;
}

Grid2D::Grid2D(std::size_t nx_, std::size_t ny_, double x0_, double y0_, double h_)
    : nx(nx_), ny(ny_), x0(x0_), y0(y0_), h(h_), values(nx_ * ny_, 0.0) {}

double Grid2D::diff(std::size_t i2, std::size_t j2, std::size_t i1, std::size_t j1) const {
    double d = at(i2, j2) - at(i1, j1);
    if (period) d -= *period * std::round(d / *period);
    return d;
}

Grid2D Grid2D::sample(double extent, double h, const std::function<double(double, double)>& f) {
    const auto n = static_cast<std::size_t>(std::llround(2.0 * extent / h)) + 1;
    Grid2D g(n, n, -extent, -extent, h);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) g.at(i, j) = f(g.x(i), g.y(j));
    return g;
}

double ResidualGrid::max_abs() const {
    double m = 0.0;
    for (std::size_t k = 0; k < mask.size(); ++k)
        if (mask[k]) m = std::max(m, std::abs(grid.values[k]));
    return m;
}

double ResidualGrid::max_abs_deviation(double target) const {
    double m = 0.0;
    for (std::size_t k = 0; k < mask.size(); ++k)
        if (mask[k]) m = std::max(m, std::abs(grid.values[k] - target));
    return m;
}

std::size_t ResidualGrid::count() const {
    return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), 1));
}

ResidualGrid divergence_residual(const Grid2D& u, const FluxFn& flux, double rhs,
                                 const RegionFn& region) {
    ResidualGrid out;
    out.grid = Grid2D(u.nx, u.ny, u.x0, u.y0, u.h);
    out.mask.assign(u.nx * u.ny, 0);
    const double h = u.h;
    if (u.nx < 5 || u.ny < 5) return out;

    // x-face flux between (i, j) and (i+1, j).
    auto flux_x = [&](std::size_t i, std::size_t j) {
        const double gx = u.diff(i + 1, j, i, j) / h;
        const double gy = 0.25 * (u.diff(i, j + 1, i, j - 1) + u.diff(i + 1, j + 1, i + 1, j - 1)) / h;
        double fx = 0.0, fy = 0.0;
        flux(gx, gy, fx, fy);
        return fx;
    };
    // y-face flux between (i, j) and (i, j+1).
    auto flux_y = [&](std::size_t i, std::size_t j) {
        const double gy = u.diff(i, j + 1, i, j) / h;
        const double gx = 0.25 * (u.diff(i + 1, j, i - 1, j) + u.diff(i + 1, j + 1, i - 1, j + 1)) / h;
        double fx = 0.0, fy = 0.0;
        flux(gx, gy, fx, fy);
        return fy;
    };

    for (std::size_t j = 2; j + 2 < u.ny; ++j) {
        for (std::size_t i = 2; i + 2 < u.nx; ++i) {
            if (!region(u.x(i), u.y(j))) continue;
            const double div = (flux_x(i, j) - flux_x(i - 1, j)) / h + (flux_y(i, j) - flux_y(i, j - 1)) / h;
            out.grid.at(i, j) = div - rhs;
            out.mask[j * u.nx + i] = 1;
        }
    }
    return out;
}

}  // namespace camc
