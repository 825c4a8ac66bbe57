#include "kummer/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace kummer {

namespace {

struct Rule {
    std::vector<double> x;  // nodes on (-1, 1)
    std::vector<double> w;
};

// Golub-Welsch via Newton iteration on Legendre polynomials.
Rule legendre_rule(int n) {
    Rule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (x * p1 - p0) / (x * x - 1.0);
        r.x[i] = x;
        r.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

const Rule& rule_for(int n) {
    static const Rule r16 = legendre_rule(16);
    static const Rule r32 = legendre_rule(32);
    static const Rule r64 = legendre_rule(64);
    static const Rule r128 = legendre_rule(128);
    switch (n) {
        case 16: return r16;
        case 32: return r32;
        case 64: return r64;
        case 128: return r128;
        default: throw std::invalid_argument("unsupported Gauss-Legendre order");
    }
}

double gauss_panel(const std::function<double(double)>& f, double a, double b, const Rule& r) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double sum = 0.0;
    for (size_t i = 0; i < r.x.size(); ++i) sum += r.w[i] * f(mid + half * r.x[i]);
    return sum * half;
}

double adaptive_impl(const std::function<double(double)>& f, double a, double b, double whole,
                     double rel_tol, double abs_tol, int depth) {
    const Rule& r = rule_for(16);
    double mid = 0.5 * (a + b);
    double left = gauss_panel(f, a, mid, r);
    double right = gauss_panel(f, mid, b, r);
    double err = std::abs(left + right - whole);
    if (depth > 40 || err <= abs_tol + rel_tol * std::abs(left + right)) return left + right;
    return adaptive_impl(f, a, mid, left, rel_tol, abs_tol * 0.5, depth + 1) +
           adaptive_impl(f, mid, b, right, rel_tol, abs_tol * 0.5, depth + 1);
}

}  // namespace

double gauss_legendre(const std::function<double(double)>& f, double a, double b, int n) {
    return gauss_panel(f, a, b, rule_for(n));
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, double abs_tol) {
    if (a == b) return 0.0;
    double whole = gauss_panel(f, a, b, rule_for(16));
    return adaptive_impl(f, a, b, whole, rel_tol, abs_tol, 0);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = static_cast<int>(x.size());
    for (int i = 0; i < n; ++i) {
        double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace kummer
