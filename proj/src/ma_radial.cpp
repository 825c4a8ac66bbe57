#include "kummer/ma_radial.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "kummer/quadrature.hpp"

namespace kummer {

namespace {

double chebyshev_node(double a, double b, int k, int n) {
    double t = std::cos((2.0 * k + 1.0) / (2.0 * n) * std::numbers::pi);
    return 0.5 * (a + b) + 0.5 * (b - a) * t;
}

}  // namespace

double RadialMASolution::h_at(double u) const {
    double integral = integrate_adaptive([this](double s) { return 2.0 * s * f(s); }, u0, u);
    return std::sqrt(h0 * h0 + integral);
}

double RadialMASolution::phi_at(double u) const {
    double ref = grid.front() > 0.0 ? grid.front() : grid[1];
    return integrate_adaptive([this](double s) { return h_at(s) / s; }, ref, u);
}

RadialMASolution solve_radial_ma(const std::function<double(double)>& f, double h0, double u0,
                                 double u1, int n_nodes, double quad_tol) {
    if (!(u0 >= 0.0) || !(u1 > u0)) throw PreconditionError("need 0 <= u0 < u1");
    if (h0 < 0.0) throw PreconditionError("boundary value h0 must be nonnegative");

    RadialMASolution sol;
    sol.f = f;
    sol.u0 = u0;
    sol.u1 = u1;
    sol.h0 = h0;
    sol.grid.resize(n_nodes);
    sol.h.resize(n_nodes);
    sol.phi.resize(n_nodes);

    // cumulative integral of 2 s F(s), interval by interval
    double acc = h0 * h0;
    for (int i = 0; i < n_nodes; ++i) {
        double u = u0 + (u1 - u0) * i / (n_nodes - 1.0);
        sol.grid[i] = u;
        if (i > 0) {
            double piece = integrate_adaptive([&](double s) { return 2.0 * s * f(s); },
                                              sol.grid[i - 1], u, quad_tol, 1e-16);
            acc += piece;
        }
        if (acc < 0.0) throw ParameterRangeError("negative right-hand side: F must be >= 0");
        sol.h[i] = std::sqrt(acc);
    }
    // F >= 0 sanity on the nodes
    for (double u : sol.grid)
        if (f(u) < 0.0) throw ParameterRangeError("F < 0 is not an admissible determinant");

    // phi by integrating h/u from the first positive node
    int ref = sol.grid[0] > 0.0 ? 0 : 1;
    sol.phi[ref] = 0.0;
    for (int i = ref + 1; i < n_nodes; ++i) {
        double piece = integrate_adaptive([&](double s) { return sol.h_at(s) / s; },
                                          sol.grid[i - 1], sol.grid[i], quad_tol, 1e-16);
        sol.phi[i] = sol.phi[i - 1] + piece;
    }
    for (int i = ref - 1; i >= 0; --i) {
        if (sol.grid[i] == 0.0) {
            sol.phi[i] = std::numeric_limits<double>::quiet_NaN();
            continue;
        }
        double piece = integrate_adaptive([&](double s) { return sol.h_at(s) / s; },
                                          sol.grid[i], sol.grid[i + 1], quad_tol, 1e-16);
        sol.phi[i] = sol.phi[i + 1] - piece;
    }

    // residual of the assembled equation at Chebyshev points, h' by central
    // differences of the quadrature-built h
    double lo = std::max(u0, 1e-3) + 1e-4 * (u1 - u0);
    double hi = u1 - 1e-4 * (u1 - u0);
    double step = 1e-5 * (u1 - u0);
    for (int k = 0; k < 17; ++k) {
        double u = chebyshev_node(lo, hi, k, 17);
        double coarse = (sol.h_at(u + step) - sol.h_at(u - step)) / (2 * step);
        double fine = (sol.h_at(u + step / 2) - sol.h_at(u - step / 2)) / step;
        double hp = (4 * fine - coarse) / 3.0;
        double res = std::abs(sol.h_at(u) / u * hp - f(u));
        sol.residual = std::max(sol.residual, res);
    }
    return sol;
}

NeckCorrectionRecord neck_correction_single(double a, double delta) {
    const double u0 = 0.5, u1 = 2.0;
    RadialPotentialSpec spec{PotentialKind::Glued, a, delta, 1.0};

    // volume matching on the annulus: A = (integral of det u du)/(integral of
    // e^psi det u du), and e^psi det(g) = 1 exactly for a glued potential, so
    // the denominator is the euclidean volume factor
    double num = gauss_legendre(
        [&](double u) {
            Jet h = eval_radial_h(spec, u, 1);
            return h.value() * h.derivative({1});
        },
        u0, u1, 128);
    double den = (u1 * u1 - u0 * u0) / 2.0;
    double a_model = num / den;

    // Dirichlet data: total potential difference over the annulus
    double target = gauss_legendre(
        [&](double u) { return eval_radial_h(spec, u, 0).value() / u; }, u0, u1, 128);

    // shoot on htilde(u0) so that the corrected potential matches at u1
    auto phi_gap = [&](double h0v) {
        return gauss_legendre(
                   [&](double u) {
                       return std::sqrt(h0v * h0v + a_model * (u * u - u0 * u0)) / u;
                   },
                   u0, u1, 128) -
               target;
    };
    double lo = 1e-8, hi = 4.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        (phi_gap(mid) < 0.0 ? lo : hi) = mid;
    }
    double h0v = 0.5 * (lo + hi);

    NeckCorrectionRecord rec;
    rec.a = a;
    rec.a_model = a_model;
    rec.htilde0 = h0v;

    auto htilde = [&](double u) {
        return std::sqrt(h0v * h0v + a_model * (u * u - u0 * u0));
    };
    const int n = 801;
    double sup_phi = 0.0, sup_lap = 0.0, min_lap = std::numeric_limits<double>::infinity();
    double phi_acc = 0.0;
    double prev = u0;
    for (int i = 1; i < n; ++i) {
        double u = u0 + (u1 - u0) * i / (n - 1.0);
        phi_acc += gauss_legendre(
            [&](double s) { return (htilde(s) - eval_radial_h(spec, s, 0).value()) / s; }, prev,
            u, 32);
        prev = u;
        sup_phi = std::max(sup_phi, std::abs(phi_acc));
        Jet hb = eval_radial_h(spec, u, 1);
        double hb_v = hb.value(), hb_p = hb.derivative({1});
        double ht_v = htilde(u), ht_p = a_model * u / ht_v;
        // laplacian in the glued metric: eigenvalue ratios minus identity
        double lap = (ht_p / hb_p - 1.0) + (ht_v / hb_v - 1.0);
        sup_lap = std::max(sup_lap, std::abs(lap));
        min_lap = std::min(min_lap, lap);
    }
    rec.sup_phi = sup_phi;
    rec.sup_lap_phi = sup_lap;
    rec.min_lap_phi = min_lap;
    return rec;
}

NeckCorrectionReport neck_correction_experiment(const std::vector<double>& a_grid, double delta) {
    NeckCorrectionReport rep;
    std::vector<double> sups, laps;
    for (double a : a_grid) {
        rep.rows.push_back(neck_correction_single(a, delta));
        sups.push_back(rep.rows.back().sup_phi);
        laps.push_back(rep.rows.back().sup_lap_phi);
    }
    if (a_grid.size() >= 2) {
        rep.slope_sup_phi = loglog_slope(a_grid, sups);
        rep.slope_sup_lap_phi = loglog_slope(a_grid, laps);
    }
    return rep;
}

LowerBoundReport lower_bound_check(const RadialMASolution& corrected,
                                   const RadialPotentialSpec& base) {
    LowerBoundReport rep;
    rep.min_slack = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < corrected.grid.size(); ++i) {
        double u = corrected.grid[i];
        if (u <= 0.0) continue;
        Jet hb = eval_radial_h(base, u, 1);
        double l1 = corrected.h[i] / hb.value();  // tangential eigenvalue ratio
        // radial eigenvalue ratio h'/h_base' via the exact relation h' = u F / h
        double hp = u * corrected.f(u) / corrected.h[i];
        double l2 = hp / hb.derivative({1});
        if (l1 <= 0.0 || l2 <= 0.0)
            throw DegenerateMetricError("total metric must stay positive definite");
        double slack = 0.5 * (l1 + l2) - std::sqrt(l1 * l2);
        rep.min_slack = std::min(rep.min_slack, slack);
    }
    return rep;
}

}  // namespace kummer
