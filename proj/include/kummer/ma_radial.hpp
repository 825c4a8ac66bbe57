#pragma once

#include <functional>
#include <vector>

#include "kummer/potentials.hpp"

namespace kummer {

// Solution of the radial Monge-Ampere problem (Phi')(u Phi')' = F(u): with
// h = u Phi' the equation integrates exactly to (h^2)' = 2 u F(u).
struct RadialMASolution {
    std::vector<double> grid;  // u nodes (uniform)
    std::vector<double> h;     // u Phi'(u)
    std::vector<double> phi;   // Phi, normalized to 0 at the first positive node
    std::function<double(double)> f;
    double u0 = 0.0, u1 = 0.0, h0 = 0.0;
    double residual = 0.0;     // max |(h/u) h' - F| at Chebyshev check points

    double h_at(double u) const;    // from the closed quadrature, not interpolation
    double phi_at(double u) const;  // integral of h/s from the reference node
};

RadialMASolution solve_radial_ma(const std::function<double(double)>& f, double h0, double u0,
                                 double u1, int n_nodes = 257, double quad_tol = 1e-13);

struct NeckCorrectionRecord {
    double a = 0.0;
    double a_model = 0.0;       // volume-matching constant on the annulus
    double sup_phi = 0.0;       // sup |correction| with phi = 0 at both ends
    double sup_lap_phi = 0.0;   // sup |laplacian of the correction| in the glued metric
    double min_lap_phi = 0.0;   // signed lower bound of the laplacian
    double htilde0 = 0.0;       // shooting parameter h(u0) of the corrected potential
};

struct NeckCorrectionReport {
    std::vector<NeckCorrectionRecord> rows;
    double slope_sup_phi = 0.0;      // log-log slope of sup|phi| against a
    double slope_sup_lap_phi = 0.0;
};

// Dirichlet-corrected radial problem on [0.5, 2]: replace the glued potential
// by the solution of (Phi')(u Phi')' = A_model with matching boundary values;
// the correction phi and its scaling in a are the desk-scale analog of the
// global a^2 estimates.
NeckCorrectionReport neck_correction_experiment(const std::vector<double>& a_grid, double delta);
NeckCorrectionRecord neck_correction_single(double a, double delta);

struct LowerBoundReport {
    double min_slack = 0.0;  // min over nodes of Tr_g(gt)/2 - sqrt(det gt / det g)
};

// Arithmetic-geometric mean inequality between the base glued metric and the
// corrected metric, checked pointwise on the solution grid.
LowerBoundReport lower_bound_check(const RadialMASolution& corrected,
                                   const RadialPotentialSpec& base);

}  // namespace kummer
