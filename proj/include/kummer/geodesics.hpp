#pragma once

#include <vector>

#include "kummer/metric.hpp"

namespace kummer {

// Position and velocity in a complex chart; v holds the holomorphic components
// of the real tangent vector.
struct GeodesicState {
    Eigen::Vector2cd z;
    Eigen::Vector2cd v;
};

struct GeodesicPath {
    std::vector<double> t;
    std::vector<GeodesicState> states;
    double energy0 = 0.0;
    double energy_drift = 0.0;  // max |E - E0| / E0 along the path

    const GeodesicState& front() const { return states.front(); }
    const GeodesicState& back() const { return states.back(); }
};

struct IntegrateOptions {
    double u_min = 1e-6;        // orbifold proximity floor (radial charts)
    double step_tol = 1e-8;     // embedded local error monitor, relative to state scale
};

double energy_of(const MetricField& field, const GeodesicState& s);

// Fixed-step embedded Runge-Kutta (Cash-Karp 4(5)) for the geodesic equation
// zdot = v, vdot^lam = -Gamma^lam_{mu al} v^mu v^al.
GeodesicPath integrate_geodesic(const MetricField& field, const GeodesicState& s0, double time,
                                double step, const IntegrateOptions& opts = {});

// Integrate the geodesic from s0 for parameter length h while parallel
// transporting the given holomorphic vectors along it.
std::pair<GeodesicState, std::vector<Eigen::Vector2cd>> transport_along_geodesic(
    const MetricField& field, const GeodesicState& s0, double h,
    const std::vector<Eigen::Vector2cd>& vectors, int substeps = 8);

// Real 4-tensor pulled back to the start point by parallel transport along the
// geodesic with initial velocity w and parameter h.
std::array<double, 256> transported_riemann(const MetricField& field, const Eigen::Vector2cd& z,
                                            const Eigen::Vector4d& w, double h);

struct StabilityReport {
    double min_eigenvalue = 0.0;
    int nullity_estimate = 0;
    double sup_riemann = 0.0;  // sup of kretschmann^(1/2) along the path
    int dim = 0;
    double max_asymmetry = 0.0;  // assembly symmetry residual, relative to the entry scale
};

// Second variation of energy on a closed path in a Fourier basis of vector
// fields (4 coordinate components x (1 + 2 n_modes) harmonics), as a
// generalized symmetric eigenproblem against the L^2(g) Gram matrix.
StabilityReport second_variation_spectrum(const MetricField& field, const GeodesicPath& path,
                                          int n_modes, double closure_tol = 1e-8,
                                          double null_tol = 1e-7);

struct ChristoffelDefect {
    std::array<std::array<std::array<Complex, 2>, 2>, 2> psi{};  // Psi^lam_{mu al}
    double norm = 0.0;                                           // |Psi|_{g_A}
};

ChristoffelDefect christoffel_defect(const MetricField& field_a, const MetricField& field_b,
                                     const Eigen::Vector2cd& z);

// For a geodesic of field_b: max over interior samples of
// | |D_t^A zdot|_A - |Psi(zdot, zdot)|_A | with the acceleration measured by
// finite differences of the stored velocities.
double defect_acceleration_residual(const MetricField& field_a, const MetricField& field_b,
                                    const GeodesicPath& path_b);

// --- radial geodesics toward the exceptional divisor --------------------------

// sqrt of the squared distance to the divisor: int_0^1 s u (a^2+s^4 u^2)^(-1/4) ds
double divisor_sqrt_distance(double a, double u);
double divisor_sqrt_distance_du(double a, double u);

struct ThetaProfile {
    std::vector<double> s, theta, dtheta;
    double sqrt_d = 0.0;
    double max_first_integral_residual = 0.0;
    double theta_end_error = 0.0;
};

// Integrates theta'' + a^2 theta'^2 / ((a^2 + u^2 theta^4) theta) = 0 from the
// divisor out to theta(1) = 1 and verifies the first integral
// theta' = sqrt(d) (a^2 + theta^4 u^2)^(1/4) / (theta u).
ThetaProfile radial_theta_profile(double a, double u_target, int n_steps = 4096);

struct DivisorProfile {
    std::vector<double> t, d, ddot, re_z_zdot;
    double min_dfactor = 0.0;  // min over the path of d(sqrt d)/du; positivity makes
                               // ddot = 0 equivalent to Re<z, zdot> = 0
    double max_fd_gap = 0.0;   // centered difference of d(t) against ddot
};

DivisorProfile divisor_distance_profile(double a, const GeodesicPath& path);

// Closed-form second derivative of d(t) at a stationary point of a geodesic
// (covariant acceleration term supplied by the caller; zero for g-geodesics).
double divisor_distance_ddot2_closed_form(double a, const MetricField& field,
                                          const GeodesicState& s,
                                          const Eigen::Vector2cd& cov_accel = Eigen::Vector2cd::Zero());

}  // namespace kummer
