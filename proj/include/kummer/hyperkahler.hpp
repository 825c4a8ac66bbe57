#pragma once

#include <functional>

#include "kummer/geodesics.hpp"
#include "kummer/metric.hpp"

namespace kummer {

// The quaternionic triple acting on the real tangent space in chart frame
// (dx1, dy1, dx2, dy2); I is the chart complex structure, J is built from the
// metric components in a constant-determinant (Darboux) chart, K = I J.
struct QuaternionicFrame {
    Eigen::Matrix4d I, J, K;
};

// Requires det(g) locally constant (Ricci-flat Darboux normalization);
// otherwise throws NotHyperkahlerChartError.
QuaternionicFrame quaternionic_frame(const MetricField& field, const Eigen::Vector2cd& z);

struct SigmaInvariants {
    double sII = 0, sJJ = 0, sKK = 0, sIJ = 0, sIK = 0, sJK = 0;
};

// The six curvature numbers sigma_XY(V) = <R(V, XV) YV, V> for the normalized
// V; V is given in real chart components and must be nonzero.
SigmaInvariants sigma_invariants(const MetricField& field, const Eigen::Vector2cd& z,
                                 const Eigen::Vector4d& v);

// Holomorphic sectional curvature of W = alpha V + beta IV + mu JV + nu KV
// from the sigma invariants of V; coefficients must satisfy
// alpha^2 + beta^2 + mu^2 + nu^2 = 1.
double sectional_reconstruction(const SigmaInvariants& s, double alpha, double beta, double mu,
                                double nu);
// Angle form on S^3; independent of the third Euler angle psi.
double sectional_reconstruction_angles(const SigmaInvariants& s, double theta, double phi);
// Coefficients (alpha, beta, mu, nu) from the Euler angles.
std::array<double, 4> euler_coefficients(double theta, double phi, double psi);

struct FixedSetReport {
    SigmaInvariants sigma;
    double off_diag_max = 0.0;  // max(|sIJ|, |sIK|) and also |sJK| for k > 2
    double jj_kk_gap = 0.0;     // |sJJ - sKK| (constrained for k > 2)
    double sigma_jk = 0.0;      // reported unconstrained when k = 2
};

// Constraints along the fixed set {z2 = 0} of (z1, z2) -> (z1, e^{2 pi i/k} z2)
// in an Eguchi-Hanson chart; V must be tangent to the fixed set.
FixedSetReport fixed_set_constraint_check(const MetricField& field, int k,
                                          const Eigen::Vector2cd& z, const Eigen::Vector4d& v);

struct LaplacianIdentityReport {
    double lhs = 0.0;             // <Delta R(V,IV)IV, V> by covariant differences
    double rhs_general = 0.0;     // bracket terms + sigma polynomial
    double rhs_fixed_set = 0.0;   // (alpha+beta) grad_V sII - alpha grad_IV sII - 6 sII^2
    double sigma_ii = 0.0;
};

// Both evaluation routes for the Laplacian of the curvature contraction, with
// V extended as the normalized d/dx1 coordinate field. The point must lie on
// the fixed set {z2 = 0}.
LaplacianIdentityReport laplacian_riemann_identity(const MetricField& field,
                                                   const Eigen::Vector2cd& z, double fd_step = 1e-3);

// sigma_II of the normalized d/dx1 field at an arbitrary chart point.
double sigma_ii_coordinate_field(const MetricField& field, const Eigen::Vector2cd& z);

// A smooth radial test function: u |-> 1-variable jet of the requested order.
using RadialTestFn = std::function<Jet(double, int)>;

struct YauResiduals {
    double norm_ma = 0.0;   // determinant identity residual
    double phi_der = 0.0;   // laplacian-of-laplacian identity residual
    double min_slack = 0.0; // inequality slack, minimized over C in {0.1, 1, 10}
};

// Pointwise identities and the maximum-principle inequality for the pair
// (g, g + Hess phi); throws if the perturbed metric is not positive.
YauResiduals yau_identity_residuals(const MetricField& field, const RadialTestFn& phi,
                                    const Eigen::Vector2cd& z);

// 4-variable jet of a radial scalar f(u(x)) about the chart point z.
Jet radial_scalar_jet(const RadialTestFn& f, const Eigen::Vector2cd& z, int order);

}  // namespace kummer
