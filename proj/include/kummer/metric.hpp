#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <memory>

#include "kummer/jet.hpp"
#include "kummer/potentials.hpp"

namespace kummer {

using Complex = std::complex<double>;

// 2x2 hermitian matrix g_{mu nubar}; (g)(mu, nu) is the component with the
// bar on the second index. The Riemannian metric of real vectors X, Y with
// holomorphic components X^m, Y^m is Re(sum g_{mn} X^m conj(Y^n)).
struct HermitianMetric {
    Eigen::Matrix2cd g;

    // smallest and largest eigenvalue (real, since hermitian)
    Eigen::Vector2d eigenvalues() const;
    double det() const { return std::real(g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0)); }
    void require_positive(double tol = 1e-13) const;
};

using Christoffel = std::array<std::array<std::array<Complex, 2>, 2>, 2>;   // [lam][mu][al]
using RiemannComplex = std::array<std::array<std::array<std::array<Complex, 2>, 2>, 2>, 2>;

struct CurvatureBundle {
    Christoffel christoffel{};     // Gamma^lam_{mu al}, symmetric in (mu, al)
    RiemannComplex riemann{};      // R_{mu nubar al betabar}
    Eigen::Matrix2cd ricci;        // R_{al betabar} = g^{nubar mu} R_{mu nubar al betabar}
    double scalar = 0.0;
    double kretschmann = 0.0;      // |Riem|^2, hermitian normalization
};

// Real-frame data over the coordinates (x1, y1, x2, y2).
struct RealGeometry {
    Eigen::Matrix4d metric;            // g_R(e_i, e_j)
    std::array<double, 256> riemann;   // R(e_i,e_j,e_k,e_l), index i*64+j*16+k*4+l
    double kretschmann = 0.0;

    double riem(int i, int j, int k, int l) const { return riemann[((i * 4 + j) * 4 + k) * 4 + l]; }
    double riem(const Eigen::Vector4d& x, const Eigen::Vector4d& y, const Eigen::Vector4d& z,
                const Eigen::Vector4d& w) const;
};

// A hermitian metric field on a 4-real-dimensional chart: the 2x2 component
// matrix as jets over (Re z1, Im z1, Re z2, Im z2) about the given point.
class MetricField {
  public:
    virtual ~MetricField() = default;
    virtual std::array<CJet, 4> metric_jets(const Eigen::Vector2cd& z, int order) const = 0;
    // det(g) in holomorphic Darboux normalization is det(g)/darboux_det.
    virtual double darboux_det() const { return 1.0; }
    virtual void check_point(const Eigen::Vector2cd&) const {}
    // identity of chart points; quotient charts override (lattice reduction)
    virtual bool same_point(const Eigen::Vector2cd& x, const Eigen::Vector2cd& y,
                            double tol) const {
        return (x - y).cwiseAbs().maxCoeff() < tol;
    }
};

// Radial potential chart (orbifold coordinates); degenerates at z = 0.
class RadialMetricField : public MetricField {
  public:
    explicit RadialMetricField(const RadialPotentialSpec& spec) : spec_(spec) { spec.validate(); }
    std::array<CJet, 4> metric_jets(const Eigen::Vector2cd& z, int order) const override;
    void check_point(const Eigen::Vector2cd& z) const override;
    const RadialPotentialSpec& spec() const { return spec_; }

  private:
    RadialPotentialSpec spec_;
};

// Eguchi-Hanson metric on the blow-up bundle chart (fiber z, base zeta) with
// u = 2|z|(1 + |zeta|^2); valid for |zeta| <= 1 (the other patch has the same
// component formulas in its own coordinates). In the rescaled variant the
// fiber coordinate is z/a and the holomorphic 2-form picks up a factor a.
class BundleMetricField : public MetricField {
  public:
    BundleMetricField(double a, bool rescaled = false, double patch_slack = 1e-6)
        : a_(a), rescaled_(rescaled), patch_slack_(patch_slack) {}
    std::array<CJet, 4> metric_jets(const Eigen::Vector2cd& z, int order) const override;
    double darboux_det() const override { return rescaled_ ? a_ * a_ : 1.0; }
    void check_point(const Eigen::Vector2cd& z) const override;
    double a() const { return a_; }

  private:
    double a_;
    bool rescaled_;
    double patch_slack_;
};

HermitianMetric metric_at(const MetricField& field, const Eigen::Vector2cd& z);
// metric components without the positive-definiteness gate (algebraic checks)
HermitianMetric metric_components_at(const MetricField& field, const Eigen::Vector2cd& z);
CurvatureBundle curvature_at(const MetricField& field, const Eigen::Vector2cd& z);
RealGeometry real_geometry_at(const MetricField& field, const Eigen::Vector2cd& z);
// psi = -ln(det g / darboux_det) and its metric laplacian
std::pair<double, double> psi_at(const MetricField& field, const Eigen::Vector2cd& z);
Christoffel christoffels_at(const MetricField& field, const Eigen::Vector2cd& z);

// Convenience wrappers over a radial chart.
HermitianMetric metric_at(const RadialPotentialSpec& spec, const Eigen::Vector2cd& z);
CurvatureBundle curvature_at(const RadialPotentialSpec& spec, const Eigen::Vector2cd& z);
std::pair<double, double> psi_at(const RadialPotentialSpec& spec, const Eigen::Vector2cd& z);

// Closed-form Eguchi-Hanson data for cross-checks.
Eigen::Matrix2cd eh_metric_closed_form(double a, const Eigen::Vector2cd& z);
Christoffel eh_christoffel_closed_form(double a, const Eigen::Vector2cd& z);
double eh_kretschmann_closed_form(double a, double u);

// Closed-form bundle-chart metric (eq-level formula); the jets in
// BundleMetricField come from the same expressions.
Eigen::Matrix2cd bundle_metric_closed_form(double a, const Eigen::Vector2cd& z, bool rescaled = false);
// f1 pullback of the orbifold metric to the bundle chart; z must have fiber != 0.
Eigen::Matrix2cd bundle_metric_via_pullback(double a, const Eigen::Vector2cd& z);

// Real <-> holomorphic component helpers.
Eigen::Vector2cd hol_components(const Eigen::Vector4d& x);
Eigen::Vector4d real_components(const Eigen::Vector2cd& v);
// Hermitian inner product <X, Y>_g = sum g_{mn} X^m conj(Y^n); real part is g_R.
Complex hermitian_inner(const Eigen::Matrix2cd& g, const Eigen::Vector2cd& x,
                        const Eigen::Vector2cd& y);

}  // namespace kummer
