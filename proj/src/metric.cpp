#include "kummer/metric.hpp"

#include <cmath>

namespace kummer {

namespace {

using Eigen::Matrix2cd;
using Eigen::Matrix4d;
using Eigen::Vector2cd;
using Eigen::Vector4d;

constexpr Complex kI{0.0, 1.0};

// holomorphic components of the real coordinate frame (dx1, dy1, dx2, dy2)
const std::array<Vector2cd, 4>& frame_hol() {
    static const std::array<Vector2cd, 4> f = {
        Vector2cd(1.0, 0.0), Vector2cd(kI, 0.0), Vector2cd(0.0, 1.0), Vector2cd(0.0, kI)};
    return f;
}

Matrix2cd value_matrix(const std::array<CJet, 4>& g) {
    Matrix2cd m;
    for (int mu = 0; mu < 2; ++mu)
        for (int nu = 0; nu < 2; ++nu) m(mu, nu) = g[mu * 2 + nu].value();
    return m;
}

}  // namespace

Eigen::Vector2d HermitianMetric::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<Matrix2cd> es(g, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

void HermitianMetric::require_positive(double tol) const {
    Eigen::Vector2d ev = eigenvalues();
    if (!(ev(0) > tol) || !(ev(1) > tol))
        throw DegenerateMetricError("metric is not positive definite at this point");
}

double RealGeometry::riem(const Vector4d& x, const Vector4d& y, const Vector4d& z,
                          const Vector4d& w) const {
    double sum = 0.0;
    for (int i = 0; i < 4; ++i) {
        if (x(i) == 0.0) continue;
        for (int j = 0; j < 4; ++j) {
            if (y(j) == 0.0) continue;
            for (int k = 0; k < 4; ++k) {
                if (z(k) == 0.0) continue;
                for (int l = 0; l < 4; ++l)
                    sum += riem(i, j, k, l) * x(i) * y(j) * z(k) * w(l);
            }
        }
    }
    return sum;
}

Eigen::Vector2cd hol_components(const Vector4d& x) {
    return Vector2cd(Complex(x(0), x(1)), Complex(x(2), x(3)));
}

Vector4d real_components(const Vector2cd& v) {
    return Vector4d(v(0).real(), v(0).imag(), v(1).real(), v(1).imag());
}

Complex hermitian_inner(const Matrix2cd& g, const Vector2cd& x, const Vector2cd& y) {
    Complex sum = 0.0;
    for (int mu = 0; mu < 2; ++mu)
        for (int nu = 0; nu < 2; ++nu) sum += g(mu, nu) * x(mu) * std::conj(y(nu));
    return sum;
}

// ---------------------------------------------------------------------------
// fields

std::array<CJet, 4> RadialMetricField::metric_jets(const Vector2cd& z, int order) const {
    check_point(z);
    double u0 = std::norm(z(0)) + std::norm(z(1));
    if (order + 2 > kMaxJetOrder)
        throw CapabilityError("metric jets need potential order + 2 <= 6");
    Jet phi = eval_potential(spec_, u0, order + 2);

    Vector4d x0 = real_components(z);
    Jet u = Jet::constant(4, order + 2, 0.0);
    for (int i = 0; i < 4; ++i) {
        Jet xi = Jet::variable(4, order + 2, i, x0(i));
        u += xi * xi;
    }
    Jet pot = compose_series<double>(phi.coeffs(), u);
    CJet potc = complexify(pot);

    std::array<CJet, 4> g = {CJet(4, order), CJet(4, order), CJet(4, order), CJet(4, order)};
    for (int mu = 0; mu < 2; ++mu) {
        CJet dmu = hol_partial(potc, mu);
        for (int nu = 0; nu < 2; ++nu) g[mu * 2 + nu] = antihol_partial(dmu, nu);
    }
    return g;
}

void RadialMetricField::check_point(const Vector2cd& z) const {
    double u0 = std::norm(z(0)) + std::norm(z(1));
    if (u0 <= 0.0) throw OrbifoldPointError("orbifold chart degenerates at z = 0");
}

std::array<CJet, 4> BundleMetricField::metric_jets(const Vector2cd& z, int order) const {
    check_point(z);
    Vector4d x0 = real_components(z);
    int p = order;
    Jet x1 = Jet::variable(4, p, 0, x0(0));
    Jet y1 = Jet::variable(4, p, 1, x0(1));
    Jet x2 = Jet::variable(4, p, 2, x0(2));
    Jet y2 = Jet::variable(4, p, 3, x0(3));

    double scale = rescaled_ ? a_ : 1.0;            // physical fiber coord = scale * chart coord
    Jet s = (x1 * x1 + y1 * y1) * (scale * scale);  // |z_phys|^2
    Jet t = 1.0 + x2 * x2 + y2 * y2;                // 1 + |zeta|^2
    Jet u2 = 4.0 * s * t * t;                       // u^2, smooth through z = 0
    Jet w = sqrt(u2 + a_ * a_);

    CJet zbar_zeta = (complexify(x1) - complexify(y1) * kI) *
                     (complexify(x2) + complexify(y2) * kI);  // zbar * zeta (chart coords)

    Jet g00r = t * t / w * (scale * scale);
    Jet g11r = (a_ * a_ + u2 * t) / (t * t * w);
    CJet g01 = zbar_zeta * complexify(2.0 * scale * scale * t / w);

    return {complexify(g00r), g01, conj(g01), complexify(g11r)};
}

void BundleMetricField::check_point(const Vector2cd& z) const {
    if (std::abs(z(1)) > 1.0 + patch_slack_)
        throw WrongPatchError("bundle chart requires |zeta| <= 1; switch to the other patch");
}

// ---------------------------------------------------------------------------
// pointwise geometry

HermitianMetric metric_components_at(const MetricField& field, const Vector2cd& z) {
    return HermitianMetric{value_matrix(field.metric_jets(z, 0))};
}

HermitianMetric metric_at(const MetricField& field, const Vector2cd& z) {
    HermitianMetric m = metric_components_at(field, z);
    m.require_positive();
    return m;
}

Christoffel christoffels_at(const MetricField& field, const Vector2cd& z) {
    auto gj = field.metric_jets(z, 1);
    Matrix2cd g = value_matrix(gj);
    HermitianMetric{g}.require_positive();
    Matrix2cd ginv = g.inverse();
    Christoffel gamma{};
    for (int al = 0; al < 2; ++al) {
        Matrix2cd dg;
        for (int mu = 0; mu < 2; ++mu)
            for (int nu = 0; nu < 2; ++nu) dg(mu, nu) = hol_partial(gj[mu * 2 + nu], al).value();
        Matrix2cd m = dg * ginv;
        for (int mu = 0; mu < 2; ++mu)
            for (int lam = 0; lam < 2; ++lam) gamma[lam][mu][al] = m(mu, lam);
    }
    return gamma;
}

namespace {

struct ComplexCurvature {
    Matrix2cd g, ginv;
    Christoffel gamma{};
    RiemannComplex riem{};
};

ComplexCurvature complex_curvature(const MetricField& field, const Vector2cd& z) {
    auto gj = field.metric_jets(z, 2);
    ComplexCurvature out;
    out.g = value_matrix(gj);
    HermitianMetric{out.g}.require_positive();
    out.ginv = out.g.inverse();

    std::array<Matrix2cd, 2> dg, dbg;
    for (int al = 0; al < 2; ++al) {
        for (int mu = 0; mu < 2; ++mu)
            for (int nu = 0; nu < 2; ++nu) {
                dg[al](mu, nu) = hol_partial(gj[mu * 2 + nu], al).value();
                dbg[al](mu, nu) = antihol_partial(gj[mu * 2 + nu], al).value();
            }
    }
    for (int al = 0; al < 2; ++al) {
        Matrix2cd m = dg[al] * out.ginv;
        for (int mu = 0; mu < 2; ++mu)
            for (int lam = 0; lam < 2; ++lam) out.gamma[lam][mu][al] = m(mu, lam);
    }
    for (int al = 0; al < 2; ++al)
        for (int be = 0; be < 2; ++be) {
            Matrix2cd dd;
            for (int mu = 0; mu < 2; ++mu)
                for (int nu = 0; nu < 2; ++nu)
                    dd(mu, nu) = hol_partial(antihol_partial(gj[mu * 2 + nu], be), al).value();
            Matrix2cd r = -dd + dg[al] * out.ginv * dbg[be];
            for (int mu = 0; mu < 2; ++mu)
                for (int nu = 0; nu < 2; ++nu) out.riem[mu][nu][al][be] = r(mu, nu);
        }
    return out;
}

// real curvature tensor from the complex components (C = R_complex / 2)
void fill_real_riemann(const ComplexCurvature& cc, RealGeometry& out) {
    const auto& frame = frame_hol();
    std::array<Matrix2cd, 16> pair;  // P_ij(mu,nu) = E_i^mu conj(E_j^nu) - E_j^mu conj(E_i^nu)
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Matrix2cd p;
            for (int mu = 0; mu < 2; ++mu)
                for (int nu = 0; nu < 2; ++nu)
                    p(mu, nu) = frame[i](mu) * std::conj(frame[j](nu)) -
                                frame[j](mu) * std::conj(frame[i](nu));
            pair[i * 4 + j] = p;
        }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    Complex sum = 0.0;
                    const Matrix2cd& pij = pair[i * 4 + j];
                    const Matrix2cd& pkl = pair[k * 4 + l];
                    for (int mu = 0; mu < 2; ++mu)
                        for (int nu = 0; nu < 2; ++nu)
                            for (int al = 0; al < 2; ++al)
                                for (int be = 0; be < 2; ++be)
                                    sum += cc.riem[mu][nu][al][be] * pij(mu, nu) * pkl(al, be);
                    out.riemann[((i * 4 + j) * 4 + k) * 4 + l] = 0.5 * sum.real();
                }
}

Matrix4d real_metric_from(const Matrix2cd& g) {
    const auto& frame = frame_hol();
    Matrix4d gr;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) gr(i, j) = hermitian_inner(g, frame[i], frame[j]).real();
    return gr;
}

double kretschmann_from(const RealGeometry& rg) {
    // orthonormal real frame via Cholesky, then the full contraction / 16
    Eigen::LLT<Matrix4d> llt(rg.metric);
    Matrix4d B = Matrix4d(llt.matrixL()).transpose().inverse();
    double sum = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    double r = rg.riem(B.col(a), B.col(b), B.col(c), B.col(d));
                    sum += r * r;
                }
    return sum / 16.0;
}

}  // namespace

CurvatureBundle curvature_at(const MetricField& field, const Vector2cd& z) {
    ComplexCurvature cc = complex_curvature(field, z);
    CurvatureBundle out;
    out.christoffel = cc.gamma;
    out.riemann = cc.riem;
    for (int al = 0; al < 2; ++al)
        for (int be = 0; be < 2; ++be) {
            Complex sum = 0.0;
            for (int mu = 0; mu < 2; ++mu)
                for (int nu = 0; nu < 2; ++nu) sum += cc.ginv(nu, mu) * cc.riem[mu][nu][al][be];
            out.ricci(al, be) = sum;
        }
    out.scalar = (cc.ginv * out.ricci).trace().real();

    RealGeometry rg;
    rg.metric = real_metric_from(cc.g);
    fill_real_riemann(cc, rg);
    out.kretschmann = kretschmann_from(rg);
    return out;
}

RealGeometry real_geometry_at(const MetricField& field, const Vector2cd& z) {
    ComplexCurvature cc = complex_curvature(field, z);
    RealGeometry rg;
    rg.metric = real_metric_from(cc.g);
    fill_real_riemann(cc, rg);
    rg.kretschmann = kretschmann_from(rg);
    return rg;
}

std::pair<double, double> psi_at(const MetricField& field, const Vector2cd& z) {
    auto gj = field.metric_jets(z, 2);
    Matrix2cd g = value_matrix(gj);
    HermitianMetric{g}.require_positive();
    CJet detc = gj[0] * gj[3] - gj[1] * gj[2];
    Jet det = real_part(detc);
    if (det.value() <= 0.0) throw DegenerateMetricError("nonpositive metric determinant");
    Jet psi = -(log(det) - std::log(field.darboux_det()));
    CJet psic = complexify(psi);
    Matrix2cd h;
    for (int mu = 0; mu < 2; ++mu)
        for (int nu = 0; nu < 2; ++nu)
            h(mu, nu) = hol_partial(antihol_partial(psic, nu), mu).value();
    double lap = (g.inverse() * h).trace().real();
    return {psi.value(), lap};
}

HermitianMetric metric_at(const RadialPotentialSpec& spec, const Vector2cd& z) {
    return metric_at(RadialMetricField(spec), z);
}

CurvatureBundle curvature_at(const RadialPotentialSpec& spec, const Vector2cd& z) {
    return curvature_at(RadialMetricField(spec), z);
}

std::pair<double, double> psi_at(const RadialPotentialSpec& spec, const Vector2cd& z) {
    return psi_at(RadialMetricField(spec), z);
}

// ---------------------------------------------------------------------------
// closed forms

Matrix2cd eh_metric_closed_form(double a, const Vector2cd& z) {
    double u = std::norm(z(0)) + std::norm(z(1));
    double root = std::sqrt(a * a + u * u);
    double phip = root / u;
    double phipp = -a * a / (u * u * root);
    Matrix2cd g = phip * Matrix2cd::Identity();
    for (int mu = 0; mu < 2; ++mu)
        for (int nu = 0; nu < 2; ++nu) g(mu, nu) += phipp * std::conj(z(mu)) * z(nu);
    return g;
}

Christoffel eh_christoffel_closed_form(double a, const Vector2cd& z) {
    double u = std::norm(z(0)) + std::norm(z(1));
    double pref = -a * a / (u * (a * a + u * u));
    Christoffel gamma{};
    for (int lam = 0; lam < 2; ++lam)
        for (int mu = 0; mu < 2; ++mu)
            for (int al = 0; al < 2; ++al) {
                Complex term = 0.0;
                if (lam == al) term += std::conj(z(mu));
                if (lam == mu) term += std::conj(z(al));
                term -= 3.0 * std::conj(z(al)) * std::conj(z(mu)) * z(lam) / u;
                gamma[lam][mu][al] = pref * term;
            }
    return gamma;
}

double eh_kretschmann_closed_form(double a, double u) {
    double s = a * a + u * u;
    return 24.0 * a * a * a * a / (s * s * s);
}

Matrix2cd bundle_metric_closed_form(double a, const Vector2cd& z, bool rescaled) {
    double scale = rescaled ? a : 1.0;
    Complex zf = scale * z(0);
    Complex zeta = z(1);
    double t = 1.0 + std::norm(zeta);
    double u = 2.0 * std::abs(zf) * t;
    double w = std::sqrt(a * a + u * u);
    Matrix2cd g;
    g(0, 0) = scale * scale * t * t / w;
    g(1, 1) = (a * a + u * u * t) / (t * t * w);
    g(0, 1) = 2.0 * scale * scale * std::conj(z(0)) * zeta * t / w;
    g(1, 0) = std::conj(g(0, 1));
    return g;
}

Matrix2cd bundle_metric_via_pullback(double a, const Vector2cd& z) {
    Complex zf = z(0), zeta = z(1);
    if (std::abs(zf) == 0.0)
        throw OrbifoldPointError("pullback through f1 needs a nonzero fiber coordinate");
    Complex sqrt2z = std::sqrt(2.0 * zf);
    Vector2cd w(sqrt2z, zeta * sqrt2z);
    Matrix2cd jac;
    jac(0, 0) = 1.0 / sqrt2z;   // dw1/dz
    jac(0, 1) = 0.0;            // dw1/dzeta
    jac(1, 0) = zeta / sqrt2z;  // dw2/dz
    jac(1, 1) = sqrt2z;         // dw2/dzeta
    Matrix2cd g = eh_metric_closed_form(a, w);
    return jac.transpose() * g * jac.conjugate();
}

}  // namespace kummer
