#include "kummer/geodesics.hpp"

#include <cmath>
#include <numbers>
#include <limits>

#include "kummer/quadrature.hpp"

namespace kummer {

namespace {

using Eigen::Matrix2cd;
using Eigen::Matrix4d;
using Eigen::MatrixXd;
using Eigen::Vector2cd;
using Eigen::Vector4d;
using Eigen::VectorXd;

Vector2cd gamma_contract(const std::array<std::array<std::array<Complex, 2>, 2>, 2>& gamma,
                         const Vector2cd& a, const Vector2cd& b) {
    Vector2cd out;
    for (int lam = 0; lam < 2; ++lam) {
        Complex sum = 0.0;
        for (int mu = 0; mu < 2; ++mu)
            for (int al = 0; al < 2; ++al) sum += gamma[lam][mu][al] * a(mu) * b(al);
        out(lam) = sum;
    }
    return out;
}

// state for the augmented flow: position + velocity + transported vectors
struct FlowState {
    Vector2cd z;
    std::vector<Vector2cd> w;  // w[0] is the velocity; the rest ride along

    FlowState operator+(const FlowState& o) const {
        FlowState r = *this;
        r.z += o.z;
        for (size_t i = 0; i < w.size(); ++i) r.w[i] += o.w[i];
        return r;
    }
    FlowState operator*(double c) const {
        FlowState r = *this;
        r.z *= c;
        for (auto& v : r.w) v *= c;
        return r;
    }
    double max_abs() const {
        double m = z.cwiseAbs().maxCoeff();
        for (const auto& v : w) m = std::max(m, v.cwiseAbs().maxCoeff());
        return m;
    }
};

FlowState flow_rhs(const MetricField& field, const FlowState& s) {
    Christoffel gamma = christoffels_at(field, s.z);
    FlowState d;
    d.z = s.w[0];
    d.w.resize(s.w.size());
    d.w[0] = -gamma_contract(gamma, s.w[0], s.w[0]);
    for (size_t i = 1; i < s.w.size(); ++i) d.w[i] = -gamma_contract(gamma, s.w[0], s.w[i]);
    return d;
}

// Cash-Karp 4(5) tableau
constexpr double kB21 = 1.0 / 5;
constexpr double kB31 = 3.0 / 40, kB32 = 9.0 / 40;
constexpr double kB41 = 3.0 / 10, kB42 = -9.0 / 10, kB43 = 6.0 / 5;
constexpr double kB51 = -11.0 / 54, kB52 = 5.0 / 2, kB53 = -70.0 / 27, kB54 = 35.0 / 27;
constexpr double kB61 = 1631.0 / 55296, kB62 = 175.0 / 512, kB63 = 575.0 / 13824,
                 kB64 = 44275.0 / 110592, kB65 = 253.0 / 4096;
constexpr double kC1 = 37.0 / 378, kC3 = 250.0 / 621, kC4 = 125.0 / 594, kC6 = 512.0 / 1771;
constexpr double kD1 = 2825.0 / 27648, kD3 = 18575.0 / 48384, kD4 = 13525.0 / 55296,
                 kD5 = 277.0 / 14336, kD6 = 1.0 / 4;

// one step; returns the 5th-order result and the embedded 4th/5th error estimate
std::pair<FlowState, double> ck_step(const MetricField& field, const FlowState& y, double h) {
    FlowState k1 = flow_rhs(field, y) * h;
    FlowState k2 = flow_rhs(field, y + k1 * kB21) * h;
    FlowState k3 = flow_rhs(field, y + k1 * kB31 + k2 * kB32) * h;
    FlowState k4 = flow_rhs(field, y + k1 * kB41 + k2 * kB42 + k3 * kB43) * h;
    FlowState k5 = flow_rhs(field, y + k1 * kB51 + k2 * kB52 + k3 * kB53 + k4 * kB54) * h;
    FlowState k6 =
        flow_rhs(field, y + k1 * kB61 + k2 * kB62 + k3 * kB63 + k4 * kB64 + k5 * kB65) * h;
    FlowState y5 = y + k1 * kC1 + k3 * kC3 + k4 * kC4 + k6 * kC6;
    FlowState y4 = y + k1 * kD1 + k3 * kD3 + k4 * kD4 + k5 * kD5 + k6 * kD6;
    FlowState diff = y5 + y4 * (-1.0);
    return {y5, diff.max_abs()};
}

void check_proximity(const MetricField& field, const Vector2cd& z, double u_min) {
    if (dynamic_cast<const RadialMetricField*>(&field) != nullptr) {
        double u = std::norm(z(0)) + std::norm(z(1));
        if (u < u_min)
            throw ProximityError("trajectory entered the orbifold-coordinate floor u < u_min");
    }
    field.check_point(z);
}

}  // namespace

double energy_of(const MetricField& field, const GeodesicState& s) {
    Matrix2cd g = metric_components_at(field, s.z).g;
    return hermitian_inner(g, s.v, s.v).real();
}

GeodesicPath integrate_geodesic(const MetricField& field, const GeodesicState& s0, double time,
                                double step, const IntegrateOptions& opts) {
    if (step <= 0.0 || time <= 0.0) throw PreconditionError("need positive step and time");
    GeodesicPath path;
    path.energy0 = energy_of(field, s0);
    double escale = std::max(path.energy0, 1e-30);

    FlowState y;
    y.z = s0.z;
    y.w = {s0.v};
    double t = 0.0;
    path.t.push_back(0.0);
    path.states.push_back(s0);
    double scale = std::max(1.0, y.max_abs());
    while (t < time * (1.0 - 1e-15)) {
        double h = std::min(step, time - t);
        auto [ynext, err] = ck_step(field, y, h);
        if (err > opts.step_tol * scale)
            throw AccuracyError("integration step too large for the requested accuracy");
        y = ynext;
        t += h;
        check_proximity(field, y.z, opts.u_min);
        path.t.push_back(t);
        path.states.push_back(GeodesicState{y.z, y.w[0]});
        double e = energy_of(field, path.states.back());
        path.energy_drift = std::max(path.energy_drift, std::abs(e - path.energy0) / escale);
    }
    return path;
}

std::pair<GeodesicState, std::vector<Vector2cd>> transport_along_geodesic(
    const MetricField& field, const GeodesicState& s0, double h,
    const std::vector<Vector2cd>& vectors, int substeps) {
    FlowState y;
    y.z = s0.z;
    y.w.reserve(vectors.size() + 1);
    y.w.push_back(s0.v);
    for (const auto& v : vectors) y.w.push_back(v);
    double dt = h / substeps;
    for (int i = 0; i < substeps; ++i) y = ck_step(field, y, dt).first;
    GeodesicState end{y.z, y.w[0]};
    std::vector<Vector2cd> out(y.w.begin() + 1, y.w.end());
    return {end, out};
}

std::array<double, 256> transported_riemann(const MetricField& field, const Vector2cd& z,
                                            const Vector4d& w, double h) {
    GeodesicState s0{z, hol_components(w)};
    std::vector<Vector2cd> frame = {Vector2cd(1.0, 0.0), Vector2cd(Complex(0, 1), 0.0),
                                    Vector2cd(0.0, 1.0), Vector2cd(0.0, Complex(0, 1))};
    auto [end, moved] = transport_along_geodesic(field, s0, h, frame);
    RealGeometry rg = real_geometry_at(field, end.z);
    std::array<Vector4d, 4> tau;
    for (int i = 0; i < 4; ++i) tau[i] = real_components(moved[i]);
    std::array<double, 256> out{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l)
                    out[((i * 4 + j) * 4 + k) * 4 + l] = rg.riem(tau[i], tau[j], tau[k], tau[l]);
    return out;
}

StabilityReport second_variation_spectrum(const MetricField& field, const GeodesicPath& path,
                                          int n_modes, double closure_tol, double null_tol) {
    const auto& states = path.states;
    int m = static_cast<int>(states.size()) - 1;  // last node repeats the first
    if (m < 8) throw PreconditionError("path too coarse for a spectrum");
    if (!field.same_point(states.front().z, states.back().z, closure_tol))
        throw PreconditionError("second variation needs a closed path");
    if ((states.front().v - states.back().v).cwiseAbs().maxCoeff() > 1e-6)
        throw PreconditionError("second variation needs a closed path (velocity mismatch)");

    double period = path.t.back();
    double omega = 2.0 * std::numbers::pi / period;
    int nb = 1 + 2 * n_modes;
    int dim = 4 * nb;

    MatrixXd form = MatrixXd::Zero(dim, dim);
    MatrixXd gram = MatrixXd::Zero(dim, dim);
    VectorXd f(nb), fp(nb);
    const auto frame = std::array<Vector2cd, 4>{Vector2cd(1.0, 0.0), Vector2cd(Complex(0, 1), 0.0),
                                                Vector2cd(0.0, 1.0), Vector2cd(0.0, Complex(0, 1))};
    double sup_k = 0.0;

    for (int n = 0; n < m; ++n) {
        double t = path.t[n];
        double dt = path.t[n + 1] - path.t[n];
        const GeodesicState& s = states[n];
        RealGeometry rg = real_geometry_at(field, s.z);
        sup_k = std::max(sup_k, std::sqrt(rg.kretschmann));
        Christoffel gamma = christoffels_at(field, s.z);
        Matrix2cd g = metric_components_at(field, s.z).g;

        std::array<Vector2cd, 4> w;  // w_c = Gamma(zdot, e_c)
        for (int c = 0; c < 4; ++c) w[c] = gamma_contract(gamma, s.v, frame[c]);

        Matrix4d guu, guw, gww, curv;
        Vector4d vdot = real_components(s.v);
        for (int c = 0; c < 4; ++c)
            for (int c2 = 0; c2 < 4; ++c2) {
                guu(c, c2) = hermitian_inner(g, frame[c], frame[c2]).real();
                guw(c, c2) = hermitian_inner(g, frame[c], w[c2]).real();
                gww(c, c2) = hermitian_inner(g, w[c], w[c2]).real();
                Vector4d ec = Vector4d::Zero(), ec2 = Vector4d::Zero();
                ec(c) = 1.0;
                ec2(c2) = 1.0;
                curv(c, c2) = rg.riem(vdot, ec, ec2, vdot);
            }
        guu = 0.5 * (guu + guu.transpose()).eval();
        gww = 0.5 * (gww + gww.transpose()).eval();
        curv = 0.5 * (curv + curv.transpose()).eval();

        f(0) = 1.0;
        fp(0) = 0.0;
        for (int k = 1; k <= n_modes; ++k) {
            f(2 * k - 1) = std::cos(k * omega * t);
            f(2 * k) = std::sin(k * omega * t);
            fp(2 * k - 1) = -k * omega * std::sin(k * omega * t);
            fp(2 * k) = k * omega * std::cos(k * omega * t);
        }

        for (int c = 0; c < 4; ++c)
            for (int c2 = 0; c2 < 4; ++c2) {
                form.block(c * nb, c2 * nb, nb, nb) +=
                    dt * (guu(c, c2) * (fp * fp.transpose()) + guw(c, c2) * (fp * f.transpose()) +
                          guw(c2, c) * (f * fp.transpose()) +
                          (gww(c, c2) - curv(c, c2)) * (f * f.transpose()));
                gram.block(c * nb, c2 * nb, nb, nb) += dt * guu(c, c2) * (f * f.transpose());
            }
    }

    StabilityReport rep;
    rep.dim = dim;
    double entry_scale = std::max(1.0, form.cwiseAbs().maxCoeff());
    rep.max_asymmetry = (form - form.transpose()).cwiseAbs().maxCoeff() / entry_scale;
    MatrixXd sym = 0.5 * (form + form.transpose());
    Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXd> es(sym, gram);
    VectorXd ev = es.eigenvalues();
    rep.min_eigenvalue = ev.minCoeff();
    double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    for (int i = 0; i < ev.size(); ++i)
        if (std::abs(ev(i)) < null_tol * scale) rep.nullity_estimate += 1;
    rep.sup_riemann = sup_k;
    return rep;
}

ChristoffelDefect christoffel_defect(const MetricField& field_a, const MetricField& field_b,
                                     const Vector2cd& z) {
    Christoffel ga = christoffels_at(field_a, z);
    Christoffel gb = christoffels_at(field_b, z);
    ChristoffelDefect out;
    for (int l = 0; l < 2; ++l)
        for (int m = 0; m < 2; ++m)
            for (int al = 0; al < 2; ++al) out.psi[l][m][al] = gb[l][m][al] - ga[l][m][al];

    // tensor norm: transform to a g_A-unitary frame and sum |components|^2
    Matrix2cd g = metric_at(field_a, z).g;
    Eigen::LLT<Matrix2cd> llt(g);
    Matrix2cd lower = llt.matrixL();
    Matrix2cd frame = lower.adjoint().inverse();  // E with E^dag g E = 1
    Matrix2cd frame_inv = lower.adjoint();
    double sum = 0.0;
    for (int c = 0; c < 2; ++c)
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                Complex val = 0.0;
                for (int l = 0; l < 2; ++l)
                    for (int m = 0; m < 2; ++m)
                        for (int al = 0; al < 2; ++al)
                            val += frame_inv(c, l) * out.psi[l][m][al] * frame(m, a) * frame(al, b);
                sum += std::norm(val);
            }
    out.norm = std::sqrt(sum);
    return out;
}

double defect_acceleration_residual(const MetricField& field_a, const MetricField& field_b,
                                    const GeodesicPath& path_b) {
    const auto& st = path_b.states;
    int n = static_cast<int>(st.size());
    if (n < 7) throw PreconditionError("path too short for acceleration differencing");
    double worst = 0.0;
    for (int i = 3; i + 3 < n; i += 5) {
        double h = path_b.t[i + 1] - path_b.t[i];
        Vector2cd zdd =
            (-st[i + 2].v + 8.0 * st[i + 1].v - 8.0 * st[i - 1].v + st[i - 2].v) / (12.0 * h);
        Christoffel ga = christoffels_at(field_a, st[i].z);
        Vector2cd cov = zdd + gamma_contract(ga, st[i].v, st[i].v);
        Matrix2cd g = metric_at(field_a, st[i].z).g;
        double lhs = std::sqrt(hermitian_inner(g, cov, cov).real());
        ChristoffelDefect defect = christoffel_defect(field_a, field_b, st[i].z);
        Vector2cd psi_vv = gamma_contract(defect.psi, st[i].v, st[i].v);
        double rhs = std::sqrt(hermitian_inner(g, psi_vv, psi_vv).real());
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

// --- radial geodesics toward the exceptional divisor --------------------------

double divisor_sqrt_distance(double a, double u) {
    return gauss_legendre(
        [&](double s) { return s * u / std::pow(a * a + std::pow(s, 4) * u * u, 0.25); }, 0.0, 1.0,
        128);
}

double divisor_sqrt_distance_du(double a, double u) {
    return gauss_legendre(
        [&](double s) {
            double base = a * a + std::pow(s, 4) * u * u;
            return s / std::pow(base, 0.25) - 0.5 * std::pow(s, 5) * u * u / std::pow(base, 1.25);
        },
        0.0, 1.0, 128);
}

ThetaProfile radial_theta_profile(double a, double u, int n_steps) {
    if (u <= 0.0) throw PreconditionError("u_target must be positive");
    ThetaProfile prof;
    prof.sqrt_d = divisor_sqrt_distance(a, u);
    double sd = prof.sqrt_d;
    auto first_integral = [&](double theta) {
        return sd * std::pow(a * a + std::pow(theta, 4) * u * u, 0.25) / (theta * u);
    };
    // integrate in tau = sqrt(s): theta grows like sqrt(2 K s) off the divisor,
    // so uniform tau steps resolve the startup layer
    double s0 = 1e-6, tau0 = std::sqrt(s0);
    double theta0 = std::sqrt(2.0 * sd * std::sqrt(a) * s0 / u);
    double p0 = 2.0 * tau0 * first_integral(theta0);
    auto deriv = [&](double tauv, double th, double pv, double& dth, double& dp) {
        double theta_s = pv / (2.0 * tauv);
        double theta_ss = -a * a * theta_s * theta_s / ((a * a + u * u * std::pow(th, 4)) * th);
        dth = pv;
        dp = pv / tauv + 4.0 * tauv * tauv * theta_ss;
    };
    double tau = tau0, theta = theta0, p = p0;
    double h = (1.0 - tau0) / n_steps;
    prof.s.push_back(tau * tau);
    prof.theta.push_back(theta);
    prof.dtheta.push_back(p / (2 * tau));
    for (int i = 0; i < n_steps; ++i) {
        double k1t, k1p, k2t, k2p, k3t, k3p, k4t, k4p;
        deriv(tau, theta, p, k1t, k1p);
        deriv(tau + h / 2, theta + h / 2 * k1t, p + h / 2 * k1p, k2t, k2p);
        deriv(tau + h / 2, theta + h / 2 * k2t, p + h / 2 * k2p, k3t, k3p);
        deriv(tau + h, theta + h * k3t, p + h * k3p, k4t, k4p);
        theta += h / 6 * (k1t + 2 * k2t + 2 * k3t + k4t);
        p += h / 6 * (k1p + 2 * k2p + 2 * k3p + k4p);
        tau += h;
        double theta_s = p / (2 * tau);
        prof.s.push_back(tau * tau);
        prof.theta.push_back(theta);
        prof.dtheta.push_back(theta_s);
        if (tau * tau > 0.01)
            prof.max_first_integral_residual = std::max(prof.max_first_integral_residual,
                                                        std::abs(theta_s - first_integral(theta)));
    }
    prof.theta_end_error = std::abs(theta - 1.0);
    return prof;
}

DivisorProfile divisor_distance_profile(double a, const GeodesicPath& path) {
    DivisorProfile prof;
    prof.min_dfactor = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < path.states.size(); ++i) {
        const GeodesicState& s = path.states[i];
        double u = std::norm(s.z(0)) + std::norm(s.z(1));
        if (u <= 1e-12) throw ProximityError("distance profile undefined at the divisor");
        double sd = divisor_sqrt_distance(a, u);
        double dfac = divisor_sqrt_distance_du(a, u);
        double udot = 2.0 * (std::conj(s.z(0)) * s.v(0) + std::conj(s.z(1)) * s.v(1)).real();
        prof.t.push_back(path.t[i]);
        prof.d.push_back(sd * sd);
        prof.ddot.push_back(2.0 * sd * dfac * udot);
        prof.re_z_zdot.push_back(0.5 * udot);
        prof.min_dfactor = std::min(prof.min_dfactor, dfac);
    }
    for (size_t i = 1; i + 1 < prof.t.size(); ++i) {
        double fd = (prof.d[i + 1] - prof.d[i - 1]) / (prof.t[i + 1] - prof.t[i - 1]);
        prof.max_fd_gap = std::max(prof.max_fd_gap, std::abs(fd - prof.ddot[i]));
    }
    return prof;
}

double divisor_distance_ddot2_closed_form(double a, const MetricField& field,
                                          const GeodesicState& s, const Vector2cd& cov_accel) {
    double u = std::norm(s.z(0)) + std::norm(s.z(1));
    double root2 = a * a + u * u;
    double sd = divisor_sqrt_distance(a, u);
    double dtheta1 = sd * std::pow(root2, 0.25) / u;
    Matrix2cd g = metric_at(field, s.z).g;
    Complex z_dz = hermitian_inner(g, s.v, s.z);  // <z, zdot>_g
    double term1 = hermitian_inner(g, cov_accel, s.z).real();
    double term2 = u * u / root2 * hermitian_inner(g, s.v, s.v).real();
    double term3 = 2.0 * a * a / std::sqrt(root2) * std::norm(z_dz);
    return 2.0 * dtheta1 * (term1 + term2 + term3);
}

}  // namespace kummer
