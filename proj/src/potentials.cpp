#include "kummer/potentials.hpp"

#include <cmath>

namespace kummer {

namespace {

// f_a(u) - u = a^2 * xi_eh(u) without the sqrt(a^2+u^2) - u cancellation:
//   xi_eh(u) = 1/(sqrt(a^2+u^2) + u) - arsinh(a/u)/a
Jet xi_eh_jet(double a, double u0, int order) {
    Jet x = Jet::variable(1, order, 0, u0);
    Jet root = sqrt(x * x + a * a);
    Jet first = 1.0 / (root + x);
    Jet second = asinh((1.0 / x) * a) / a;
    return first - second;
}

}  // namespace

void RadialPotentialSpec::validate() const {
    if (kind != PotentialKind::Euclidean && a <= 0.0)
        throw ParameterRangeError("Eguchi-Hanson scale a must be positive");
    if (kind == PotentialKind::Glued && (delta <= 0.0 || delta > 0.5))
        throw ParameterRangeError("gluing width delta must lie in (0, 1/2]");
    if (chi_scale <= 0.0) throw ParameterRangeError("cutoff scale must be positive");
}

Jet eval_cutoff(double u, double delta, int order, double scale) {
    if (delta <= 0.0 || delta > 0.5)
        throw ParameterRangeError("gluing width delta must lie in (0, 1/2]");
    double us = u / scale;
    if (us <= 1.0) return Jet::constant(1, order, 1.0);
    if (us >= 1.0 + delta) return Jet::constant(1, order, 0.0);
    Jet x = Jet::variable(1, order, 0, u);
    Jet t = (1.0 + delta - x / scale) / delta;  // in (0, 1) here
    Jet lower = exp(-(1.0 / t));
    Jet upper = exp(-(1.0 / (1.0 - t)));
    return lower / (lower + upper);
}

Jet eval_potential(const RadialPotentialSpec& spec, double u, int order) {
    spec.validate();
    if (u <= 0.0) throw OrbifoldPointError("radial potential evaluated at u <= 0");
    Jet x = Jet::variable(1, order, 0, u);
    switch (spec.kind) {
        case PotentialKind::Euclidean:
            return x;
        case PotentialKind::EguchiHanson:
            return x + xi_eh_jet(spec.a, u, order) * (spec.a * spec.a);
        case PotentialKind::Glued: {
            Jet chi = eval_cutoff(u, spec.delta, order, spec.chi_scale);
            return x + chi * xi_eh_jet(spec.a, u, order) * (spec.a * spec.a);
        }
    }
    throw CapabilityError("unknown potential kind");
}

Jet neck_remainder(double a, double delta, double u, int order) {
    if (u < kNeckRemainderFloor)
        throw OutOfRegionError("neck remainder defined away from the orbifold point");
    Jet chi = eval_cutoff(u, delta, order, 1.0);
    return chi * xi_eh_jet(a, u, order);
}

double homothety_residual(const RadialPotentialSpec& spec, double alpha, double u) {
    if (alpha <= 0.0) throw ParameterRangeError("homothety factor must be positive");
    RadialPotentialSpec scaled = spec;
    scaled.a = spec.a * alpha * alpha;
    scaled.chi_scale = spec.chi_scale * alpha * alpha;
    double lhs = eval_potential(scaled, alpha * alpha * u, 0).value();
    double rhs = alpha * alpha * eval_potential(spec, u, 0).value();
    return std::abs(lhs - rhs);
}

Jet eval_radial_h(const RadialPotentialSpec& spec, double u, int order) {
    spec.validate();
    if (u <= 0.0) throw OrbifoldPointError("radial profile evaluated at u <= 0");
    Jet x = Jet::variable(1, order, 0, u);
    switch (spec.kind) {
        case PotentialKind::Euclidean:
            return x;
        case PotentialKind::EguchiHanson:
            return x + (spec.a * spec.a) / (sqrt(x * x + spec.a * spec.a) + x);
        case PotentialKind::Glued: {
            if (u <= spec.chi_scale) {
                RadialPotentialSpec eh = spec;
                eh.kind = PotentialKind::EguchiHanson;
                return eval_radial_h(eh, u, order);
            }
            if (u >= (1.0 + spec.delta) * spec.chi_scale) return x;
            // transition zone: u phi' including the chi' terms; the glued
            // deviation is O(a^2) here, so the direct derivative is accurate
            if (order + 1 > kMaxJetOrder)
                throw CapabilityError("glued h profile needs potential order+1 <= 6");
            Jet phi = eval_potential(spec, u, order + 1);
            return x * phi.partial(0);
        }
    }
    throw CapabilityError("unknown potential kind");
}

double radial_hessian_det(const RadialPotentialSpec& spec, double u) {
    Jet h = eval_radial_h(spec, u, 1);
    return (h.value() / u) * h.derivative({1});
}

double psh_max_scale(double delta) {
    auto admissible = [&](double a) {
        RadialPotentialSpec spec{PotentialKind::Glued, a, delta, 1.0};
        const int n = 2000;
        for (int i = 0; i <= n; ++i) {
            double u = 1.0 + delta * i / n;
            Jet h = eval_radial_h(spec, u, 1);
            if (h.value() <= 0.0 || h.derivative({1}) <= 0.0) return false;
        }
        return true;
    };
    double lo = 0.0, hi = 4.0;
    if (admissible(hi)) return hi;
    for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        (admissible(mid) ? lo : hi) = mid;
    }
    return lo;
}

}  // namespace kummer
