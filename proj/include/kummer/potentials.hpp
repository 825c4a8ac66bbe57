#pragma once

#include "kummer/jet.hpp"

namespace kummer {

enum class PotentialKind { Euclidean, EguchiHanson, Glued };

// Spherically symmetric Kahler potential phi(u), u = |z|^2 in chart units.
//
//   Euclidean:    phi(u) = u
//   EguchiHanson: phi(u) = sqrt(a^2 + u^2) - a * arsinh(a / u)
//   Glued:        phi(u) = u + chi(u / chi_scale) * (f_a(u) - u)
//
// chi is a smooth cutoff equal to 1 for u <= 1 and 0 for u >= 1 + delta;
// chi_scale widens the gluing zone to [s, (1+delta) s], which is what a
// homothety z -> alpha z does to the construction.
struct RadialPotentialSpec {
    PotentialKind kind = PotentialKind::EguchiHanson;
    double a = 0.1;
    double delta = 0.1;
    double chi_scale = 1.0;

    void validate() const;
};

// phi and its u-derivatives at u as a 1-variable jet of the given order.
Jet eval_potential(const RadialPotentialSpec& spec, double u, int order);

// Cutoff jet chi(u/scale) built from the symmetric bump
//   s(t) = e^{-1/t} / (e^{-1/t} + e^{-1/(1-t)}),  chi(u) = s((1 + delta - u)/delta).
Jet eval_cutoff(double u, double delta, int order, double scale = 1.0);

// xi_a(u) = (Phi_a(u) - u)/a^2 for the glued potential, in a cancellation-free
// form; bounded with two derivatives as a -> 0 on u >= kNeckRemainderFloor.
Jet neck_remainder(double a, double delta, double u, int order);
inline constexpr double kNeckRemainderFloor = 0.25;

// |phi_{alpha^2 a}(alpha^2 u) - alpha^2 phi_a(u)| with the cutoff rescaled along.
double homothety_residual(const RadialPotentialSpec& spec, double alpha, double u);

// Largest a for which phi' > 0 and (u phi')' > 0 across the gluing zone
// (sampled), i.e. the empirical plurisubharmonicity bound for this delta.
double psh_max_scale(double delta);

// h(u) = u phi'(u) as a jet, built without the sqrt(a^2+u^2) - u cancellation;
// for Eguchi-Hanson this is exactly sqrt(a^2 + u^2).
Jet eval_radial_h(const RadialPotentialSpec& spec, double u, int order);

// det of the complex Hessian of a radial potential: (phi')((u phi')') = (h/u) h'.
double radial_hessian_det(const RadialPotentialSpec& spec, double u);

}  // namespace kummer
