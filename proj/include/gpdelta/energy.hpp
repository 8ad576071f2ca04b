#pragma once

#include "gpdelta/grid.hpp"
#include "gpdelta/solitons.hpp"

namespace gpdelta {

struct EnergyBreakdown {
    double kinetic = 0.0;
    double point = 0.0;
    double potential = 0.0;
    double total = 0.0;
};

// Discrete E_gamma: cell differences for 1/2 |u'|^2 (no cell straddles the
// origin node), gamma/2 |u_M|^2, trapezoid for 1/4 (1 - |u|^2)^2.
EnergyBreakdown energy_gamma(const Field& u, double gamma);
// (4 E_h - E_2h) / 3 with E_2h taken on the even-indexed nodes; M must be even.
double energy_gamma_extrapolated(const Field& u, double gamma);
double abs_E(const Field& u);

// Discrete ||u'||_{L^2} and the pieces of d0 / dinfty.
double derivative_norm(const Field& u);
double d0(const Field& u, const Field& v);
double dinfty(const Field& u, const Field& v);

Field nonlinear_F(const Field& u);
// H_gamma u - F(u), zero on the two boundary nodes.
Field energy_gradient(const Field& u, double gamma);
// Interior L2 norm of the gradient (boundary nodes excluded).
double gradient_norm(const Field& u, double gamma);

struct OrbitDistanceResult {
    double distance = 0.0;
    double best_phase = 0.0;
    StateKind target = StateKind::Kink;
};

// min over theta of d0(u, e^{i theta} s) with s the target profile at gamma.
OrbitDistanceResult orbit_distance(const Field& u, StateKind target, double gamma);

}  // namespace gpdelta
