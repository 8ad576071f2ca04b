#pragma once

#include <optional>

#include "gpdelta/faddeeva.hpp"
#include "gpdelta/grid.hpp"

namespace gpdelta {

// Free kernel exp(i zeta^2 / 4t) / sqrt(4 i pi t); t < 0 gives the conjugate.
cplx k0(double t, double zeta);

struct KernelQuery {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
    double gamma = 0.0;
};

struct KernelValue {
    cplx total{};
    std::optional<cplx> part1;  // gamma < 0 only
    std::optional<cplx> part2;
};

// Gamma(t, x, y) in closed form through w_erfc; for gamma < 0 also the split
// into part1 (adaptive quadrature over [0, (|x|+|y|)/2]) and part2 (via g).
KernelValue gamma_kernel(const KernelQuery& q);
// Closed form only, as a function of a = |x| + |y|.
cplx gamma_kernel_total(double t, double a, double gamma);
cplx gamma_kernel_part1(double t, double a, double gamma);
cplx gamma_kernel_part2(double t, double a, double gamma);

cplx g_func(double t, double rho, double gamma);

// Direct quadrature of the defining s-integral, truncated where
// exp(-|gamma| s / 2) < 1e-17. Slow; a validation path.
cplx gamma_kernel_reference(const KernelQuery& q);

// e^{-itH_0} u0 and Gamma(t) u0 by O(N^2) trapezoid sums over the grid.
Field apply_free_propagator(const Field& u0, double t);
Field apply_gamma_correction(const Field& u0, double t, double gamma);
// e^{-itH_gamma} u0; rejects |u0| > 1e-8 on either boundary node.
Field apply_propagator(const Field& u0, double t, double gamma);

}  // namespace gpdelta
