#pragma once

#include <complex>
#include <functional>

namespace gpdelta {

struct QuadResult {
    std::complex<double> value;
    double abs_error = 0.0;
    long evaluations = 0;
    bool converged = true;
};

// Adaptive 21-point Gauss-Kronrod (QUADPACK qk21 nodes). Bisects the
// interval with the largest Kronrod-Gauss difference until the summed
// error estimate (QUADPACK scaling) is below abs_tol. Pieces already at
// roundoff level are not split, nor are pieces at max_depth; the latter, or
// hitting the 65536-piece cap, leaves converged = false.
QuadResult integrate_gk21(const std::function<std::complex<double>(double)>& f, double a, double b,
                          double abs_tol = 1e-12, int max_depth = 30);

// Splits [a, b] into n equal panels and applies adaptive GK21 on each.
QuadResult integrate_gk21_panels(const std::function<std::complex<double>(double)>& f, double a, double b, int panels,
                                 double abs_tol = 1e-12, int max_depth = 30);

}  // namespace gpdelta
