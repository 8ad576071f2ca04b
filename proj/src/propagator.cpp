#include "gpdelta/propagator.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gpdelta/quadrature.hpp"

namespace gpdelta {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kEighth = std::polar(1.0, kPi / 4.0);  // e^{i pi/4}

void require_t(double t) {
    if (t == 0.0 || !std::isfinite(t)) throw std::invalid_argument("kernel: t must be finite and nonzero");
}

}  // namespace

cplx k0(double t, double zeta) {
    require_t(t);
    if (t < 0.0) return std::conj(k0(-t, zeta));
    return std::conj(kEighth) / (2.0 * std::sqrt(kPi * t)) * std::polar(1.0, zeta * zeta / (4.0 * t));
}

cplx gamma_kernel_total(double t, double a, double gamma) {
    require_t(t);
    if (gamma == 0.0) return 0.0;
    if (t < 0.0) return std::conj(gamma_kernel_total(-t, a, gamma));
    const double rt = std::sqrt(t);
    const cplx z = kEighth * cplx(a, gamma * t) / (2.0 * rt);
    return -0.25 * gamma * std::polar(1.0, a * a / (4.0 * t)) * w_erfc(z);
}

cplx g_func(double t, double rho, double gamma) {
    if (!(t > 0.0) || !(rho >= 0.0) || !(gamma < 0.0) || !std::isfinite(t) || !std::isfinite(rho))
        throw std::invalid_argument("g_func: needs t > 0, rho >= 0, gamma < 0");
    const double k = -gamma;
    const cplx z = kEighth * cplx(rho, -0.5 * k * std::sqrt(t));
    return -0.5 * std::polar(1.0, rho * rho - 0.25 * gamma * gamma * t) * w_erfc(z);
}

cplx gamma_kernel_part2(double t, double a, double gamma) {
    require_t(t);
    if (!(gamma < 0.0)) throw std::invalid_argument("gamma_kernel_part2: gamma must be negative");
    if (t < 0.0) return std::conj(gamma_kernel_part2(-t, a, gamma));
    const double k = -gamma;
    return -0.5 * k * std::polar(std::exp(-0.25 * k * a), 0.25 * gamma * gamma * t) *
           g_func(t, a / (4.0 * std::sqrt(t)), gamma);
}

cplx gamma_kernel_part1(double t, double a, double gamma) {
    require_t(t);
    if (!(gamma < 0.0)) throw std::invalid_argument("gamma_kernel_part1: gamma must be negative");
    if (t < 0.0) return std::conj(gamma_kernel_part1(-t, a, gamma));
    if (a == 0.0) return 0.0;
    const double k = -gamma;
    auto f = [&](double s) { return std::exp(-0.5 * k * s) * k0(t, s - a); };
    // Phase (s-a)^2/4t sweeps 3a^2/16t over [0, a/2]; at most pi per panel.
    const double sweep = 3.0 * a * a / (16.0 * t);
    const int panels = static_cast<int>(std::min(4.0e6, std::ceil(sweep / kPi))) + 1;
    const double ref = std::abs(gamma_kernel_total(t, a, gamma)) + std::abs(gamma_kernel_part2(t, a, gamma));
    const QuadResult r = integrate_gk21_panels(f, 0.0, 0.5 * a, panels, 1e-14 * ref / (0.5 * k) + 1e-300);
    return -0.5 * k * r.value;
}

KernelValue gamma_kernel(const KernelQuery& q) {
    require_t(q.t);
    if (!std::isfinite(q.x) || !std::isfinite(q.y) || !std::isfinite(q.gamma))
        throw std::invalid_argument("gamma_kernel: non-finite query");
    const double a = std::abs(q.x) + std::abs(q.y);
    KernelValue v;
    v.total = gamma_kernel_total(q.t, a, q.gamma);
    if (q.gamma < 0.0) {
        v.part1 = gamma_kernel_part1(q.t, a, q.gamma);
        v.part2 = gamma_kernel_part2(q.t, a, q.gamma);
    }
    return v;
}

cplx gamma_kernel_reference(const KernelQuery& q) {
    require_t(q.t);
    if (q.gamma == 0.0) return 0.0;
    if (q.t < 0.0) return std::conj(gamma_kernel_reference({-q.t, q.x, q.y, q.gamma}));
    const double t = q.t, k = std::abs(q.gamma);
    const double a = std::abs(q.x) + std::abs(q.y);
    const double shift = q.gamma > 0.0 ? a : -a;
    const double smax = 2.0 * 39.2 / k;  // exp(-k s / 2) < 1e-17
    auto f = [&](double s) { return std::exp(-0.5 * k * s) * k0(t, s + shift); };
    const double zmax = std::max(std::abs(shift), std::abs(smax + shift));
    const double sweep = zmax * zmax / (4.0 * t);
    const int panels = static_cast<int>(std::min(2.0e7, std::ceil(2.0 * sweep / kPi))) + 1;
    const QuadResult r = integrate_gk21_panels(f, 0.0, smax, panels, 1e-15);
    cplx v = -0.5 * k * r.value;
    if (q.gamma < 0.0) v += 0.5 * k * std::polar(std::exp(-0.5 * k * a), 0.25 * q.gamma * q.gamma * t);
    return v;
}

namespace {

void require_decaying(const Field& u0) {
    if (std::abs(u0[0]) > 1e-8 || std::abs(u0[u0.size() - 1]) > 1e-8)
        throw std::invalid_argument("apply_propagator: input must decay at the boundary (|u0| <= 1e-8)");
}

double trap_weight(std::size_t j, std::size_t n, double h) { return (j == 0 || j + 1 == n) ? 0.5 * h : h; }

// Fills trapezoid-weighted samples and returns the indices where they are
// nonzero, in increasing order (exact zeros contribute nothing to the sums).
std::vector<std::size_t> weighted_support(const Field& u0, CVec& wu) {
    const std::size_t n = u0.size();
    const double h = u0.grid().h();
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < n; ++j) {
        wu[j] = trap_weight(j, n, h) * u0[j];
        if (wu[j] != cplx(0.0)) nz.push_back(j);
    }
    return nz;
}

}  // namespace

Field apply_free_propagator(const Field& u0, double t) {
    require_t(t);
    const GridSpec& g = u0.grid();
    const std::size_t n = u0.size();
    const double h = g.h();
    CVec table(n), wu(n);
    for (std::size_t d = 0; d < n; ++d) table[d] = k0(t, static_cast<double>(d) * h);
    const std::vector<std::size_t> nz = weighted_support(u0, wu);
    Field r(g);
    for (std::size_t i = 0; i < n; ++i) {
        cplx s = 0.0;
        for (std::size_t j : nz) s += table[i > j ? i - j : j - i] * wu[j];
        r[i] = s;
    }
    return r;
}

Field apply_gamma_correction(const Field& u0, double t, double gamma) {
    require_t(t);
    const GridSpec& g = u0.grid();
    const std::size_t n = u0.size(), m = g.origin();
    const double h = g.h();
    Field r(g);
    if (gamma == 0.0) return r;
    CVec table(n), wu(n);
    for (std::size_t k = 0; k < n; ++k) table[k] = gamma_kernel_total(t, static_cast<double>(k) * h, gamma);
    const std::vector<std::size_t> nz = weighted_support(u0, wu);
    auto dist = [m](std::size_t i) { return i > m ? i - m : m - i; };
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t di = dist(i);
        cplx s = 0.0;
        for (std::size_t j : nz) s += table[di + dist(j)] * wu[j];
        r[i] = s;
    }
    return r;
}

Field apply_propagator(const Field& u0, double t, double gamma) {
    if (!std::isfinite(t)) throw std::invalid_argument("apply_propagator: non-finite t");
    if (!u0.all_finite()) throw std::invalid_argument("apply_propagator: non-finite input");
    if (t == 0.0) return u0;
    require_decaying(u0);
    Field r = apply_free_propagator(u0, t);
    r += apply_gamma_correction(u0, t, gamma);
    return r;
}

}  // namespace gpdelta
