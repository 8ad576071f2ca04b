#include "gpdelta/energy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gpdelta {

EnergyBreakdown energy_gamma(const Field& u, double gamma) {
    const GridSpec& g = u.grid();
    const double h = g.h();
    const std::size_t n = u.size();
    EnergyBreakdown e;
    double kin = 0.0;
    for (std::size_t j = 0; j + 1 < n; ++j) kin += std::norm(u[j + 1] - u[j]);
    e.kinetic = 0.5 * kin / h;
    e.point = 0.5 * gamma * std::norm(u.at_origin());
    auto q = [&](std::size_t j) {
        const double r = 1.0 - std::norm(u[j]);
        return r * r;
    };
    double pot = 0.5 * (q(0) + q(n - 1));
    for (std::size_t j = 1; j + 1 < n; ++j) pot += q(j);
    e.potential = 0.25 * pot * h;
    e.total = e.kinetic + e.point + e.potential;
    return e;
}

double energy_gamma_extrapolated(const Field& u, double gamma) {
    const GridSpec& g = u.grid();
    if (g.M() % 2 != 0 || g.M() < 4) throw std::invalid_argument("energy_gamma_extrapolated: M must be even and >= 4");
    const GridSpec coarse(g.L(), g.M() / 2);
    Field uc(coarse);
    for (std::size_t k = 0; k < uc.size(); ++k) uc[k] = u[2 * k];
    return (4.0 * energy_gamma(u, gamma).total - energy_gamma(uc, gamma).total) / 3.0;
}

double abs_E(const Field& u) { return std::sqrt(std::max(0.0, energy_gamma(u, 0.0).total)); }

double derivative_norm(const Field& u) {
    double s = 0.0;
    for (std::size_t j = 0; j + 1 < u.size(); ++j) s += std::norm(u[j + 1] - u[j]);
    return std::sqrt(s / u.grid().h());
}

namespace {

double derivative_distance(const Field& u, const Field& v) {
    double s = 0.0;
    for (std::size_t j = 0; j + 1 < u.size(); ++j) s += std::norm((u[j + 1] - v[j + 1]) - (u[j] - v[j]));
    return std::sqrt(s / u.grid().h());
}

// ||(|u|^2 - |v|^2)|| with the difference formed as Re((u-v) conj(u+v)).
double modulus_distance(const Field& u, const Field& v) {
    const std::size_t n = u.size();
    auto q = [&](std::size_t j) {
        const double r = ((u[j] - v[j]) * std::conj(u[j] + v[j])).real();
        return r * r;
    };
    double s = 0.5 * (q(0) + q(n - 1));
    for (std::size_t j = 1; j + 1 < n; ++j) s += q(j);
    return std::sqrt(s * u.grid().h());
}

}  // namespace

double d0(const Field& u, const Field& v) {
    require_same_grid(u, v);
    return derivative_distance(u, v) + std::abs(u.at_origin() - v.at_origin()) + modulus_distance(u, v);
}

double dinfty(const Field& u, const Field& v) {
    require_same_grid(u, v);
    double sup = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) sup = std::max(sup, std::abs(u[j] - v[j]));
    return derivative_distance(u, v) + sup + modulus_distance(u, v);
}

Field nonlinear_F(const Field& u) {
    Field r(u.grid());
    for (std::size_t j = 0; j < u.size(); ++j) r[j] = (1.0 - std::norm(u[j])) * u[j];
    return r;
}

Field energy_gradient(const Field& u, double gamma) {
    const DeltaOperator op = build_hgamma(u.grid(), gamma);
    Field r = apply_hgamma(op, u);
    const std::size_t n = u.size();
    for (std::size_t j = 1; j + 1 < n; ++j) r[j] -= (1.0 - std::norm(u[j])) * u[j];
    return r;
}

double gradient_norm(const Field& u, double gamma) {
    const Field gr = energy_gradient(u, gamma);
    double s = 0.0;
    for (std::size_t j = 1; j + 1 < gr.size(); ++j) s += std::norm(gr[j]);
    return std::sqrt(s * u.grid().h());
}

OrbitDistanceResult orbit_distance(const Field& u, StateKind target, double gamma) {
    if (target == StateKind::EvenCoth && !(gamma < 0.0))
        throw std::invalid_argument("orbit_distance: EvenCoth target needs gamma < 0");
    if (target == StateKind::EvenTanh && gamma == 0.0)
        throw std::invalid_argument("orbit_distance: EvenTanh target needs gamma != 0");
    const StationaryState st{target, gamma, 0.0};
    const Field s = eval_state(st, u.grid());
    const double h = u.grid().h();
    const std::size_t n = u.size();

    // Centre the phase search on the minimiser of the derivative term so that
    // small distances are formed from small differences.
    cplx B = 0.0;
    for (std::size_t j = 0; j + 1 < n; ++j) B += (u[j + 1] - u[j]) * std::conj(s[j + 1] - s[j]);
    const double theta0 = std::abs(B) > 0.0 ? std::arg(B) : 0.0;
    const cplx e0 = std::polar(1.0, theta0);

    double Dn = 0.0, S = 0.0;
    cplx P = 0.0;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const cplx ds = s[j + 1] - s[j];
        const cplx D = (u[j + 1] - u[j]) - e0 * ds;
        Dn += std::norm(D);
        S += std::norm(ds);
        P += D * std::conj(ds);
    }
    Dn /= h;
    S /= h;
    P /= h;
    const cplx d_origin = u.at_origin() - e0 * s.at_origin();
    const double mod_term = modulus_distance(u, s);

    auto f = [&](double phi) {
        const double sh = std::sin(0.5 * phi);
        const cplx em1(-2.0 * sh * sh, std::sin(phi));  // e^{i phi} - 1
        const cplx c = e0 * em1;
        const double kin2 = Dn + std::norm(em1) * S - 2.0 * (std::conj(c) * P).real();
        return std::sqrt(std::max(0.0, kin2)) + std::abs(d_origin - c * s.at_origin()) + mod_term;
    };

    constexpr int kScan = 64;
    constexpr double pi = std::numbers::pi;
    const double step = 2.0 * pi / kScan;
    int best = 0;
    double fbest = f(-pi);
    for (int k = 1; k < kScan; ++k) {
        const double v = f(-pi + k * step);
        if (v < fbest) fbest = v, best = k;
    }
    double a = -pi + (best - 1) * step, b = -pi + (best + 1) * step;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > 1e-12) {
        if (fc < fd) {
            b = d, d = c, fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c, c = d, fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    double phi = 0.5 * (a + b);
    double dist = f(phi);
    if (fbest < dist) dist = fbest, phi = -pi + best * step;
    double theta = std::remainder(theta0 + phi, 2.0 * pi);
    return {dist, theta, target};
}

}  // namespace gpdelta
