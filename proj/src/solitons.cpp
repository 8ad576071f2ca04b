#include "gpdelta/solitons.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gpdelta {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

double sech2(double z) {
    const double c = std::cosh(z);
    return 1.0 / (c * c);
}

// Shifted argument s = (|x| -/+ c)/sqrt2 and the sign of d|x|/dx.
double shifted(const StationaryState& s, double x) {
    const double c = c_gamma(s.gamma);
    return s.kind == StateKind::EvenTanh ? (std::abs(x) - c) / kSqrt2 : (std::abs(x) + c) / kSqrt2;
}

double sgn(double x) { return x < 0.0 ? -1.0 : 1.0; }

}  // namespace

std::string to_string(StateKind k) {
    switch (k) {
        case StateKind::Kink: return "kink";
        case StateKind::EvenTanh: return "even_tanh";
        case StateKind::EvenCoth: return "even_coth";
    }
    return "unknown";
}

StateKind state_kind_from_string(const std::string& s) {
    if (s == "kink") return StateKind::Kink;
    if (s == "even_tanh") return StateKind::EvenTanh;
    if (s == "even_coth") return StateKind::EvenCoth;
    throw std::invalid_argument("unknown state kind: " + s);
}

void validate(const StationaryState& s) {
    if (!std::isfinite(s.gamma) || !std::isfinite(s.theta)) throw std::invalid_argument("state: non-finite parameter");
    if (s.kind == StateKind::EvenTanh && s.gamma == 0.0) throw std::invalid_argument("state: EvenTanh needs gamma != 0");
    if (s.kind == StateKind::EvenCoth && !(s.gamma < 0.0)) throw std::invalid_argument("state: EvenCoth needs gamma < 0");
}

double c_gamma(double gamma) {
    if (gamma == 0.0 || !std::isfinite(gamma)) throw std::invalid_argument("c_gamma: gamma must be finite and nonzero");
    // asinh is odd; evaluate ln(z + sqrt(z^2+1)) on |z| only, no cancellation.
    const double z = 2.0 * kSqrt2 / std::abs(gamma);
    const double a = z > 1e8 ? std::log(2.0 * z) + 1.0 / (4.0 * z * z) : std::log1p(z + z * z / (1.0 + std::sqrt(z * z + 1.0)));
    return (gamma > 0.0 ? -a : a) / kSqrt2;
}

double theta_gamma(double gamma) {
    if (gamma == 0.0 || !std::isfinite(gamma)) throw std::invalid_argument("theta_gamma: gamma must be finite and nonzero");
    // (sqrt(g^2+8) - |g|)/(2 sqrt2) rewritten without the subtraction.
    const double g = std::abs(gamma);
    const double v = 8.0 / (2.0 * kSqrt2 * (std::sqrt(g * g + 8.0) + g));
    return gamma > 0.0 ? v : -v;
}

double theta_tilde(double gamma) {
    if (!(gamma < 0.0)) throw std::invalid_argument("theta_tilde: gamma must be negative");
    return -1.0 / theta_gamma(gamma);
}

double profile(const StationaryState& s, double x) {
    switch (s.kind) {
        case StateKind::Kink: return std::tanh(x / kSqrt2);
        case StateKind::EvenTanh: return std::tanh(shifted(s, x));
        case StateKind::EvenCoth: return 1.0 / std::tanh(shifted(s, x));
    }
    return 0.0;
}

double profile_dx(const StationaryState& s, double x) {
    switch (s.kind) {
        case StateKind::Kink: return sech2(x / kSqrt2) / kSqrt2;
        case StateKind::EvenTanh: return sgn(x) * sech2(shifted(s, x)) / kSqrt2;
        case StateKind::EvenCoth: {
            const double sh = std::sinh(shifted(s, x));
            return -sgn(x) / (kSqrt2 * sh * sh);
        }
    }
    return 0.0;
}

double profile_dxx(const StationaryState& s, double x) {
    switch (s.kind) {
        case StateKind::Kink: {
            const double z = x / kSqrt2;
            return -std::tanh(z) * sech2(z);
        }
        case StateKind::EvenTanh: {
            const double z = shifted(s, x);
            return -std::tanh(z) * sech2(z);
        }
        case StateKind::EvenCoth: {
            const double z = shifted(s, x);
            const double sh = std::sinh(z);
            return 1.0 / (std::tanh(z) * sh * sh);
        }
    }
    return 0.0;
}

Field eval_state(const StationaryState& s, const GridSpec& g) {
    validate(s);
    const cplx ph = std::polar(1.0, s.theta);
    Field u(g);
    for (std::size_t j = 0; j < u.size(); ++j) u[j] = ph * profile(s, g.x(j));
    return u;
}

double closed_form_energy(const StationaryState& s) {
    validate(s);
    constexpr double ek = 2.0 * kSqrt2 / 3.0;
    switch (s.kind) {
        case StateKind::Kink: return ek;
        case StateKind::EvenTanh: {
            const double th = theta_gamma(s.gamma);
            return ek - th * th * (0.5 * s.gamma + ek * th);
        }
        case StateKind::EvenCoth: {
            const double tt = theta_tilde(s.gamma);
            return s.gamma * tt * tt / 6.0 + ek * (1.0 - tt);
        }
    }
    return 0.0;
}

StationaryState minimizer(double gamma) {
    if (gamma == 0.0) throw std::invalid_argument("minimizer: gamma must be nonzero");
    return {gamma > 0.0 ? StateKind::EvenTanh : StateKind::EvenCoth, gamma, 0.0};
}

Field bound_state(double gamma, const GridSpec& g) {
    if (!(gamma < 0.0)) throw std::invalid_argument("bound_state: gamma must be negative");
    const double k = -gamma;
    const double amp = std::sqrt(0.5 * k);
    Field u(g);
    for (std::size_t j = 0; j < u.size(); ++j) u[j] = amp * std::exp(-0.5 * k * std::abs(g.x(j)));
    return u;
}

double first_integral_residual(const StationaryState& s, double x) {
    const double u = profile(s, x), du = profile_dx(s, x);
    const double q = 1.0 - u * u;
    return 0.5 * du * du - 0.25 * q * q;
}

double stationarity_residual(const StationaryState& s, double x) {
    const double u = profile(s, x);
    return profile_dxx(s, x) + (1.0 - u * u) * u;
}

double jump_residual(const StationaryState& s) {
    validate(s);
    if (s.kind == StateKind::Kink) return 0.0;
    return 2.0 * profile_dx(s, 0.0) - s.gamma * profile(s, 0.0);
}

}  // namespace gpdelta
