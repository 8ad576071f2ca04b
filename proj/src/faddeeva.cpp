#include "gpdelta/faddeeva.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gpdelta {

namespace {

using cd = std::complex<double>;

constexpr int kWeidemanN = 32;

// Weideman (1994) rational approximation: coefficients are the Fourier
// coefficients of (L^2 + t^2) exp(-t^2) under t = L tan(theta/2).
struct Weideman {
    double L;
    std::array<double, kWeidemanN> a;  // a[n] multiplies Z^n

    Weideman() {
        const int N = kWeidemanN, M = 2 * N, M2 = 2 * M;
        L = std::sqrt(N / std::numbers::sqrt2);
        std::array<double, 2 * 2 * kWeidemanN> f{};
        // f sampled at theta_k = k pi / M, k = -M..M-1, k = -M gives 0.
        for (int k = -M + 1; k < M; ++k) {
            const double t = L * std::tan(0.5 * k * std::numbers::pi / M);
            f[static_cast<std::size_t>(k + M)] = std::exp(-t * t) * (L * L + t * t);
        }
        // a_n = (1/M2) sum_k f_k exp(-i n theta_k), real by symmetry.
        for (int n = 1; n <= N; ++n) {
            double s = 0.0;
            for (int k = -M; k < M; ++k) s += f[static_cast<std::size_t>(k + M)] * std::cos(n * k * std::numbers::pi / M);
            a[static_cast<std::size_t>(n - 1)] = s / M2;
        }
    }

    cd eval(cd z) const {
        const cd iz(-z.imag(), z.real());
        const cd den = L - iz;
        const cd Z = (L + iz) / den;
        cd p = a[kWeidemanN - 1];
        for (int n = kWeidemanN - 2; n >= 0; --n) p = p * Z + a[static_cast<std::size_t>(n)];
        return 2.0 * p / (den * den) + std::numbers::inv_sqrtpi / den;
    }
};

const Weideman& weideman() {
    static const Weideman w;
    return w;
}

// sum_n (iz)^n / Gamma(n/2 + 1)
cd taylor(cd z) {
    const cd iz(-z.imag(), z.real());
    const cd iz2 = iz * iz;
    cd even = 1.0, odd = iz * (2.0 * std::numbers::inv_sqrtpi);
    cd sum = even + odd;
    for (int n = 2; n < 60; ++n) {
        cd& term = (n % 2 == 0) ? even : odd;
        term *= iz2 / (0.5 * n);
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

// Laplace continued fraction, upper half plane, large |z|.
cd continued_fraction(cd z) {
    const int terms = std::abs(z) > 12.0 ? 20 : 60;
    cd r = z;
    for (int k = terms; k >= 1; --k) r = z - (0.5 * k) / r;
    return cd(0.0, std::numbers::inv_sqrtpi) / r;
}

cd upper(cd z) {
    const double az = std::abs(z);
    if (az < 0.5) return taylor(z);
    if (az < 6.0) return weideman().eval(z);
    return continued_fraction(z);
}

}  // namespace

std::complex<double> w_erfc(std::complex<double> z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw std::domain_error("w_erfc: non-finite argument");
    if (z.imag() >= 0.0) return upper(z);
    const double x = z.real(), y = z.imag();
    if (y * y - x * x > 700.0) throw std::range_error("w_erfc: exp(-z^2) overflows");
    return 2.0 * std::exp(-z * z) - upper(-z);
}

}  // namespace gpdelta
