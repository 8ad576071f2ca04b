#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gpdelta/quadrature.hpp"

using namespace gpdelta;
using cd = std::complex<double>;

TEST_CASE("GK21 integrates smooth functions") {
    const QuadResult r = integrate_gk21([](double x) { return cd(std::exp(x), 0.0); }, 0.0, 1.0);
    CHECK(r.converged);
    CHECK(std::abs(r.value - cd(std::exp(1.0) - 1.0, 0.0)) < 1e-14);
}

TEST_CASE("GK21 adapts to an endpoint singularity") {
    const QuadResult r = integrate_gk21([](double x) { return cd(1.0 / std::sqrt(x), 0.0); }, 0.0, 1.0, 1e-10, 80);
    CHECK(r.converged);
    CHECK(std::abs(r.value.real() - 2.0) < 1e-9);
}

TEST_CASE("GK21 panels integrate an oscillatory Fresnel-type integrand") {
    // int_0^10 exp(i x^2) dx against the erf-free series check: split panels vs one call.
    auto f = [](double x) { return std::exp(cd(0.0, x * x)); };
    const QuadResult a = integrate_gk21_panels(f, 0.0, 10.0, 64, 1e-13);
    const QuadResult b = integrate_gk21(f, 0.0, 10.0, 1e-13);
    CHECK(std::abs(a.value - b.value) < 1e-11);
    // Limit to infinity is sqrt(pi)/2 e^{i pi/4}; the tail beyond 10 is ~ i e^{i 100}/20.
    const cd tail = cd(0.0, 1.0) * std::exp(cd(0.0, 100.0)) / 20.0;
    const cd inf = std::sqrt(std::numbers::pi) / 2.0 * std::exp(cd(0.0, std::numbers::pi / 4.0));
    CHECK(std::abs(a.value - (inf - tail)) < 2e-3);
}

TEST_CASE("GK21 reports depth exhaustion") {
    const QuadResult r = integrate_gk21([](double x) { return cd(x < 0.3 ? 0.0 : 1.0, 0.0); }, 0.0, 1.0, 1e-300, 5);
    CHECK_FALSE(r.converged);
    CHECK_THROWS_AS(integrate_gk21([](double) { return cd(1.0); }, 0.0, INFINITY), std::invalid_argument);
}
