#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gpdelta/energy.hpp"
#include "gpdelta/solitons.hpp"

using namespace gpdelta;
constexpr double s2 = std::numbers::sqrt2;

TEST_CASE("c_gamma values and sign") {
    // (1/sqrt2) ln(2 sqrt2 + 3)
    const double ref = std::log(2.0 * s2 + 3.0) / s2;
    CHECK(std::abs(c_gamma(1.0) + ref) < 1e-14);
    CHECK(std::abs(c_gamma(1.0) + 1.2464504803) < 1e-10);
    CHECK(std::abs(c_gamma(-1.0) - ref) < 1e-14);
    CHECK(c_gamma(1e6) < 0.0);
    CHECK(c_gamma(1e6) > -1e-5);
    CHECK(c_gamma(-1e6) > 0.0);
    // small |gamma|: large argument branch stays accurate
    CHECK(std::abs(c_gamma(1e-10) - (-std::asinh(2.0 * s2 / 1e-10) / s2)) < 1e-14 * std::abs(c_gamma(1e-10)));
    CHECK_THROWS_AS(c_gamma(0.0), std::invalid_argument);
}

TEST_CASE("theta_gamma and theta_tilde") {
    CHECK(std::abs(theta_gamma(1.0) - 1.0 / s2) < 1e-15);
    CHECK(std::abs(theta_gamma(-1.0) + 1.0 / s2) < 1e-15);
    CHECK(std::abs(theta_tilde(-1.0) - s2) < 1e-15);
    for (double g : {-10.0, -2.0, -0.5, -1e-3, 1e-3, 0.3, 1.0, 7.0}) {
        const double th = theta_gamma(g);
        CHECK(std::abs(th - (s2 / g) * (1.0 - th * th)) < 1e-14 * std::max(1.0, std::abs(s2 / g)));
        CHECK(std::abs(std::tanh(-c_gamma(g) / s2) - th) < 1e-12);
    }
    CHECK_THROWS_AS(theta_gamma(0.0), std::invalid_argument);
    CHECK_THROWS_AS(theta_tilde(0.5), std::invalid_argument);
}

TEST_CASE("eval_state profiles") {
    const GridSpec g = make_grid(40.0, 400);
    const Field k = eval_state({StateKind::Kink, 1.0, 0.4}, g);
    CHECK(std::abs(k.at_origin()) == 0.0);
    CHECK(std::abs(k[g.size() - 1] - std::polar(1.0, 0.4)) < 1e-15);
    CHECK(std::abs(k[0] + std::polar(1.0, 0.4)) < 1e-15);

    const Field b = eval_state({StateKind::EvenTanh, 1.0, 0.3}, g);
    CHECK(std::abs(b.at_origin() - std::polar(theta_gamma(1.0), 0.3)) < 1e-15);
    CHECK(std::abs(std::abs(b.at_origin()) - 0.7071067812) < 1e-10);

    const Field c = eval_state({StateKind::EvenCoth, -1.0, 0.0}, g);
    CHECK(std::abs(c.at_origin().real() - 1.4142135624) < 1e-10);
    CHECK_THROWS_AS(eval_state({StateKind::EvenCoth, 1.0, 0.0}, g), std::invalid_argument);
    CHECK_THROWS_AS(eval_state({StateKind::EvenTanh, 0.0, 0.0}, g), std::invalid_argument);
}

TEST_CASE("closed-form energies") {
    CHECK(std::abs(closed_form_energy({StateKind::Kink, 3.0, 0.0}) - 2.0 * s2 / 3.0) < 1e-15);
    CHECK(std::abs(closed_form_energy({StateKind::Kink, 3.0, 0.0}) - 0.9428090416) < 1e-10);
    CHECK(std::abs(closed_form_energy({StateKind::EvenTanh, 1.0, 0.0}) - (2.0 * s2 / 3.0 - 7.0 / 12.0)) < 1e-15);
    CHECK(std::abs(closed_form_energy({StateKind::EvenTanh, 1.0, 0.0}) - 0.3594757082) < 1e-10);
    // Direct integration of the coth profile (40-digit quadrature, frozen):
    // gamma=-1 -> -0.72385762508460330, gamma=-2 -> -2.1225750993201473.
    CHECK(std::abs(closed_form_energy({StateKind::EvenCoth, -1.0, 0.0}) + 0.72385762508460330) < 1e-14);
    CHECK(std::abs(closed_form_energy({StateKind::EvenCoth, -2.0, 0.0}) + 2.1225750993201473) < 1e-13);
    CHECK(std::abs(closed_form_energy({StateKind::EvenCoth, -0.5, 0.0}) + 0.29974599662499364) < 1e-14);
}

TEST_CASE("closed-form energies agree with the discrete energy") {
    const GridSpec g = make_grid_with_spacing(40.0, 0.005);
    for (double gm : {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0}) {
        std::vector<StationaryState> states{{StateKind::Kink, gm, 0.0}, {StateKind::EvenTanh, gm, 0.0}};
        if (gm < 0) states.push_back({StateKind::EvenCoth, gm, 0.0});
        for (const auto& s : states) {
            const double e = energy_gamma_extrapolated(eval_state(s, g), gm);
            CHECK(std::abs(e - closed_form_energy(s)) < 1e-6);
        }
    }
}

TEST_CASE("energy ordering over a gamma sweep") {
    for (double g = 0.1; g <= 10.0 + 1e-9; g += 0.1) {
        const double ek = closed_form_energy({StateKind::Kink, g, 0.0});
        CHECK(closed_form_energy({StateKind::EvenTanh, g, 0.0}) < ek);
        const double gn = -g;
        const double ebt = closed_form_energy({StateKind::EvenTanh, gn, 0.0});
        const double ebc = closed_form_energy({StateKind::EvenCoth, gn, 0.0});
        CHECK(ebc < ek);
        CHECK(ek < ebt);
    }
}

TEST_CASE("first integral, stationarity and jump residuals") {
    for (double gm : {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0}) {
        std::vector<StationaryState> states{{StateKind::Kink, gm, 0.0}, {StateKind::EvenTanh, gm, 0.0}};
        if (gm < 0) states.push_back({StateKind::EvenCoth, gm, 0.0});
        for (const auto& s : states) {
            for (double x = -20.0; x <= 20.0; x += 0.173) {
                CHECK(std::abs(first_integral_residual(s, x)) < 1e-12);
                CHECK(std::abs(stationarity_residual(s, x)) < 1e-12);
            }
            CHECK(std::abs(jump_residual(s)) < 1e-12);
        }
    }
}

TEST_CASE("bound state") {
    const GridSpec g = make_grid_with_spacing(40.0, 0.01);
    const Field p = bound_state(-1.0, g);
    CHECK(std::abs(p.at_origin().real() - std::sqrt(0.5)) < 1e-15);
    CHECK(std::abs(l2_norm(p) - 1.0) < 1e-4);
    const double rq = l2_real_inner(apply_hgamma(build_hgamma(g, -1.0), p), p) / std::pow(l2_norm(p), 2);
    CHECK(std::abs(rq + 0.25) < 1e-2);
    const GridSpec g1 = make_grid(10.0, 100);
    const Field q = bound_state(-2.0, g1);
    CHECK(std::abs(q[g1.origin() + 10].real() / q.at_origin().real() - std::exp(-1.0)) < 1e-15);
    CHECK_THROWS_AS(bound_state(1.0, g), std::invalid_argument);
}
