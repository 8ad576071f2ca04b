#include <cmath>
#include <random>

#include "doctest.h"
#include "gpdelta/energy.hpp"
#include "gpdelta/errors.hpp"
#include "gpdelta/evolution.hpp"
#include "gpdelta/propagator.hpp"
#include "gpdelta/solitons.hpp"
#include "gpdelta/variational.hpp"

using namespace gpdelta;

namespace {

Field polished_b1(const GridSpec& g, double theta) {
    FlowConfig fc;
    fc.grad_tol = 1e-10;  // round-off floor is about 1.2e-11 at h = 0.01
    const FlowResult fr = gradient_flow(eval_state({StateKind::EvenTanh, 1.0, 0.0}, g), 1.0, fc);
    REQUIRE(fr.converged);
    return std::polar(1.0, theta) * fr.u;
}

Field smooth_perturbation(const GridSpec& g, double size) {
    Field w = sample(g, [](double x) { return cplx(0.6, -0.3) * std::exp(-(x - 1.0) * (x - 1.0)) + cplx(-0.2, 0.4) * x * std::exp(-x * x); });
    w *= size / l2_norm(w);
    return w;
}

}  // namespace

TEST_CASE("config validation") {
    EvolveConfig c;
    c.dt = 0.0;
    CHECK_THROWS_AS(validate(c), std::invalid_argument);
    c.dt = 1e-3;
    c.record_every = 0;
    CHECK_THROWS_AS(validate(c), std::invalid_argument);
}

TEST_CASE("discrete stationary b_1 is preserved, including a rotated copy") {
    const GridSpec g = make_grid_with_spacing(20.0, 0.01);
    EvolveConfig c;
    c.dt = 1e-3;
    c.gamma = 1.0;
    for (double theta : {0.0, 0.7}) {
        const Field u0 = polished_b1(g, theta);
        CrankNicolsonStepper st(g, c);
        Field u = u0;
        for (int k = 0; k < 1000; ++k) u = st.step(u);
        CHECK(dinfty(u, u0) < 1e-6);
        MESSAGE("max fixed-point iterations " << st.max_iterations_seen());
        CHECK(st.max_iterations_seen() <= 8);
    }
}

TEST_CASE("sampled b_1 drifts only by its O(h) discretisation residual") {
    EvolveConfig c;
    c.dt = 1e-3;
    c.gamma = 1.0;
    c.t_end = 1.0;
    c.keep_snapshots = false;
    double prev = 1e300;
    for (double h : {0.02, 0.01}) {
        const GridSpec g = make_grid_with_spacing(20.0, h);
        const Field u0 = eval_state({StateKind::EvenTanh, 1.0, 0.0}, g);
        const Trajectory tr = evolve(u0, c);
        const double d = dinfty(*tr.final_state, u0);
        MESSAGE("h = " << h << ": dinfty after t=1 " << d);
        CHECK(d < 10.0 * h);
        CHECK(d < prev);
        prev = d;
    }
}

TEST_CASE("constant state is an exact solution") {
    const GridSpec g = make_grid(10.0, 200);
    EvolveConfig c;
    c.t_end = 0.1;
    c.gamma = 0.0;
    const Field one = sample(g, [](double) { return cplx(1.0); });
    const Trajectory tr = evolve(one, c);
    for (std::size_t j = 0; j < one.size(); ++j) CHECK(std::abs((*tr.final_state)[j] - 1.0) < 1e-14);
    CHECK(tr.times.size() == tr.snapshots.size());
    CHECK(tr.times.size() == tr.energy_trace.size());
    for (std::size_t k = 1; k < tr.times.size(); ++k) CHECK(tr.times[k] > tr.times[k - 1]);
}

TEST_CASE("linear mode conserves the L2 norm per step") {
    const GridSpec g = make_grid_with_spacing(20.0, 0.01);
    EvolveConfig c;
    c.dt = 1e-3;
    c.gamma = -1.0;
    c.linear = true;
    CrankNicolsonStepper st(g, c);
    Field u = sample(g, [](double x) { return cplx(std::exp(-x * x), 0.0); });
    for (int k = 0; k < 50; ++k) {
        const Field v = st.step(u);
        CHECK(std::abs(l2_norm(v) - l2_norm(u)) < 1e-10 * l2_norm(u));
        u = v;
    }
}

TEST_CASE("linear mode matches the kernel propagator") {
    // The exact solution carries an x^-2 tail that the box with clamped ends
    // reflects, so the comparison is made where the packet lives.
    const GridSpec g = make_grid_with_spacing(40.0, 0.01);
    const Field phi = sample(g, [](double x) { return cplx(std::exp(-x * x), 0.0); });
    for (double gm : {1.0, -1.0}) {
        EvolveConfig c;
        c.dt = 1e-4;
        c.t_end = 0.5;
        c.gamma = gm;
        c.linear = true;
        c.keep_snapshots = false;
        const Field cn = *evolve(phi, c).final_state;
        const Field ex = apply_propagator(phi, 0.5, gm);
        double num = 0.0, den = 0.0;
        for (std::size_t j = 0; j < g.size(); ++j)
            if (std::abs(g.x(j)) <= 8.0) num += std::norm(cn[j] - ex[j]), den += std::norm(ex[j]);
        MESSAGE("gamma " << gm << ": relative error on |x| <= 8: " << std::sqrt(num / den)
                         << ", whole box: " << l2_norm(cn - ex) / l2_norm(ex));
        CHECK(std::sqrt(num / den) < 1e-3);
    }
}

TEST_CASE("energy drift is small and second order in dt") {
    const GridSpec g = make_grid_with_spacing(20.0, 0.02);
    const Field u0 = eval_state({StateKind::EvenTanh, 1.0, 0.0}, g) + smooth_perturbation(g, 0.05);
    double drift[2];
    int i = 0;
    for (double dt : {2e-3, 1e-3}) {
        EvolveConfig c;
        c.dt = dt;
        c.t_end = 10.0;
        c.gamma = 1.0;
        c.record_every = 100;
        c.keep_snapshots = false;
        const Trajectory tr = evolve(u0, c);
        double m = 0.0;
        for (double e : tr.energy_trace) m = std::max(m, std::abs(e - tr.energy_trace.front()));
        drift[i++] = m / std::abs(tr.energy_trace.front());
    }
    MESSAGE("relative drift dt=2e-3: " << drift[0] << ", dt=1e-3: " << drift[1]);
    CHECK(drift[1] < 1e-6);
    CHECK(drift[0] / drift[1] > 3.0);
}

TEST_CASE("continuous dependence on the data") {
    const GridSpec g = make_grid_with_spacing(20.0, 0.02);
    const Field b = eval_state({StateKind::EvenTanh, 1.0, 0.0}, g);
    EvolveConfig c;
    c.t_end = 1.0;
    c.gamma = 1.0;
    c.keep_snapshots = false;
    const Field ub = *evolve(b, c).final_state;
    const Field u1 = *evolve(b + smooth_perturbation(g, 1e-2), c).final_state;
    const Field u2 = *evolve(b + smooth_perturbation(g, 5e-3), c).final_state;
    const double ratio = dinfty(u1, ub) / dinfty(u2, ub);
    MESSAGE("continuity ratio " << ratio);
    CHECK(ratio >= 1.5);
    CHECK(ratio <= 3.0);
}

TEST_CASE("fixed-point failure is reported with its residual") {
    const GridSpec g = make_grid(10.0, 200);
    EvolveConfig c;
    c.gamma = 1.0;
    c.nonlinear_max_iter = 1;
    c.nonlinear_tol = 1e-300;
    c.t_end = 0.01;
    const Field u0 = eval_state({StateKind::Kink, 1.0, 0.0}, g) + smooth_perturbation(g, 0.1);
    try {
        evolve(u0, c);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(e.iterations() == 1);
        CHECK(e.residual() > 0.0);
        CHECK(std::string(e.what()).find("t = ") != std::string::npos);
    }
}

TEST_CASE("growth fit on synthetic data") {
    std::vector<double> t, d;
    for (int i = 0; i <= 100; ++i) t.push_back(0.1 * i), d.push_back(1e-4 * std::exp(0.5 * 0.1 * i));
    const auto f = fit_growth(t, d, 1e-3, 1e-2);
    REQUIRE(f.has_value());
    CHECK(std::abs(f->rate - 0.5) < 1e-10);
    CHECK_FALSE(fit_growth(t, std::vector<double>(t.size(), 1e-5), 1e-3, 1e-2).has_value());
}
