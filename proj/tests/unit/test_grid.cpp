#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "gpdelta/dense.hpp"
#include "gpdelta/grid.hpp"
#include "gpdelta/tridiagonal.hpp"
#include "oracles.hpp"

using namespace gpdelta;

TEST_CASE("make_grid builds symmetric nodes with the origin at index M") {
    const GridSpec g = make_grid(1.0, 2);
    CHECK(g.h() == 0.5);
    CHECK(g.size() == 5);
    const RVec xs = g.nodes();
    const double expect[] = {-1.0, -0.5, 0.0, 0.5, 1.0};
    for (int j = 0; j < 5; ++j) CHECK(xs[j] == expect[j]);

    const GridSpec big = make_grid(40.0, 8000);
    CHECK(big.h() == doctest::Approx(0.005).epsilon(1e-15));
    CHECK(big.size() == 16001);
    CHECK(big.x(big.origin()) == 0.0);
    for (std::size_t j = 0; j < big.size(); ++j) CHECK(big.x(j) == -big.x(big.size() - 1 - j));
    CHECK(big.x(big.size() - 1) == doctest::Approx(40.0).epsilon(1e-15));
}

TEST_CASE("make_grid rejects bad input") {
    CHECK_THROWS_AS(make_grid(0.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(-1.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_grid_with_spacing(1.0, 0.3), std::invalid_argument);
    CHECK(make_grid_with_spacing(30.0, 0.01).M() == 3000);
}

TEST_CASE("field length must match the grid") {
    CHECK_THROWS_AS(Field(make_grid(1.0, 2), CVec(4)), std::invalid_argument);
    Field u(make_grid(1.0, 2));
    CHECK(u.all_finite());
    u[1] = cplx(std::nan(""), 0.0);
    CHECK_FALSE(u.all_finite());
}

TEST_CASE("build_hgamma diagonal and symmetry") {
    const GridSpec g = make_grid(1.0, 2);
    const DeltaOperator op0 = build_hgamma(g, 0.0);
    for (double d : op0.diagonal) CHECK(d == 8.0);
    CHECK(op0.off_diagonal == -4.0);
    const DeltaOperator op1 = build_hgamma(g, 1.0);
    CHECK(op1.diagonal[2] == 10.0);
    for (std::size_t j = 0; j < 5; ++j)
        if (j != 2) CHECK(op1.diagonal[j] == op0.diagonal[j]);
    // A single shared off-diagonal scalar makes A^T = A by construction.
}

TEST_CASE("apply_hgamma: constants, linearity, grid mismatch") {
    const GridSpec g = make_grid(5.0, 50);
    const DeltaOperator op = build_hgamma(g, 0.0);
    const Field one = sample(g, [](double) { return cplx(1.0, 0.0); });
    const Field r = apply_hgamma(op, one);
    for (std::size_t j = 0; j < r.size(); ++j) CHECK(std::abs(r[j]) < 1e-10);

    std::mt19937_64 rng(3);
    std::normal_distribution<double> nd;
    Field u(g), v(g);
    for (std::size_t j = 0; j < u.size(); ++j) u[j] = {nd(rng), nd(rng)}, v[j] = {nd(rng), nd(rng)};
    const cplx al(0.3, -1.2), be(-2.0, 0.5);
    const DeltaOperator op1 = build_hgamma(g, 1.7);
    const Field lhs = apply_hgamma(op1, al * u + be * v);
    const Field rhs = al * apply_hgamma(op1, u) + be * apply_hgamma(op1, v);
    for (std::size_t j = 0; j < u.size(); ++j) CHECK(std::abs(lhs[j] - rhs[j]) < 1e-10 * (1.0 + std::abs(lhs[j])));

    CHECK_THROWS_AS(apply_hgamma(op1, Field(make_grid(5.0, 40))), std::invalid_argument);
}

TEST_CASE("apply_hgamma on a Dirichlet sine converges at second order") {
    std::vector<double> hs, errs;
    for (int M : {50, 100, 200}) {
        const GridSpec g = make_grid(2.0, M);
        const double k = std::numbers::pi / 4.0;  // sin(k(x+L)) vanishes at +-L
        const Field u = sample(g, [&](double x) { return cplx(std::sin(k * (x + 2.0)), 0.0); });
        const Field r = apply_hgamma(build_hgamma(g, 0.0), u);
        double e = 0.0;
        for (std::size_t j = 1; j + 1 < u.size(); ++j) e = std::max(e, std::abs(r[j] - k * k * u[j]));
        hs.push_back(g.h());
        errs.push_back(e);
    }
    CHECK(oracle::observed_order(hs, errs) >= 1.9);
}

TEST_CASE("apply_hgamma away from the origin node converges at second order") {
    std::vector<double> hs, errs;
    for (int M : {100, 200, 400}) {
        const GridSpec g = make_grid(8.0, M);
        const Field u = sample(g, [](double x) { return cplx(std::exp(-x * x) * std::cos(x), 0.0); });
        const Field r = apply_hgamma(build_hgamma(g, 1.0), u);
        double e = 0.0;
        for (std::size_t j = 1; j + 1 < u.size(); ++j) {
            if (j == g.origin()) continue;
            const double x = g.x(j);
            // -u'' for exp(-x^2) cos x
            const double upp = std::exp(-x * x) * ((4 * x * x - 3) * std::cos(x) + 4 * x * std::sin(x));
            e = std::max(e, std::abs(r[j] + upp));
        }
        hs.push_back(g.h());
        errs.push_back(e);
    }
    CHECK(oracle::observed_order(hs, errs) >= 1.9);
}

TEST_CASE("lowest eigenvalue of H_{-1} is the bound-state energy -1/4") {
    // Dense oracle on a coarse grid, then the fine grid through dstev.
    const GridSpec coarse = make_grid(20.0, 200);
    const DeltaOperator opc = build_hgamma(coarse, -1.0);
    const std::size_t n = coarse.size() - 2;
    DenseMatrix A(n);
    for (std::size_t i = 0; i < n; ++i) {
        A(i, i) = opc.diagonal[i + 1];
        if (i + 1 < n) A(i, i + 1) = A(i + 1, i) = opc.off_diagonal;
    }
    CHECK(std::abs(sym_eigen(A).values.front() + 0.25) < 2e-2);

    const GridSpec g = make_grid_with_spacing(40.0, 0.01);
    const DeltaOperator op = build_hgamma(g, -1.0);
    SymTridiag t{RVec(op.diagonal.begin() + 1, op.diagonal.end() - 1), RVec(g.size() - 3, op.off_diagonal)};
    CHECK(std::abs(sturm_kth_eigenvalue(t, 0) + 0.25) < 2e-3);
}

TEST_CASE("inner products and norms") {
    const GridSpec g = make_grid_with_spacing(40.0, 0.01);
    CHECK(l2_norm(Field(g)) == 0.0);
    const Field gauss = sample(g, [](double x) { return cplx(std::exp(-0.5 * x * x) / std::pow(std::numbers::pi, 0.25), 0.0); });
    CHECK(std::abs(l2_norm(gauss) - 1.0) < 1e-10);

    std::mt19937_64 rng(5);
    std::normal_distribution<double> nd;
    Field u(g), v(g);
    for (std::size_t j = 0; j < u.size(); ++j) u[j] = {nd(rng), nd(rng)}, v[j] = {nd(rng), nd(rng)};
    const cplx uv = l2_inner(u, v), vu = l2_inner(v, u);
    CHECK(std::abs(uv - std::conj(vu)) < 1e-12 * std::abs(uv));
    CHECK(l2_real_inner(u, v) == uv.real());
    CHECK_THROWS_AS(l2_inner(u, Field(make_grid(40.0, 100))), std::invalid_argument);
}
