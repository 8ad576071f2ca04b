#include "gpdelta/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "gpdelta/errors.hpp"

namespace gpdelta {

namespace {

double sech2(double z) {
    const double c = std::cosh(z);
    return 1.0 / (c * c);
}

RVec interior(const Field& u) {
    RVec r(u.size() - 2);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = u[i + 1].real();
    return r;
}

Field embed(const GridSpec& g, const RVec& v) {
    Field u(g);
    for (std::size_t i = 0; i < v.size(); ++i) u[i + 1] = v[i];
    return u;
}

double enorm(const RVec& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

DenseMatrix to_dense(const SymTridiag& t) {
    DenseMatrix d(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        d(i, i) = t.diag[i];
        if (i + 1 < t.size()) d(i, i + 1) = d(i + 1, i) = t.off[i];
    }
    return d;
}

// Tridiagonal times dense.
DenseMatrix tri_times(const SymTridiag& t, const DenseMatrix& B) {
    const std::size_t n = t.size();
    DenseMatrix C(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = t.diag[i] * B(i, j);
            if (i > 0) s += t.off[i - 1] * B(i - 1, j);
            if (i + 1 < n) s += t.off[i] * B(i + 1, j);
            C(i, j) = s;
        }
    return C;
}

struct LambdaParts {
    SymTridiag lminus, lplus;
    SymEigen lplus_eigen;
    DenseMatrix S;
    DenseMatrix lambda;
    double asymmetry = 0.0;
};

LambdaParts lambda_parts(double gamma, const GridSpec& g) {
    LambdaParts p;
    p.lminus = build_lpm(g, gamma, LinearizedOp::LMinus).matrix;
    p.lplus = build_lpm(g, gamma, LinearizedOp::LPlus).matrix;
    p.lplus_eigen = sym_eigen(to_dense(p.lplus));
    const double low = p.lplus_eigen.values.front();
    if (!(low > 0.0))
        throw NumericalError("instability_eigenvalue: L_+ is not positive, lowest eigenvalue " + std::to_string(low));
    p.S = spectral_function(p.lplus_eigen, [](double x) { return std::sqrt(x); });
    p.lambda = matmul(p.S, tri_times(p.lminus, p.S));
    const double big = max_abs(p.lambda);
    p.asymmetry = big > 0.0 ? max_asymmetry(p.lambda) / big : 0.0;
    const std::size_t n = p.lambda.n;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double s = 0.5 * (p.lambda(i, j) + p.lambda(j, i));
            p.lambda(i, j) = p.lambda(j, i) = s;
        }
    return p;
}

}  // namespace

SchroedingerMatrix build_lpm(const GridSpec& g, double gamma, LinearizedOp which) {
    SchroedingerMatrix m{g, gamma, which, build_hgamma(g, gamma), {}, {}};
    const std::size_t n = g.size() - 2;
    m.potential.resize(n);
    m.matrix.diag.resize(n);
    m.matrix.off.assign(n - 1, m.base.off_diagonal);
    for (std::size_t i = 0; i < n; ++i) {
        const double s2 = sech2(g.x(i + 1) / std::numbers::sqrt2);
        m.potential[i] = which == LinearizedOp::LMinus ? -s2 : 2.0 - 3.0 * s2;
        m.matrix.diag[i] = m.base.diagonal[i + 1] + m.potential[i];
    }
    return m;
}

RVec eigs_below(const SchroedingerMatrix& m, double edge, int k_max) {
    return sturm_eigenvalues_below(m.matrix, edge, k_max, 1e-10);
}

std::vector<EigenPair> eigenpairs_below(const SchroedingerMatrix& m, double edge, int k_max) {
    const RVec vals = eigs_below(m, edge, k_max);
    std::vector<EigenPair> out;
    out.reserve(vals.size());
    for (double lam : vals) {
        Field f = embed(m.grid, inverse_iteration(m.matrix, lam));
        f *= 1.0 / l2_norm(f);
        out.push_back({lam, std::move(f)});
    }
    return out;
}

double rayleigh_quotient(const SchroedingerMatrix& m, const Field& u) {
    if (u.grid() != m.grid) throw std::invalid_argument("rayleigh_quotient: grid mismatch");
    const RVec v = interior(u);
    const RVec Av = sym_tridiag_apply(m.matrix, v);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) num += Av[i] * v[i], den += v[i] * v[i];
    if (den == 0.0) throw std::invalid_argument("rayleigh_quotient: zero vector");
    return num / den;
}

std::vector<LambdaPoint> lambda_curve(const std::vector<double>& gammas, const GridSpec& g) {
    std::vector<LambdaPoint> out;
    out.reserve(gammas.size());
    for (double gm : gammas) {
        const SchroedingerMatrix m = build_lpm(g, gm, LinearizedOp::LPlus);
        const double lam = sturm_kth_eigenvalue(m.matrix, 0, 1e-12);
        out.push_back({gm, lam, lam > 2.0 - 1e-3});
    }
    return out;
}

SpectralReport spectral_report(double gamma, const GridSpec& g) {
    SpectralReport r;
    r.gamma = gamma;
    r.lminus_eigs = eigs_below(build_lpm(g, gamma, LinearizedOp::LMinus), 0.0);
    r.lplus_eigs = eigs_below(build_lpm(g, gamma, LinearizedOp::LPlus), 2.0);
    r.n_neg_minus = static_cast<int>(std::count_if(r.lminus_eigs.begin(), r.lminus_eigs.end(), [](double v) { return v < 0.0; }));
    r.n_neg_plus = static_cast<int>(std::count_if(r.lplus_eigs.begin(), r.lplus_eigs.end(), [](double v) { return v < 0.0; }));
    return r;
}

DenseMatrix assemble_lambda(double gamma, const GridSpec& g, double* asymmetry) {
    if (!(gamma > 0.0)) throw std::invalid_argument("assemble_lambda: gamma must be positive");
    LambdaParts p = lambda_parts(gamma, g);
    if (asymmetry) *asymmetry = p.asymmetry;
    return std::move(p.lambda);
}

SpectralReport instability_eigenvalue(double gamma, const GridSpec& g) {
    if (!(gamma > 0.0)) throw std::invalid_argument("instability_eigenvalue: gamma must be positive");
    SpectralReport r = spectral_report(gamma, g);
    const LambdaParts p = lambda_parts(gamma, g);
    r.lambda_asymmetry = p.asymmetry;
    const SymEigen le = sym_eigen(p.lambda);
    const double mu = le.values.front();
    r.mu_min = mu;
    if (!(mu < 0.0)) return r;
    const double lam = std::sqrt(-mu);
    r.growth_rate = lam;

    const std::size_t n = le.values.size();
    RVec w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = le.vectors(i, 0);
    const DenseMatrix Sinv = spectral_function(p.lplus_eigen, [](double x) { return 1.0 / std::sqrt(x); });
    RVec u = matvec(Sinv, w);
    RVec v = matvec(p.S, w);
    for (double& x : v) x /= lam;

    const RVec Lpu = sym_tridiag_apply(p.lplus, u);
    const RVec Lmv = sym_tridiag_apply(p.lminus, v);
    RVec r1(n), r2(n);
    for (std::size_t i = 0; i < n; ++i) r1[i] = Lpu[i] - lam * v[i], r2[i] = Lmv[i] + lam * u[i];
    const double res = (enorm(r1) + enorm(r2)) / (enorm(u) + enorm(v));
    r.pair = UnstablePair{lam, embed(g, u), embed(g, v), res};
    return r;
}

Field growing_mode_direction(const UnstablePair& pair, const GridSpec& target) {
    const GridSpec& src = pair.u.grid();
    if (target.L() > src.L() * (1.0 + 1e-12)) throw std::invalid_argument("growing_mode_direction: target wider than source");
    const double hs = src.h();
    Field out(target);
    for (std::size_t j = 1; j + 1 < out.size(); ++j) {
        const double x = target.x(j);
        const double pos = (x + src.L()) / hs;
        std::size_t k = static_cast<std::size_t>(std::floor(pos));
        if (k + 1 >= src.size()) k = src.size() - 2;
        const double f = pos - static_cast<double>(k);
        const cplx a = pair.u[k] - cplx(0.0, 1.0) * pair.v[k];
        const cplx b = pair.u[k + 1] - cplx(0.0, 1.0) * pair.v[k + 1];
        out[j] = (1.0 - f) * a + f * b;
    }
    out[0] = 0.0;
    out[out.size() - 1] = 0.0;
    const double nrm = l2_norm(out);
    if (!(nrm > 0.0)) throw NumericalError("growing_mode_direction: zero mode");
    out *= 1.0 / nrm;
    return out;
}

}  // namespace gpdelta
