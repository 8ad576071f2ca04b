#include "gpdelta/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace gpdelta {

namespace {

double pivmin_of(const SymTridiag& m) {
    double emax = 1.0;
    for (double e : m.off) emax = std::max(emax, e * e);
    return std::numeric_limits<double>::min() * emax;
}

int count_below(const SymTridiag& m, double x, double pivmin) {
    int c = 0;
    double d = m.diag[0] - x;
    if (std::abs(d) < pivmin) d = -pivmin;
    if (d < 0.0) ++c;
    for (std::size_t i = 1; i < m.diag.size(); ++i) {
        d = m.diag[i] - x - m.off[i - 1] * m.off[i - 1] / d;
        if (std::abs(d) < pivmin) d = -pivmin;
        if (d < 0.0) ++c;
    }
    return c;
}

void check(const SymTridiag& m) {
    if (m.diag.empty() || m.off.size() + 1 != m.diag.size())
        throw std::invalid_argument("SymTridiag: off must have length n-1");
}

// Smallest x in [lo, hi] with count(x) > k, to absolute tol.
double bisect_kth(const SymTridiag& m, int k, double lo, double hi, double tol, double pivmin) {
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (count_below(m, mid, pivmin) > k)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

int sturm_count(const SymTridiag& m, double x) {
    check(m);
    return count_below(m, x, pivmin_of(m));
}

void gershgorin_bounds(const SymTridiag& m, double& lo, double& hi) {
    check(m);
    const std::size_t n = m.diag.size();
    lo = std::numeric_limits<double>::infinity();
    hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(m.off[i - 1]);
        if (i + 1 < n) r += std::abs(m.off[i]);
        lo = std::min(lo, m.diag[i] - r);
        hi = std::max(hi, m.diag[i] + r);
    }
    const double pad = 2.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi)) + 1e-300;
    lo -= pad;
    hi += pad;
}

std::vector<double> sturm_eigenvalues_below(const SymTridiag& m, double edge, int k_max, double tol) {
    check(m);
    const double pivmin = pivmin_of(m);
    const int count = count_below(m, edge, pivmin);
    if (count > k_max)
        throw EigenCountExceeded("sturm: " + std::to_string(count) + " eigenvalues below edge exceed k_max", count);
    double lo, hi;
    gershgorin_bounds(m, lo, hi);
    hi = std::min(hi, edge);
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) out[static_cast<std::size_t>(k)] = bisect_kth(m, k, lo, hi, tol, pivmin);
    return out;
}

double sturm_kth_eigenvalue(const SymTridiag& m, int k, double tol) {
    check(m);
    if (k < 0 || static_cast<std::size_t>(k) >= m.size()) throw std::invalid_argument("sturm: eigenvalue index out of range");
    double lo, hi;
    gershgorin_bounds(m, lo, hi);
    return bisect_kth(m, k, lo, hi, tol, pivmin_of(m));
}

std::vector<double> sym_tridiag_apply(const SymTridiag& m, const std::vector<double>& v) {
    check(m);
    const std::size_t n = m.size();
    if (v.size() != n) throw std::invalid_argument("sym_tridiag_apply: length mismatch");
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = m.diag[i] * v[i];
        if (i > 0) s += m.off[i - 1] * v[i - 1];
        if (i + 1 < n) s += m.off[i] * v[i + 1];
        r[i] = s;
    }
    return r;
}

std::vector<double> inverse_iteration(const SymTridiag& m, double lambda, int max_iter) {
    check(m);
    const std::size_t n = m.size();
    double lo, hi;
    gershgorin_bounds(m, lo, hi);
    const double scale = std::max(std::abs(lo), std::abs(hi));
    // Nudge the shift off the eigenvalue so the factorization stays finite.
    const double shift = lambda + 64.0 * std::numeric_limits<double>::epsilon() * scale;

    // Partial-pivoting LU of T - shift I, band rows: u0 (diag), u1, u2 (fill).
    std::vector<double> u0(n), u1(n, 0.0), u2(n, 0.0), l(n, 0.0);
    std::vector<char> swapped(n, 0);
    std::vector<double> a(n), b(n, 0.0), c(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) a[i] = m.diag[i] - shift;
    for (std::size_t i = 0; i + 1 < n; ++i) b[i] = m.off[i], c[i] = m.off[i];
    // Row i currently holds (a[i], b[i], fill) in columns i, i+1, i+2.
    double cur_d = a[0], cur_e = n > 1 ? b[0] : 0.0, cur_f = 0.0;
    const double tiny = std::numeric_limits<double>::epsilon() * scale + 1e-300;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double nd = c[i];                       // next row, column i
        const double ne = a[i + 1];                   // next row, column i+1
        const double nf = i + 2 < n ? b[i + 1] : 0.0;  // next row, column i+2
        if (std::abs(nd) > std::abs(cur_d)) {
            swapped[i] = 1;
            u0[i] = nd;
            u1[i] = ne;
            u2[i] = nf;
            l[i] = cur_d / nd;
            cur_d = cur_e - l[i] * ne;
            cur_e = cur_f - l[i] * nf;
        } else {
            if (cur_d == 0.0) cur_d = tiny;
            u0[i] = cur_d;
            u1[i] = cur_e;
            u2[i] = cur_f;
            l[i] = nd / cur_d;
            cur_d = ne - l[i] * cur_e;
            cur_e = nf - l[i] * cur_f;
        }
        cur_f = 0.0;
    }
    u0[n - 1] = cur_d == 0.0 ? tiny : cur_d;

    auto solve = [&](std::vector<double>& x) {
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (swapped[i]) std::swap(x[i], x[i + 1]);
            x[i + 1] -= l[i] * x[i];
        }
        for (std::size_t i = n; i-- > 0;) {
            double s = x[i];
            if (i + 1 < n) s -= u1[i] * x[i + 1];
            if (i + 2 < n) s -= u2[i] * x[i + 2];
            x[i] = s / u0[i];
        }
    };
    auto normalize = [](std::vector<double>& x) {
        double s = 0.0;
        for (double v : x) s += v * v;
        s = std::sqrt(s);
        if (!(s > 0.0) || !std::isfinite(s)) throw NumericalError("inverse_iteration: degenerate iterate");
        for (double& v : x) v /= s;
    };

    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = 1.0 + 0.25 * std::sin(0.7 * static_cast<double>(i) + 0.3);
    normalize(x);
    for (int it = 0; it < max_iter; ++it) {
        std::vector<double> prev = x;
        solve(x);
        normalize(x);
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += x[i] * prev[i];
        if (it >= 1 && 1.0 - std::abs(dot) < 1e-15) break;
    }
    // Fix the sign so the largest component is positive.
    std::size_t imax = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (std::abs(x[i]) > std::abs(x[imax])) imax = i;
    if (x[imax] < 0.0)
        for (double& v : x) v = -v;
    return x;
}

}  // namespace gpdelta
