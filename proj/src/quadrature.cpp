#include "gpdelta/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <queue>
#include <vector>
#include <stdexcept>

namespace gpdelta {

namespace {

constexpr double wg[5] = {.066671344308688137593568809893332, .149451349150580593145776339657697,
                          .219086362515982043995534934228163, .269266719309996355091226921569469,
                          .295524224714752870173892994651338};
constexpr double xgk[11] = {.995657163025808080735527280689003, .973906528517171720077964012084452,
                            .930157491355708226001207180059508, .865063366688984510732096688423493,
                            .780817726586416897063717578345042, .679409568299024406234327365114874,
                            .562757134668604683339000099272694, .433395394129247190799265943165784,
                            .294392862701460198131126603103866, .14887433898163121088482600112972,
                            0.};
constexpr double wgk[11] = {.011694638867371874278064396062192, .03255816230796472747881897245939,
                            .05475589657435199603138130024458, .07503967481091995276704314091619,
                            .093125454583697605535065465083366, .109387158802297641899210590325805,
                            .123491976262065851077958109831074, .134709217311473325928054001771707,
                            .142775938577060080797094273138717, .147739104901338491374841515972068,
                            .149445554002916905664936468389821};

using Fn = std::function<std::complex<double>(double)>;

constexpr double kEps = 2.220446049250313e-16;
constexpr std::size_t kMaxPieces = 1 << 16;

// Kronrod value plus the QUADPACK error estimate; floor is the roundoff
// level 50 eps int|f| below which bisection cannot help.
void qk21(const Fn& f, double a, double b, std::complex<double>& kron, double& err, double& floor) {
    const double c = 0.5 * (a + b), hl = 0.5 * (b - a);
    std::complex<double> fv[21];
    fv[20] = f(c);
    for (int j = 0; j < 10; ++j) {
        const double dx = hl * xgk[j];
        fv[2 * j] = f(c - dx);
        fv[2 * j + 1] = f(c + dx);
    }
    std::complex<double> gauss = 0.0;
    kron = wgk[10] * fv[20];
    double resabs = wgk[10] * std::abs(fv[20]);
    for (int j = 0; j < 10; ++j) {
        const std::complex<double> s = fv[2 * j] + fv[2 * j + 1];
        kron += wgk[j] * s;
        resabs += wgk[j] * (std::abs(fv[2 * j]) + std::abs(fv[2 * j + 1]));
        if (j % 2 == 1) gauss += wg[j / 2] * s;
    }
    const std::complex<double> mean = 0.5 * kron;
    double resasc = wgk[10] * std::abs(fv[20] - mean);
    for (int j = 0; j < 10; ++j) resasc += wgk[j] * (std::abs(fv[2 * j] - mean) + std::abs(fv[2 * j + 1] - mean));
    const double ahl = std::abs(hl);
    kron *= hl;
    gauss *= hl;
    resabs *= ahl;
    resasc *= ahl;
    err = std::abs(kron - gauss);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    floor = 50.0 * kEps * resabs;
    err = std::max(err, floor);
}

struct Piece {
    double a, b, err;
    std::complex<double> value;
    int depth;
    bool operator<(const Piece& o) const { return err < o.err; }
};

// Global adaptive bisection: always split the piece with the largest error
// estimate, until the sum meets tol. Pieces at roundoff level or max_depth
// are retired unsplit.
void adapt(const Fn& f, double a, double b, double tol, int max_depth, QuadResult& r) {
    std::priority_queue<Piece> open;
    std::vector<Piece> done;
    double total = 0.0, floors = 0.0;
    bool capped = false;
    auto push = [&](double lo, double hi, int depth) {
        Piece p{lo, hi, 0.0, {}, depth};
        double fl;
        qk21(f, lo, hi, p.value, p.err, fl);
        r.evaluations += 21;
        total += p.err;
        if (p.err <= fl) {
            floors += p.err;
            done.push_back(p);
        } else {
            open.push(p);
        }
    };
    push(a, b, 0);
    while (!open.empty() && total > std::max(tol, floors)) {
        if (open.size() + done.size() >= kMaxPieces) {
            capped = true;
            break;
        }
        const Piece p = open.top();
        open.pop();
        if (p.depth >= max_depth) {
            capped = true;
            done.push_back(p);
            continue;
        }
        total -= p.err;
        const double m = 0.5 * (p.a + p.b);
        push(p.a, m, p.depth + 1);
        push(m, p.b, p.depth + 1);
    }
    for (; !open.empty(); open.pop()) done.push_back(open.top());
    std::complex<long double> acc = 0.0L;
    r.abs_error = 0.0;
    for (const auto& p : done) {
        acc += std::complex<long double>(p.value.real(), p.value.imag());
        r.abs_error += p.err;
    }
    r.value = {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
    r.converged = r.abs_error <= std::max(tol, floors) || (!capped && open.empty());
}

}  // namespace

QuadResult integrate_gk21(const Fn& f, double a, double b, double abs_tol, int max_depth) {
    if (!std::isfinite(a) || !std::isfinite(b)) throw std::invalid_argument("integrate_gk21: infinite bounds");
    QuadResult r;
    r.value = 0.0;
    if (a == b) return r;
    adapt(f, a, b, abs_tol, max_depth, r);
    return r;
}

QuadResult integrate_gk21_panels(const Fn& f, double a, double b, int panels, double abs_tol, int max_depth) {
    if (panels < 1) throw std::invalid_argument("integrate_gk21_panels: panels must be positive");
    QuadResult r;
    // Oscillatory panels cancel heavily; accumulate in extended precision.
    std::complex<long double> acc = 0.0L;
    const double w = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * w, hi = p + 1 == panels ? b : a + (p + 1) * w;
        QuadResult q = integrate_gk21(f, lo, hi, abs_tol / panels, max_depth);
        acc += std::complex<long double>(q.value.real(), q.value.imag());
        r.abs_error += q.abs_error;
        r.evaluations += q.evaluations;
        r.converged = r.converged && q.converged;
    }
    r.value = {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
    return r;
}

}  // namespace gpdelta
