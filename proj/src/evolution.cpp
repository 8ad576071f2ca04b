#include "gpdelta/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "gpdelta/errors.hpp"

namespace gpdelta {

void validate(const EvolveConfig& cfg) {
    if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) throw std::invalid_argument("EvolveConfig: dt must be positive");
    if (!(cfg.t_end >= 0.0) || !std::isfinite(cfg.t_end)) throw std::invalid_argument("EvolveConfig: t_end must be >= 0");
    if (!(cfg.nonlinear_tol > 0.0)) throw std::invalid_argument("EvolveConfig: nonlinear_tol must be positive");
    if (cfg.nonlinear_max_iter < 1) throw std::invalid_argument("EvolveConfig: nonlinear_max_iter must be >= 1");
    if (cfg.record_every < 1) throw std::invalid_argument("EvolveConfig: record_every must be >= 1");
    if (!std::isfinite(cfg.gamma)) throw std::invalid_argument("EvolveConfig: gamma must be finite");
}

CrankNicolsonStepper::CrankNicolsonStepper(const GridSpec& g, const EvolveConfig& cfg)
    : grid_(g), cfg_(cfg), op_(build_hgamma(g, cfg.gamma)) {
    validate(cfg);
    const std::size_t n = g.size() - 2;
    const cplx c(0.0, 0.5 * cfg.dt);
    std::vector<cplx> sub(n - 1, c * op_.off_diagonal), sup(n - 1, c * op_.off_diagonal), diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = 1.0 + c * op_.diagonal[i + 1];
    lu_ = ThomasLU<cplx>(sub, diag, sup);
}

Field CrankNicolsonStepper::step(const Field& u) {
    if (u.grid() != grid_) throw std::invalid_argument("cn_step: grid mismatch");
    const std::size_t N = u.size(), n = N - 2;
    const cplx c(0.0, 0.5 * cfg_.dt);
    const cplx idt(0.0, cfg_.dt);
    const double off = op_.off_diagonal;

    // Explicit half of the linear part; clamped boundaries enter both sides
    // with the same value, so their LHS coupling moves over as -c*off*u_b.
    CVec base(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = i + 1;
        base[i] = u[j] - c * (op_.diagonal[j] * u[j] + off * (u[j - 1] + u[j + 1]));
    }
    base[0] -= c * off * u[0];
    base[n - 1] -= c * off * u[N - 1];

    CVec next(n), rhs(n);
    if (cfg_.linear) {
        rhs = base;
        lu_.solve(rhs);
        next = rhs;
        last_iterations_ = 1;
    } else {
        // Predictor: nonlinearity frozen at u.
        for (std::size_t i = 0; i < n; ++i) {
            const cplx v = u[i + 1];
            rhs[i] = base[i] + idt * (1.0 - std::norm(v)) * v;
        }
        lu_.solve(rhs);
        next = rhs;
        int it = 0;
        double diff = 0.0;
        for (;;) {
            ++it;
            for (std::size_t i = 0; i < n; ++i) {
                const cplx mid = 0.5 * (u[i + 1] + next[i]);
                rhs[i] = base[i] + idt * (1.0 - std::norm(mid)) * mid;
            }
            lu_.solve(rhs);
            diff = 0.0;
            for (std::size_t i = 0; i < n; ++i) diff = std::max(diff, std::norm(rhs[i] - next[i]));
            diff = std::sqrt(diff);
            next.swap(rhs);
            if (!std::isfinite(diff)) throw ConvergenceError("cn_step: non-finite iterate", diff, it);
            if (diff <= cfg_.nonlinear_tol) break;
            if (it >= cfg_.nonlinear_max_iter)
                throw ConvergenceError("cn_step: fixed point did not converge, residual " + std::to_string(diff), diff, it);
        }
        last_iterations_ = it;
    }
    max_iterations_ = std::max(max_iterations_, last_iterations_);
    Field r(grid_);
    r[0] = u[0];
    r[N - 1] = u[N - 1];
    for (std::size_t i = 0; i < n; ++i) r[i + 1] = next[i];
    return r;
}

Field cn_step(const Field& u, const EvolveConfig& cfg) {
    CrankNicolsonStepper s(u.grid(), cfg);
    return s.step(u);
}

Trajectory evolve(const Field& u0, const EvolveConfig& cfg, std::optional<StateKind> orbit_target) {
    validate(cfg);
    if (!u0.all_finite()) throw std::invalid_argument("evolve: non-finite initial field");
    CrankNicolsonStepper stepper(u0.grid(), cfg);
    Trajectory tr;
    if (orbit_target) tr.orbit_trace.emplace();
    auto record = [&](double t, const Field& u) {
        tr.times.push_back(t);
        tr.energy_trace.push_back(energy_gamma(u, cfg.gamma).total);
        if (orbit_target) tr.orbit_trace->push_back(orbit_distance(u, *orbit_target, cfg.gamma).distance);
        if (cfg.keep_snapshots) tr.snapshots.push_back(u);
    };
    const long steps = std::lround(std::ceil(cfg.t_end / cfg.dt - 1e-9));
    Field u = u0;
    record(0.0, u);
    for (long k = 1; k <= steps; ++k) {
        const double t = static_cast<double>(k) * cfg.dt;
        try {
            u = stepper.step(u);
        } catch (const ConvergenceError& e) {
            throw ConvergenceError(std::string(e.what()) + " at t = " + std::to_string(t), e.residual(), e.iterations());
        }
        if (k % cfg.record_every == 0 || k == steps) record(t, u);
    }
    tr.max_nonlinear_iterations = stepper.max_iterations_seen();
    tr.final_state = u;
    return tr;
}

std::optional<GrowthFit> fit_growth(const std::vector<double>& times, const std::vector<double>& d, double lo, double hi) {
    if (times.size() != d.size()) throw std::invalid_argument("fit_growth: length mismatch");
    std::size_t b = 0;
    while (b < d.size() && !(d[b] >= lo && d[b] <= hi)) ++b;
    std::size_t e = b;
    while (e < d.size() && d[e] >= lo && d[e] <= hi) ++e;
    if (e - b < 3) return std::nullopt;
    double st = 0.0, sy = 0.0;
    const double m = static_cast<double>(e - b);
    for (std::size_t i = b; i < e; ++i) st += times[i], sy += std::log(d[i]);
    st /= m;
    sy /= m;
    double stt = 0.0, sty = 0.0;
    for (std::size_t i = b; i < e; ++i) {
        stt += (times[i] - st) * (times[i] - st);
        sty += (times[i] - st) * (std::log(d[i]) - sy);
    }
    GrowthFit f;
    f.rate = sty / stt;
    f.intercept = sy - f.rate * st;
    f.t_begin = times[b];
    f.t_end = times[e - 1];
    f.points = static_cast<int>(e - b);
    return f;
}

InstabilityRun instability_run(double gamma, double eps, const Field& direction, EvolveConfig cfg) {
    if (!(gamma > 0.0)) throw std::invalid_argument("instability_run: gamma must be positive");
    if (!(eps > 0.0) || !(eps < 1e-2)) throw std::invalid_argument("instability_run: eps must lie in (0, 1e-2)");
    const double nrm = l2_norm(direction);
    if (std::abs(nrm - 1.0) > 1e-6) throw std::invalid_argument("instability_run: direction must have unit L2 norm");
    cfg.gamma = gamma;
    cfg.linear = false;
    validate(cfg);

    InstabilityRun run;
    run.window_lo = 10.0 * eps;
    run.window_hi = 1e-2;
    const GridSpec& g = direction.grid();
    Field u = eval_state({StateKind::Kink, gamma, 0.0}, g);
    for (std::size_t j = 0; j < u.size(); ++j) u[j] += eps * direction[j];

    CrankNicolsonStepper stepper(g, cfg);
    Trajectory& tr = run.trajectory;
    tr.orbit_trace.emplace();
    auto record = [&](double t) {
        tr.times.push_back(t);
        tr.energy_trace.push_back(energy_gamma(u, gamma).total);
        tr.orbit_trace->push_back(orbit_distance(u, StateKind::Kink, gamma).distance);
        if (cfg.keep_snapshots) tr.snapshots.push_back(u);
    };
    const long steps = std::lround(std::ceil(cfg.t_end / cfg.dt - 1e-9));
    record(0.0);
    bool entered = false;
    for (long k = 1; k <= steps; ++k) {
        const double t = static_cast<double>(k) * cfg.dt;
        try {
            u = stepper.step(u);
        } catch (const ConvergenceError& e) {
            throw ConvergenceError(std::string(e.what()) + " at t = " + std::to_string(t), e.residual(), e.iterations());
        }
        if (k % cfg.record_every == 0 || k == steps) {
            record(t);
            const double d = tr.orbit_trace->back();
            if (d >= run.window_lo) entered = true;
            if (entered && d > run.window_hi) break;
        }
    }
    tr.max_nonlinear_iterations = stepper.max_iterations_seen();
    tr.final_state = u;
    run.fit = fit_growth(tr.times, *tr.orbit_trace, run.window_lo, run.window_hi);
    return run;
}

Field seeded_perturbation(const GridSpec& g, std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), 0x5eedu};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> amp(-1.0, 1.0), pos(-5.0, 5.0), ang(0.0, 2.0 * std::numbers::pi);
    cplx a[4];
    double xc[4];
    for (int k = 0; k < 4; ++k) {
        const double r = amp(rng), phi = ang(rng);
        a[k] = std::polar(r, phi);
        xc[k] = pos(rng);
    }
    Field w = sample(g, [&](double x) {
        cplx s = 0.0;
        for (int k = 0; k < 4; ++k) s += a[k] * std::exp(-(x - xc[k]) * (x - xc[k]));
        return s;
    });
    w[0] = w[w.size() - 1] = 0.0;
    const double n = l2_norm(w);
    if (!(n > 0.0)) throw NumericalError("seeded_perturbation: zero perturbation");
    w *= 1.0 / n;
    return w;
}

StabilityPoint stability_run(double gamma, const GridSpec& g, std::uint64_t seed, std::uint64_t index, double amplitude,
                             EvolveConfig cfg) {
    if (gamma == 0.0) throw std::invalid_argument("stability_run: gamma must be nonzero");
    if (!(amplitude > 0.0)) throw std::invalid_argument("stability_run: amplitude must be positive");
    cfg.gamma = gamma;
    cfg.linear = false;
    cfg.keep_snapshots = false;
    validate(cfg);
    const StationaryState s = minimizer(gamma);
    const Field base = eval_state(s, g);
    const Field w = seeded_perturbation(g, seed, index);

    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), 0xa3d1u};
    std::mt19937_64 rng(seq);
    const double target = amplitude * std::uniform_real_distribution<double>(0.2, 1.0)(rng);
    // d0 is close to linear in the size of a small perturbation; a few
    // secant corrections land on the target.
    double c = target / std::max(1e-300, d0(base + w, base));
    double d = 0.0;
    for (int it = 0; it < 6; ++it) {
        d = orbit_distance(base + c * w, s.kind, gamma).distance;
        if (std::abs(d - target) <= 1e-3 * target) break;
        c *= target / d;
    }
    while (d > amplitude) {
        c *= 0.9;
        d = orbit_distance(base + c * w, s.kind, gamma).distance;
    }

    const Trajectory tr = evolve(base + c * w, cfg, s.kind);
    StabilityPoint p;
    p.d0_initial = tr.orbit_trace->front();
    for (double x : *tr.orbit_trace) p.sup_d0 = std::max(p.sup_d0, x);
    const double e0 = tr.energy_trace.front();
    for (double e : tr.energy_trace) p.max_relative_drift = std::max(p.max_relative_drift, std::abs(e - e0));
    p.max_relative_drift /= std::abs(e0);
    return p;
}

}  // namespace gpdelta
