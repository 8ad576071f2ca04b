#include "gpdelta/variational.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

#include "gpdelta/tridiagonal.hpp"

namespace gpdelta {

void validate(const FlowConfig& cfg) {
    if (!(cfg.tau > 0.0) || !std::isfinite(cfg.tau)) throw std::invalid_argument("FlowConfig: tau must be positive");
    if (!(cfg.grad_tol > 0.0)) throw std::invalid_argument("FlowConfig: grad_tol must be positive");
    if (cfg.max_iters < 0) throw std::invalid_argument("FlowConfig: max_iters must be >= 0");
    if (!(cfg.stabilization >= 0.0)) throw std::invalid_argument("FlowConfig: stabilization must be >= 0");
}

void project_odd(Field& u) {
    const std::size_t n = u.size();
    for (std::size_t j = 0; j <= n / 2; ++j) {
        const cplx a = 0.5 * (u[j] - u[n - 1 - j]);
        u[j] = a;
        u[n - 1 - j] = -a;
    }
}

namespace {

class ImplicitStep {
public:
    ImplicitStep(const GridSpec& g, double gamma, double sigma) : op_(build_hgamma(g, gamma)), sigma_(sigma) {}

    void factor(double tau) {
        const std::size_t n = op_.diagonal.size() - 2;
        std::vector<double> off(n - 1, tau * op_.off_diagonal), diag(n);
        for (std::size_t i = 0; i < n; ++i) diag[i] = 1.0 + tau * (op_.diagonal[i + 1] + sigma_);
        lu_ = ThomasLU<double>(off, diag, off);
        tau_ = tau;
    }

    Field apply(const Field& u) const {
        const std::size_t N = u.size(), n = N - 2;
        CVec rhs(n);
        for (std::size_t i = 0; i < n; ++i) {
            const cplx v = u[i + 1];
            rhs[i] = v + tau_ * ((1.0 - std::norm(v)) * v + sigma_ * v);
        }
        rhs[0] -= tau_ * op_.off_diagonal * u[0];
        rhs[n - 1] -= tau_ * op_.off_diagonal * u[N - 1];
        lu_.solve(rhs);
        Field r(u.grid());
        r[0] = u[0];
        r[N - 1] = u[N - 1];
        for (std::size_t i = 0; i < n; ++i) r[i + 1] = rhs[i];
        return r;
    }

private:
    DeltaOperator op_;
    double sigma_;
    double tau_ = 0.0;
    ThomasLU<double> lu_;
};

}  // namespace

FlowResult gradient_flow(const Field& u0, double gamma, const FlowConfig& cfg) {
    validate(cfg);
    if (!u0.all_finite()) throw std::invalid_argument("gradient_flow: non-finite initial field");
    const double left = std::abs(u0[0]), right = std::abs(u0[u0.size() - 1]);
    if (std::abs(left - 1.0) > 1e-6 || std::abs(right - 1.0) > 1e-6)
        throw std::invalid_argument("gradient_flow: boundary modulus must be 1 (clamped)");
    FlowResult res{u0, 0, 0.0, 0.0, false, 0, 0.0, {}};
    if (cfg.odd_projection) project_odd(res.u);
    double tau = cfg.tau;
    ImplicitStep imp(u0.grid(), gamma, cfg.stabilization);
    if (cfg.implicit) imp.factor(tau);

    double E = energy_gamma(res.u, gamma).total;
    res.energy_history.push_back(E);
    double gn = gradient_norm(res.u, gamma);
    while (gn >= cfg.grad_tol && res.iterations < cfg.max_iters) {
        Field cand(u0.grid());
        if (cfg.implicit) {
            cand = imp.apply(res.u);
        } else {
            cand = res.u - tau * energy_gradient(res.u, gamma);
        }
        if (cfg.odd_projection) project_odd(cand);
        const double En = energy_gamma(cand, gamma).total;
        if (!(En <= E + 1e-14 * std::max(1.0, std::abs(E)))) {
            tau *= 0.5;
            ++res.halvings;
            if (tau < 1e-14) break;
            if (cfg.implicit) imp.factor(tau);
            continue;
        }
        res.u = std::move(cand);
        E = En;
        res.energy_history.push_back(E);
        ++res.iterations;
        gn = gradient_norm(res.u, gamma);
    }
    res.energy = E;
    res.gradient_norm = gn;
    res.converged = gn < cfg.grad_tol;
    res.final_tau = tau;
    return res;
}

Field seeded_initial_field(const GridSpec& g, std::uint64_t seed, std::uint64_t index, bool odd) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> amp(-0.3, 0.3), pos(-5.0, 5.0), ang(0.0, 2.0 * std::numbers::pi);
    const double theta0 = ang(rng);
    struct Bump {
        cplx a;
        double x;
    };
    std::vector<Bump> bumps;
    for (int k = 0; k < 4; ++k) {
        const double a = amp(rng), phi = ang(rng), xk = pos(rng);
        bumps.push_back({std::polar(1.0, phi) * a, xk});
    }
    Field u(g);
    for (std::size_t j = 0; j < u.size(); ++j) {
        const double x = g.x(j);
        cplx s = 0.0;
        for (const auto& b : bumps) {
            const double e = std::exp(-(x - b.x) * (x - b.x));
            s += b.a * (odd ? e - std::exp(-(x + b.x) * (x + b.x)) : e);
        }
        u[j] = odd ? std::tanh(x / std::numbers::sqrt2) + s : std::polar(1.0, theta0) * (1.0 + s);
    }
    return u;
}

std::string to_string(Basin b) {
    switch (b) {
        case Basin::EvenTanh: return "even_tanh";
        case Basin::EvenCoth: return "even_coth";
        case Basin::Kink: return "kink";
        case Basin::Other: return "other";
        case Basin::NonConverged: return "non_converged";
    }
    return "other";
}

MinimizeReport minimize_report(double gamma, int n_starts, const FlowConfig& cfg, const GridSpec& g, int jobs,
                               double basin_tol) {
    if (gamma == 0.0 || !std::isfinite(gamma)) throw std::invalid_argument("minimize_report: gamma must be nonzero");
    if (n_starts < 1) throw std::invalid_argument("minimize_report: n_starts must be positive");
    validate(cfg);
    const StationaryState target = minimizer(gamma);
    MinimizeReport rep;
    rep.gamma = gamma;
    rep.closed_form_min = closed_form_energy(target);
    rep.starts.resize(static_cast<std::size_t>(n_starts));

    auto run_one = [&](int i) {
        const Field u0 = seeded_initial_field(g, cfg.seed, static_cast<std::uint64_t>(i), cfg.odd_projection);
        const FlowResult fr = gradient_flow(u0, gamma, cfg);
        StartSummary s;
        s.index = i;
        s.energy = fr.energy;
        s.energy_extrapolated = g.M() % 2 == 0 ? energy_gamma_extrapolated(fr.u, gamma) : fr.energy;
        s.distance_minimizer = orbit_distance(fr.u, target.kind, gamma).distance;
        s.distance_kink = orbit_distance(fr.u, StateKind::Kink, gamma).distance;
        s.iterations = fr.iterations;
        s.converged = fr.converged;
        if (!fr.converged)
            s.basin = Basin::NonConverged;
        else if (s.distance_minimizer < basin_tol)
            s.basin = target.kind == StateKind::EvenTanh ? Basin::EvenTanh : Basin::EvenCoth;
        else if (s.distance_kink < basin_tol)
            s.basin = Basin::Kink;
        else if (gamma < 0.0 && orbit_distance(fr.u, StateKind::EvenTanh, gamma).distance < basin_tol)
            s.basin = Basin::EvenTanh;
        else
            s.basin = Basin::Other;
        rep.starts[static_cast<std::size_t>(i)] = s;
    };

    jobs = std::clamp(jobs, 1, n_starts);
    if (jobs == 1) {
        for (int i = 0; i < n_starts; ++i) run_one(i);
        return rep;
    }
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(jobs));
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w)
        pool.emplace_back([&, w] {
            try {
                for (int i = next++; i < n_starts; i = next++) run_one(i);
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return rep;
}

}  // namespace gpdelta
