#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gpdelta/energy.hpp"
#include "gpdelta/grid.hpp"
#include "gpdelta/solitons.hpp"
#include "gpdelta/tridiagonal.hpp"

namespace gpdelta {

struct EvolveConfig {
    double dt = 1e-3;
    double t_end = 0.0;
    double gamma = 0.0;
    double nonlinear_tol = 1e-12;
    int nonlinear_max_iter = 50;
    int record_every = 1;
    bool linear = false;          // drop F: the linear Schroedinger flow
    bool keep_snapshots = true;   // otherwise only the final field is kept
};

void validate(const EvolveConfig& cfg);

// One Crank-Nicolson step of i u_t = H_gamma u - F(u), boundary nodes
// clamped. The complex tridiagonal system is factored once per stepper.
class CrankNicolsonStepper {
public:
    CrankNicolsonStepper(const GridSpec& g, const EvolveConfig& cfg);

    // Throws ConvergenceError if the midpoint fixed point does not settle.
    Field step(const Field& u);
    int last_iterations() const noexcept { return last_iterations_; }
    int max_iterations_seen() const noexcept { return max_iterations_; }

private:
    GridSpec grid_;
    EvolveConfig cfg_;
    DeltaOperator op_;
    ThomasLU<cplx> lu_;
    int last_iterations_ = 0;
    int max_iterations_ = 0;
};

Field cn_step(const Field& u, const EvolveConfig& cfg);

struct Trajectory {
    std::vector<double> times;
    std::vector<Field> snapshots;      // empty unless keep_snapshots
    std::vector<double> energy_trace;  // discrete E_gamma
    std::optional<std::vector<double>> orbit_trace;
    std::optional<Field> final_state;
    int max_nonlinear_iterations = 0;
};

Trajectory evolve(const Field& u0, const EvolveConfig& cfg, std::optional<StateKind> orbit_target = std::nullopt);

struct GrowthFit {
    double rate = 0.0;
    double intercept = 0.0;
    double t_begin = 0.0;
    double t_end = 0.0;
    int points = 0;
};

struct InstabilityRun {
    Trajectory trajectory;  // orbit_trace holds d0 to the kink orbit
    std::optional<GrowthFit> fit;
    double window_lo = 0.0;
    double window_hi = 0.0;
};

// Least-squares slope of ln d0 over the first contiguous run of samples with
// d0 in [lo, hi]; needs at least 3 samples.
std::optional<GrowthFit> fit_growth(const std::vector<double>& times, const std::vector<double>& d, double lo, double hi);

// Evolves kappa + eps * direction and fits the growth of d0 to the kink orbit
// over [10 eps, 1e-2]. Stops once d0 leaves the window from above.
InstabilityRun instability_run(double gamma, double eps, const Field& direction, EvolveConfig cfg);

// Smooth complex perturbation for (seed, index): four Gaussian bumps with
// centres in [-5, 5], boundary values removed, unit L2 norm.
Field seeded_perturbation(const GridSpec& g, std::uint64_t seed, std::uint64_t index);

struct StabilityPoint {
    double d0_initial = 0.0;  // d0 of u0 to the minimiser orbit
    double sup_d0 = 0.0;      // over the recorded samples, t = 0 included
    double max_relative_drift = 0.0;
};

// Evolves minimizer(gamma) + c w with w = seeded_perturbation(g, seed,
// index) and c chosen so that d0(u0, orbit) is a seeded fraction in
// [0.2, 1] of amplitude (never above it). cfg.gamma is overwritten.
StabilityPoint stability_run(double gamma, const GridSpec& g, std::uint64_t seed, std::uint64_t index, double amplitude,
                             EvolveConfig cfg);

}  // namespace gpdelta
