#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gpdelta/energy.hpp"
#include "gpdelta/grid.hpp"
#include "gpdelta/solitons.hpp"

namespace gpdelta {

struct FlowConfig {
    double tau = 100.0;
    bool implicit = true;         // semi-implicit in H_gamma; explicit Euler otherwise
    double stabilization = 2.0;   // sigma, added to both sides of the implicit step
    int max_iters = 100000;
    double grad_tol = 1e-8;       // interior L2 norm of energy_gradient
    std::uint64_t seed = 0;
    bool odd_projection = false;  // antisymmetrise after every step
};

void validate(const FlowConfig& cfg);

struct FlowResult {
    Field u;
    int iterations = 0;
    double energy = 0.0;          // discrete E_gamma of u
    double gradient_norm = 0.0;
    bool converged = false;
    int halvings = 0;
    double final_tau = 0.0;
    std::vector<double> energy_history;  // E_gamma after each accepted step, starting with u0
};

// Boundary nodes stay at their initial values. Steps that raise E_gamma by
// more than 1e-14 max(1, |E|) are rejected and tau halved.
FlowResult gradient_flow(const Field& u0, double gamma, const FlowConfig& cfg);

// Reproducible start for (seed, index): e^{i theta0}(1 + 4 complex Gaussian
// bumps), or for odd starts tanh(x/sqrt2) plus antisymmetrised bumps.
Field seeded_initial_field(const GridSpec& g, std::uint64_t seed, std::uint64_t index, bool odd);

// u_j <- (u_j - u_{2M-j}) / 2
void project_odd(Field& u);

enum class Basin { EvenTanh, EvenCoth, Kink, Other, NonConverged };
std::string to_string(Basin b);

struct StartSummary {
    int index = 0;
    double energy = 0.0;               // discrete E_gamma
    double energy_extrapolated = 0.0;  // Richardson (needs even M)
    double distance_minimizer = 0.0;   // orbit distance to the gamma-sign minimiser
    double distance_kink = 0.0;
    int iterations = 0;
    bool converged = false;
    Basin basin = Basin::Other;
};

struct MinimizeReport {
    double gamma = 0.0;
    double closed_form_min = 0.0;
    std::vector<StartSummary> starts;
};

// Runs n_starts seeded flows (odd starts when cfg.odd_projection); jobs > 1
// runs starts on worker threads, results ordered by start index.
MinimizeReport minimize_report(double gamma, int n_starts, const FlowConfig& cfg, const GridSpec& g, int jobs = 1,
                               double basin_tol = 1e-3);

}  // namespace gpdelta
