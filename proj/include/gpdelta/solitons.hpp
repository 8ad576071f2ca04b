#pragma once

#include <string>

#include "gpdelta/grid.hpp"

namespace gpdelta {

enum class StateKind { Kink, EvenTanh, EvenCoth };

std::string to_string(StateKind k);
StateKind state_kind_from_string(const std::string& s);

struct StationaryState {
    StateKind kind;
    double gamma = 0.0;
    double theta = 0.0;
};

// Throws std::invalid_argument when the (kind, gamma) pair does not exist.
void validate(const StationaryState& s);

double c_gamma(double gamma);
double theta_gamma(double gamma);
double theta_tilde(double gamma);

// Real profile (phase excluded) and its derivatives; derivatives are the
// one-sided values at x = 0 (taken from x >= 0).
double profile(const StationaryState& s, double x);
double profile_dx(const StationaryState& s, double x);
double profile_dxx(const StationaryState& s, double x);

Field eval_state(const StationaryState& s, const GridSpec& g);
double closed_form_energy(const StationaryState& s);

// The minimiser of E_gamma: EvenTanh for gamma > 0, EvenCoth for gamma < 0.
StationaryState minimizer(double gamma);

Field bound_state(double gamma, const GridSpec& g);

// 1/2 |u'|^2 - 1/4 (1 - u^2)^2 and u'' + (1 - u^2) u at x != 0.
double first_integral_residual(const StationaryState& s, double x);
double stationarity_residual(const StationaryState& s, double x);
// 2 u'(0+) - gamma u(0), zero for the even states.
double jump_residual(const StationaryState& s);

}  // namespace gpdelta
