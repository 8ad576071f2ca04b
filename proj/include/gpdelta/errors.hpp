#pragma once

#include <stdexcept>
#include <string>

namespace gpdelta {

// Iterative or linear-algebra failure; carries what the solver last saw.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConvergenceError : public NumericalError {
public:
    ConvergenceError(const std::string& what, double residual, int iterations)
        : NumericalError(what), residual_(residual), iterations_(iterations) {}
    double residual() const noexcept { return residual_; }
    int iterations() const noexcept { return iterations_; }

private:
    double residual_;
    int iterations_;
};

class EigenCountExceeded : public NumericalError {
public:
    EigenCountExceeded(const std::string& what, int count)
        : NumericalError(what), count_(count) {}
    int count() const noexcept { return count_; }

private:
    int count_;
};

}  // namespace gpdelta
