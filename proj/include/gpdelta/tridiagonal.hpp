#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace gpdelta {

// LU factors of a general tridiagonal matrix without pivoting (Thomas).
// sub[i] couples row i+1 to column i, sup[i] couples row i to column i+1.
template <class T>
class ThomasLU {
public:
    ThomasLU() = default;
    ThomasLU(const std::vector<T>& sub, const std::vector<T>& diag, const std::vector<T>& sup);

    std::size_t size() const noexcept { return piv_.size(); }
    // Solves in place; rhs may be complex when T is real.
    template <class V>
    void solve(std::vector<V>& rhs) const;

private:
    std::vector<T> piv_;   // inverses of the modified diagonal
    std::vector<T> lower_; // multipliers
    std::vector<T> sup_;
};

// Symmetric tridiagonal matrix; off has length n-1.
struct SymTridiag {
    std::vector<double> diag;
    std::vector<double> off;
    std::size_t size() const noexcept { return diag.size(); }
};

// Number of eigenvalues strictly less than x (LDL^T inertia).
int sturm_count(const SymTridiag& m, double x);
void gershgorin_bounds(const SymTridiag& m, double& lo, double& hi);

// Eigenvalues strictly below edge, ascending, bisected to absolute tol.
// Throws EigenCountExceeded when more than k_max lie below edge.
std::vector<double> sturm_eigenvalues_below(const SymTridiag& m, double edge, int k_max, double tol = 1e-10);
// k-th smallest eigenvalue (0-based).
double sturm_kth_eigenvalue(const SymTridiag& m, int k, double tol = 1e-10);

// Unit-norm (Euclidean) eigenvector for an isolated eigenvalue, by inverse
// iteration with a partially pivoted tridiagonal LU.
std::vector<double> inverse_iteration(const SymTridiag& m, double lambda, int max_iter = 8);

std::vector<double> sym_tridiag_apply(const SymTridiag& m, const std::vector<double>& v);

}  // namespace gpdelta

#include "gpdelta/tridiagonal_impl.hpp"
