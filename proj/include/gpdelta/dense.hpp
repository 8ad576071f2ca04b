#pragma once

#include <cstddef>
#include <vector>

namespace gpdelta {

// Row-major square matrix.
struct DenseMatrix {
    std::size_t n = 0;
    std::vector<double> a;

    DenseMatrix() = default;
    explicit DenseMatrix(std::size_t n_) : n(n_), a(n_ * n_, 0.0) {}
    double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

struct SymEigen {
    std::vector<double> values;  // ascending
    DenseMatrix vectors;         // column k is the k-th eigenvector
};

// Full eigendecomposition of a symmetric matrix (Eigen, Householder
// tridiagonalisation plus implicit QR).
SymEigen sym_eigen(const DenseMatrix& m);

// C = op(A) * op(B)
DenseMatrix matmul(const DenseMatrix& A, const DenseMatrix& B, bool transA = false, bool transB = false);
std::vector<double> matvec(const DenseMatrix& A, const std::vector<double>& x);
// V * diag(f(values)) * V^T
DenseMatrix spectral_function(const SymEigen& e, double (*f)(double));
double max_asymmetry(const DenseMatrix& m);
double max_abs(const DenseMatrix& m);

}  // namespace gpdelta
