#include "gpdelta/dense.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "gpdelta/errors.hpp"

namespace gpdelta {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MapR = Eigen::Map<RowMat>;
using CMapR = Eigen::Map<const RowMat>;

CMapR view(const DenseMatrix& m) { return CMapR(m.a.data(), static_cast<Eigen::Index>(m.n), static_cast<Eigen::Index>(m.n)); }
MapR view(DenseMatrix& m) { return MapR(m.a.data(), static_cast<Eigen::Index>(m.n), static_cast<Eigen::Index>(m.n)); }

}  // namespace

SymEigen sym_eigen(const DenseMatrix& m) {
    if (m.n == 0) throw std::invalid_argument("sym_eigen: empty matrix");
    const Eigen::SelfAdjointEigenSolver<RowMat> es(view(m), Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success) throw NumericalError("sym_eigen: eigensolver did not converge");
    SymEigen out{std::vector<double>(m.n), DenseMatrix(m.n)};
    Eigen::Map<Eigen::VectorXd>(out.values.data(), static_cast<Eigen::Index>(m.n)) = es.eigenvalues();
    view(out.vectors) = es.eigenvectors();
    return out;
}

DenseMatrix matmul(const DenseMatrix& A, const DenseMatrix& B, bool transA, bool transB) {
    if (A.n != B.n) throw std::invalid_argument("matmul: size mismatch");
    DenseMatrix C(A.n);
    auto c = view(C);
    if (transA && transB)
        c.noalias() = view(A).transpose() * view(B).transpose();
    else if (transA)
        c.noalias() = view(A).transpose() * view(B);
    else if (transB)
        c.noalias() = view(A) * view(B).transpose();
    else
        c.noalias() = view(A) * view(B);
    return C;
}

std::vector<double> matvec(const DenseMatrix& A, const std::vector<double>& x) {
    if (x.size() != A.n) throw std::invalid_argument("matvec: size mismatch");
    std::vector<double> y(A.n);
    const auto n = static_cast<Eigen::Index>(A.n);
    Eigen::Map<Eigen::VectorXd>(y.data(), n).noalias() = view(A) * Eigen::Map<const Eigen::VectorXd>(x.data(), n);
    return y;
}

DenseMatrix spectral_function(const SymEigen& e, double (*f)(double)) {
    const std::size_t n = e.values.size();
    DenseMatrix scaled = e.vectors;
    for (std::size_t k = 0; k < n; ++k) {
        const double fk = f(e.values[k]);
        for (std::size_t i = 0; i < n; ++i) scaled(i, k) *= fk;
    }
    DenseMatrix r = matmul(scaled, e.vectors, false, true);
    // Exact symmetry, removing dgemm round-off asymmetry.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double s = 0.5 * (r(i, j) + r(j, i));
            r(i, j) = s;
            r(j, i) = s;
        }
    return r;
}

double max_asymmetry(const DenseMatrix& m) {
    double d = 0.0;
    for (std::size_t i = 0; i < m.n; ++i)
        for (std::size_t j = i + 1; j < m.n; ++j) d = std::max(d, std::abs(m(i, j) - m(j, i)));
    return d;
}

double max_abs(const DenseMatrix& m) {
    double d = 0.0;
    for (double v : m.a) d = std::max(d, std::abs(v));
    return d;
}

}  // namespace gpdelta
