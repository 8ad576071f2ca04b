#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace gpdelta {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;
using RVec = std::vector<double>;

// Uniform grid on [-L, L] with 2M+1 nodes; node M sits exactly at x = 0.
class GridSpec {
public:
    GridSpec(double L, int M);

    double L() const noexcept { return L_; }
    int M() const noexcept { return M_; }
    double h() const noexcept { return h_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(2 * M_ + 1); }
    std::size_t origin() const noexcept { return static_cast<std::size_t>(M_); }

    // (j - M) * h, so the grid is exactly symmetric and x_M == 0.
    double x(std::size_t j) const noexcept {
        return static_cast<double>(static_cast<long>(j) - M_) * h_;
    }
    RVec nodes() const;

    bool operator==(const GridSpec& o) const noexcept { return L_ == o.L_ && M_ == o.M_; }
    bool operator!=(const GridSpec& o) const noexcept { return !(*this == o); }

private:
    double L_;
    int M_;
    double h_;
};

GridSpec make_grid(double L, int M);
// Rounds L/h to the nearest integer M; rejects h that does not divide L.
GridSpec make_grid_with_spacing(double L, double h);

class Field {
public:
    explicit Field(GridSpec g);
    Field(GridSpec g, CVec values);

    const GridSpec& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return values_.size(); }
    cplx& operator[](std::size_t j) { return values_[j]; }
    const cplx& operator[](std::size_t j) const { return values_[j]; }
    CVec& values() noexcept { return values_; }
    const CVec& values() const noexcept { return values_; }
    cplx at_origin() const { return values_[grid_.origin()]; }
    bool all_finite() const noexcept;

    Field& operator+=(const Field& o);
    Field& operator-=(const Field& o);
    Field& operator*=(cplx a);

private:
    GridSpec grid_;
    CVec values_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(cplx a, Field u);
Field operator*(Field u, cplx a);

Field sample(const GridSpec& g, const std::function<cplx(double)>& f);
void require_same_grid(const Field& u, const Field& v);

// H_gamma = -d^2/dx^2 + gamma*delta on the grid, lumped delta at the origin.
struct DeltaOperator {
    GridSpec grid;
    double gamma;
    RVec diagonal;
    double off_diagonal;
};

DeltaOperator build_hgamma(const GridSpec& g, double gamma);
// Boundary rows are clamped: the result is 0 at j = 0 and j = 2M.
Field apply_hgamma(const DeltaOperator& op, const Field& u);

// Trapezoid sum of u * conj(v).
cplx l2_inner(const Field& u, const Field& v);
double l2_real_inner(const Field& u, const Field& v);
double l2_norm(const Field& u);
double trapezoid(const GridSpec& g, const RVec& f);

}  // namespace gpdelta
