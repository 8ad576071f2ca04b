#include "gpdelta/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gpdelta {

GridSpec::GridSpec(double L, int M) : L_(L), M_(M), h_(0.0) {
    if (!(L > 0.0) || !std::isfinite(L)) throw std::invalid_argument("grid: L must be positive and finite");
    if (M < 2) throw std::invalid_argument("grid: M must be at least 2");
    h_ = L / M;
}

RVec GridSpec::nodes() const {
    RVec xs(size());
    for (std::size_t j = 0; j < xs.size(); ++j) xs[j] = x(j);
    return xs;
}

GridSpec make_grid(double L, int M) { return GridSpec(L, M); }

GridSpec make_grid_with_spacing(double L, double h) {
    if (!(h > 0.0) || !(L > 0.0)) throw std::invalid_argument("grid: L and h must be positive");
    const double m = L / h;
    const double mr = std::round(m);
    if (std::abs(m - mr) > 1e-9 * m || mr > 1e8)
        throw std::invalid_argument("grid: h = " + std::to_string(h) + " does not divide L = " + std::to_string(L));
    return GridSpec(L, static_cast<int>(mr));
}

Field::Field(GridSpec g) : grid_(g), values_(g.size(), cplx(0.0, 0.0)) {}

Field::Field(GridSpec g, CVec values) : grid_(g), values_(std::move(values)) {
    if (values_.size() != grid_.size()) throw std::invalid_argument("field: length does not match grid");
}

bool Field::all_finite() const noexcept {
    for (const auto& v : values_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

void require_same_grid(const Field& u, const Field& v) {
    if (u.grid() != v.grid()) throw std::invalid_argument("field: grid mismatch");
}

Field& Field::operator+=(const Field& o) {
    require_same_grid(*this, o);
    for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += o.values_[j];
    return *this;
}

Field& Field::operator-=(const Field& o) {
    require_same_grid(*this, o);
    for (std::size_t j = 0; j < values_.size(); ++j) values_[j] -= o.values_[j];
    return *this;
}

Field& Field::operator*=(cplx a) {
    for (auto& v : values_) v *= a;
    return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(cplx a, Field u) { return u *= a; }
Field operator*(Field u, cplx a) { return u *= a; }

Field sample(const GridSpec& g, const std::function<cplx(double)>& f) {
    Field u(g);
    for (std::size_t j = 0; j < u.size(); ++j) u[j] = f(g.x(j));
    return u;
}

DeltaOperator build_hgamma(const GridSpec& g, double gamma) {
    const double h = g.h();
    DeltaOperator op{g, gamma, RVec(g.size(), 2.0 / (h * h)), -1.0 / (h * h)};
    op.diagonal[g.origin()] += gamma / h;
    return op;
}

Field apply_hgamma(const DeltaOperator& op, const Field& u) {
    if (u.grid() != op.grid) throw std::invalid_argument("apply_hgamma: grid mismatch");
    Field r(u.grid());
    const std::size_t n = u.size();
    for (std::size_t j = 1; j + 1 < n; ++j)
        r[j] = op.diagonal[j] * u[j] + op.off_diagonal * (u[j - 1] + u[j + 1]);
    return r;
}

double trapezoid(const GridSpec& g, const RVec& f) {
    if (f.size() != g.size()) throw std::invalid_argument("trapezoid: length mismatch");
    double s = 0.5 * (f.front() + f.back());
    for (std::size_t j = 1; j + 1 < f.size(); ++j) s += f[j];
    return s * g.h();
}

cplx l2_inner(const Field& u, const Field& v) {
    require_same_grid(u, v);
    const std::size_t n = u.size();
    cplx s = 0.5 * (u[0] * std::conj(v[0]) + u[n - 1] * std::conj(v[n - 1]));
    for (std::size_t j = 1; j + 1 < n; ++j) s += u[j] * std::conj(v[j]);
    return s * u.grid().h();
}

double l2_real_inner(const Field& u, const Field& v) { return l2_inner(u, v).real(); }

double l2_norm(const Field& u) {
    const std::size_t n = u.size();
    double s = 0.5 * (std::norm(u[0]) + std::norm(u[n - 1]));
    for (std::size_t j = 1; j + 1 < n; ++j) s += std::norm(u[j]);
    return std::sqrt(s * u.grid().h());
}

}  // namespace gpdelta
