#pragma once

#include <stdexcept>

#include "gpdelta/errors.hpp"

namespace gpdelta {

template <class T>
ThomasLU<T>::ThomasLU(const std::vector<T>& sub, const std::vector<T>& diag, const std::vector<T>& sup)
    : piv_(diag.size()), lower_(diag.empty() ? 0 : diag.size() - 1), sup_(sup) {
    const std::size_t n = diag.size();
    if (n == 0 || sub.size() + 1 != n || sup.size() + 1 != n)
        throw std::invalid_argument("ThomasLU: inconsistent band lengths");
    piv_[0] = diag[0];
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs(piv_[i - 1]) == 0.0) throw NumericalError("ThomasLU: zero pivot");
        lower_[i - 1] = sub[i - 1] / piv_[i - 1];
        piv_[i] = diag[i] - lower_[i - 1] * sup_[i - 1];
    }
    if (std::abs(piv_[n - 1]) == 0.0) throw NumericalError("ThomasLU: zero pivot");
    for (auto& p : piv_) p = T(1) / p;  // stored inverted: solves only multiply
}

template <class T>
template <class V>
void ThomasLU<T>::solve(std::vector<V>& rhs) const {
    const std::size_t n = piv_.size();
    if (rhs.size() != n) throw std::invalid_argument("ThomasLU: rhs length mismatch");
    for (std::size_t i = 1; i < n; ++i) rhs[i] -= lower_[i - 1] * rhs[i - 1];
    rhs[n - 1] *= piv_[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - sup_[i] * rhs[i + 1]) * piv_[i];
}

}  // namespace gpdelta
