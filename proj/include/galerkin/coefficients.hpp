#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "galerkin/basis.hpp"
#include "galerkin/dense_matrix.hpp"
#include "galerkin/errors.hpp"

namespace galerkin {

/// Expansion coefficients paired with their basis; evaluates sum_j xi_j phi_j(x).
template <Scalar T>
class CoefficientVector {
public:
    CoefficientVector(Vector<T> xi, BasisFamily family) : xi_(std::move(xi)), family_(family) {
        if (xi_.size() != static_cast<std::size_t>(family_.dimension())) {
            throw DimensionMismatch("CoefficientVector: " + std::to_string(xi_.size()) +
                                    " coefficients for a basis of dimension " +
                                    std::to_string(family_.dimension()));
        }
    }

    const Vector<T>& xi() const noexcept { return xi_; }
    const BasisFamily& family() const noexcept { return family_; }
    std::size_t size() const noexcept { return xi_.size(); }

    /// Coefficient of basis member j (family indexing).
    const T& operator[](int j) const { return xi_[family_.slot(j)]; }

    T evaluate(double x) const {
        T s{};
        for (std::size_t k = 0; k < xi_.size(); ++k) {
            const int j = family_.index_at(k);
            if constexpr (is_complex_v<T>) {
                s += xi_[k] * family_.complex_value(j, x);
            } else {
                s += xi_[k] * family_.value(j, x);
            }
        }
        return s;
    }

    T derivative(double x) const {
        T s{};
        for (std::size_t k = 0; k < xi_.size(); ++k) {
            const int j = family_.index_at(k);
            if constexpr (is_complex_v<T>) {
                s += xi_[k] * family_.complex_derivative(j, x);
            } else {
                s += xi_[k] * family_.derivative(j, x);
            }
        }
        return s;
    }

    T operator()(double x) const { return evaluate(x); }

private:
    Vector<T> xi_;
    BasisFamily family_;
};

template <Scalar T>
T evaluate_solution(const CoefficientVector<T>& c, double x) {
    return c.evaluate(x);
}

}  // namespace galerkin
