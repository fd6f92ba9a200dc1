#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <string_view>

#include "galerkin/errors.hpp"
#include "galerkin/quadrature.hpp"

namespace galerkin {

enum class BasisKind { MonomialBubble, Sine, NormalizedSine, ComplexExponential, Box };

inline std::string_view to_string(BasisKind k) {
    switch (k) {
        case BasisKind::MonomialBubble: return "monomial";
        case BasisKind::Sine: return "sine";
        case BasisKind::NormalizedSine: return "normalized-sine";
        case BasisKind::ComplexExponential: return "complex-exponential";
        case BasisKind::Box: return "box";
    }
    return "unknown";
}

/// A finite family of basis functions.
///
/// Member indices run 1..size, except ComplexExponential where they run
/// -size..size (dimension 2 size + 1). Members:
///   MonomialBubble  x^j (1 - x)
///   Sine            sin(j pi x)
///   NormalizedSine  sqrt(2) / (j pi) sin(j pi x)   (H^1_0(0,1)-orthonormal)
///   ComplexExponential  e^{i j x} on [0, 2 pi]
///   Box             h^{-1/2} on [(j-1) h, j h), h = 1 / size   (L^2(0,1)-orthonormal)
class BasisFamily {
public:
    BasisFamily(BasisKind kind, int size) : kind_(kind), size_(size) {
        if (size < 1) {
            throw InvalidArgument("BasisFamily: size must be >= 1, got " + std::to_string(size));
        }
    }

    BasisKind kind() const noexcept { return kind_; }
    int size() const noexcept { return size_; }

    int first_index() const noexcept { return kind_ == BasisKind::ComplexExponential ? -size_ : 1; }
    int last_index() const noexcept { return size_; }
    int dimension() const noexcept { return kind_ == BasisKind::ComplexExponential ? 2 * size_ + 1 : size_; }

    /// Position of member j in a coefficient vector.
    std::size_t slot(int j) const {
        check_index(j);
        return static_cast<std::size_t>(j - first_index());
    }
    int index_at(std::size_t slot) const { return first_index() + static_cast<int>(slot); }

    bool is_real() const noexcept { return kind_ != BasisKind::ComplexExponential; }
    bool is_differentiable() const noexcept { return kind_ != BasisKind::Box; }

    double cell_width() const noexcept { return 1.0 / size_; }

    void check_index(int j) const {
        if (j < first_index() || j > last_index()) {
            throw IndexOutOfRange("basis " + std::string(to_string(kind_)) + ": index " + std::to_string(j) +
                                  " outside [" + std::to_string(first_index()) + ", " +
                                  std::to_string(last_index()) + "]");
        }
    }

    double value(int j, double x) const {
        check_index(j);
        const double pi = std::numbers::pi;
        switch (kind_) {
            case BasisKind::MonomialBubble: return std::pow(x, j) * (1.0 - x);
            case BasisKind::Sine: return std::sin(j * pi * x);
            case BasisKind::NormalizedSine: return std::numbers::sqrt2 / (j * pi) * std::sin(j * pi * x);
            case BasisKind::Box: return in_cell(j, x) ? 1.0 / std::sqrt(cell_width()) : 0.0;
            case BasisKind::ComplexExponential:
                throw InvalidArgument("basis complex-exponential is complex valued; use complex_value");
        }
        return 0.0;
    }

    std::complex<double> complex_value(int j, double x) const {
        if (kind_ == BasisKind::ComplexExponential) {
            check_index(j);
            return std::polar(1.0, j * x);
        }
        return value(j, x);
    }

    double derivative(int j, double x) const {
        check_index(j);
        const double pi = std::numbers::pi;
        switch (kind_) {
            case BasisKind::MonomialBubble:
                return j * std::pow(x, j - 1) - (j + 1) * std::pow(x, j);
            case BasisKind::Sine: return j * pi * std::cos(j * pi * x);
            case BasisKind::NormalizedSine: return std::numbers::sqrt2 * std::cos(j * pi * x);
            case BasisKind::Box:
                throw NotDifferentiable("basis box: piecewise constant members have no derivative");
            case BasisKind::ComplexExponential:
                throw InvalidArgument("basis complex-exponential is complex valued; use complex_derivative");
        }
        return 0.0;
    }

    std::complex<double> complex_derivative(int j, double x) const {
        if (kind_ == BasisKind::ComplexExponential) {
            check_index(j);
            return std::complex<double>(0.0, j) * std::polar(1.0, j * x);
        }
        return derivative(j, x);
    }

    friend bool operator==(const BasisFamily&, const BasisFamily&) = default;

private:
    bool in_cell(int j, double x) const {
        const double h = cell_width();
        const double lo = (j - 1) * h;
        const double hi = j * h;
        return x >= lo && (x < hi || (j == size_ && x <= hi));
    }

    BasisKind kind_;
    int size_;
};

/// H^1_0 inner product of two real differentiable members, \int_0^1 phi_i' phi_j'.
inline double h10_inner(const BasisFamily& family, int i, int j, const QuadratureRule& rule) {
    if (!family.is_differentiable()) {
        throw NotDifferentiable("h10_inner: basis " + std::string(to_string(family.kind())) +
                                " is not differentiable");
    }
    family.check_index(i);
    family.check_index(j);
    return integrate([&](double x) { return family.derivative(i, x) * family.derivative(j, x); }, rule);
}

}  // namespace galerkin
