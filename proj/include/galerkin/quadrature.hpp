#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "galerkin/dense_matrix.hpp"
#include "galerkin/errors.hpp"

namespace galerkin {

/// Node/weight pairs on an interval.
class QuadratureRule {
public:
    QuadratureRule() = default;
    QuadratureRule(std::vector<double> nodes, std::vector<double> weights)
        : nodes_(std::move(nodes)), weights_(std::move(weights)) {
        if (nodes_.size() != weights_.size()) {
            throw DimensionMismatch("QuadratureRule: node and weight counts differ");
        }
        for (double w : weights_) {
            if (!(w > 0.0)) {
                throw InvalidArgument("QuadratureRule: weights must be positive");
            }
        }
    }

    std::size_t size() const noexcept { return nodes_.size(); }
    const std::vector<double>& nodes() const noexcept { return nodes_; }
    const std::vector<double>& weights() const noexcept { return weights_; }

    double total_weight() const {
        double s = 0.0;
        for (double w : weights_) {
            s += w;
        }
        return s;
    }

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

namespace detail {

// Legendre P_n(x) and P_n'(x) by the three-term recurrence.
inline std::pair<double, double> legendre(int n, double x) {
    double p0 = 1.0;
    double p1 = x;
    if (n == 0) {
        return {1.0, 0.0};
    }
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    const double dp = n * (x * p1 - p0) / (x * x - 1.0);
    return {p1, dp};
}

inline void check_interval(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
        throw InvalidInterval("quadrature: need finite a < b, got [" + std::to_string(a) + ", " +
                              std::to_string(b) + "]");
    }
}

}  // namespace detail

/// n-point Gauss-Legendre rule on [a, b]; exact for polynomials of degree <= 2n-1.
///
/// Nodes are Newton-refined roots of P_n starting from the Chebyshev-like guess
/// cos(pi (k - 1/4) / (n + 1/2)); iteration stops when the update is below 1e-15.
inline QuadratureRule gauss_legendre(int n, double a = -1.0, double b = 1.0) {
    if (n < 1) {
        throw InvalidArgument("gauss_legendre: need at least one point");
    }
    detail::check_interval(a, b);
    std::vector<double> x(n);
    std::vector<double> w(n);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const int m = (n + 1) / 2;
    for (int k = 1; k <= m; ++k) {
        double z = std::cos(std::numbers::pi * (k - 0.25) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            const auto [p, d] = detail::legendre(n, z);
            dp = d;
            const double dz = p / d;
            z -= dz;
            if (std::abs(dz) <= 1e-15) {
                break;
            }
        }
        dp = detail::legendre(n, z).second;
        const double wk = 2.0 / ((1.0 - z * z) * dp * dp);
        // roots are symmetric; store ascending
        x[k - 1] = mid - half * z;
        x[n - k] = mid + half * z;
        w[k - 1] = half * wk;
        w[n - k] = half * wk;
    }
    if (n % 2 == 1) {
        x[n / 2] = mid;
    }
    return QuadratureRule(std::move(x), std::move(w));
}

/// Gauss-Legendre of the given order on each of `panels` equal subintervals of [a, b].
///
/// Nodes and weights are the concatenation of the per-panel rules, in panel order.
inline QuadratureRule composite_gauss_legendre(int panels, int order, double a = 0.0, double b = 1.0) {
    if (panels < 1) {
        throw InvalidArgument("composite_gauss_legendre: need at least one panel");
    }
    detail::check_interval(a, b);
    std::vector<double> x;
    std::vector<double> w;
    x.reserve(static_cast<std::size_t>(panels) * order);
    w.reserve(static_cast<std::size_t>(panels) * order);
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        const double hi = p + 1 == panels ? b : a + (p + 1) * h;
        const QuadratureRule panel = gauss_legendre(order, lo, hi);
        x.insert(x.end(), panel.nodes().begin(), panel.nodes().end());
        w.insert(w.end(), panel.weights().begin(), panel.weights().end());
    }
    return QuadratureRule(std::move(x), std::move(w));
}

/// Default resolution for a basis of dimension N on [0, 1]: 4N panels of order 8.
inline QuadratureRule default_rule(int dimension) {
    return composite_gauss_legendre(4 * std::max(dimension, 1), 8, 0.0, 1.0);
}

/// Equispaced trapezoid on the periodic interval [0, 2pi): nodes 2 pi k / n, weights 2 pi / n.
inline QuadratureRule periodic_trapezoid(int n) {
    if (n < 1) {
        throw InvalidArgument("periodic_trapezoid: need at least one point");
    }
    std::vector<double> x(n);
    const double h = 2.0 * std::numbers::pi / n;
    for (int k = 0; k < n; ++k) {
        x[k] = h * k;
    }
    return QuadratureRule(std::move(x), std::vector<double>(n, h));
}

/// Sum of w_i f(x_i). Throws IntegrandNotFinite if f is NaN/Inf at any node.
template <typename F>
auto integrate(F&& f, const QuadratureRule& rule) {
    using R = std::decay_t<std::invoke_result_t<F&, double>>;
    static_assert(Scalar<R>, "integrand must return double or std::complex<double>");
    R sum{};
    const auto& x = rule.nodes();
    const auto& w = rule.weights();
    for (std::size_t i = 0; i < x.size(); ++i) {
        const R v = f(x[i]);
        if (!is_finite(v)) {
            throw IntegrandNotFinite("integrate: integrand not finite at x = " + std::to_string(x[i]));
        }
        sum += w[i] * v;
    }
    return sum;
}

}  // namespace galerkin
