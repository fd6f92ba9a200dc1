#pragma once

// Galerkin solver for -u'' = f on (0, 1), u(0) = u(1) = 0.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "galerkin/basis.hpp"
#include "galerkin/coefficients.hpp"
#include "galerkin/dense_matrix.hpp"
#include "galerkin/errors.hpp"
#include "galerkin/forcing.hpp"
#include "galerkin/linalg.hpp"
#include "galerkin/quadrature.hpp"

namespace galerkin {

/// Stiffness matrix, load vector and the basis they were assembled in.
template <Scalar T>
struct GalerkinSystem {
    DenseMatrix<T> a;
    Vector<T> b;
    BasisFamily family;
};

/// Which closed form to use for the monomial-bubble stiffness entries.
///
/// `derived` is the exact integral of [x^i(1-x)]'[x^j(1-x)]'. `shifted` is the
/// commonly quoted form (i+1)(j+1)/(i+j+1) + (i+2)(j+2)/(i+j+3) - ... which
/// equals `derived` evaluated at (i+1, j+1); it is the one that reproduces the
/// reference condition numbers.
enum class IndexConvention { shifted, derived };

inline double stiffness_monomial_entry(int i, int j, IndexConvention convention) {
    const double di = i;
    const double dj = j;
    if (convention == IndexConvention::shifted) {
        return (di + 1) * (dj + 1) / (di + dj + 1) + (di + 2) * (dj + 2) / (di + dj + 3) -
               ((di + 1) * (dj + 2) + (di + 2) * (dj + 1)) / (di + dj + 2);
    }
    return di * dj / (di + dj - 1) - (2 * di * dj + di + dj) / (di + dj) + (di + 1) * (dj + 1) / (di + dj + 1);
}

inline RealMatrix stiffness_monomial_closed_form(int n, IndexConvention convention) {
    if (n < 1) {
        throw InvalidArgument("stiffness_monomial_closed_form: N must be >= 1");
    }
    RealMatrix a(n, n);
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            a(i - 1, j - 1) = stiffness_monomial_entry(i, j, convention);
        }
    }
    return a;
}

/// Stiffness matrix by quadrature: entry (i, j) = \int_0^1 phi_i' phi_j'.
inline RealMatrix assemble_stiffness(const BasisFamily& family, const QuadratureRule& rule) {
    if (!family.is_differentiable()) {
        throw NotDifferentiable("assemble_stiffness: basis " + std::string(to_string(family.kind())) +
                                " is not differentiable");
    }
    if (!family.is_real()) {
        throw InvalidArgument("assemble_stiffness: the two-point problem needs a real basis");
    }
    const int n = family.dimension();
    // tabulate derivatives once
    const auto& x = rule.nodes();
    const auto& w = rule.weights();
    RealMatrix d(n, x.size());
    for (int i = 0; i < n; ++i) {
        for (std::size_t q = 0; q < x.size(); ++q) {
            d(i, q) = family.derivative(family.index_at(i), x[q]);
        }
    }
    RealMatrix a(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            double s = 0.0;
            for (std::size_t q = 0; q < x.size(); ++q) {
                s += w[q] * d(i, q) * d(j, q);
            }
            a(i, j) = s;
            a(j, i) = s;
        }
    }
    return a;
}

/// Load vector: component i = \int_0^1 f phi_i.
inline Vector<double> assemble_load(const RealFunction& f, const BasisFamily& family, const QuadratureRule& rule) {
    if (!family.is_real()) {
        throw InvalidArgument("assemble_load: the two-point problem needs a real basis");
    }
    const auto& x = rule.nodes();
    std::vector<double> fx(x.size());
    for (std::size_t q = 0; q < x.size(); ++q) {
        fx[q] = f(x[q]);
        if (!std::isfinite(fx[q])) {
            throw IntegrandNotFinite("assemble_load: f not finite at x = " + std::to_string(x[q]));
        }
    }
    Vector<double> b(family.dimension());
    for (int i = 0; i < family.dimension(); ++i) {
        const int j = family.index_at(i);
        double s = 0.0;
        for (std::size_t q = 0; q < x.size(); ++q) {
            s += rule.weights()[q] * fx[q] * family.value(j, x[q]);
        }
        b[i] = s;
    }
    return b;
}

inline GalerkinSystem<double> assemble_bvp(const RealFunction& f, const BasisFamily& family,
                                           const QuadratureRule& rule) {
    return {assemble_stiffness(family, rule), assemble_load(f, family, rule), family};
}

/// xi_j = 2 / (pi^2 j^2) \int_0^1 f sin(j pi x): the sine stiffness matrix is diagonal.
inline CoefficientVector<double> sine_diagonal_solve(const RealFunction& f, int n, const QuadratureRule& rule) {
    const BasisFamily family(BasisKind::Sine, n);
    const Vector<double> b = assemble_load(f, family, rule);
    Vector<double> xi(n);
    const double pi2 = std::numbers::pi * std::numbers::pi;
    for (int j = 1; j <= n; ++j) {
        xi[j - 1] = 2.0 / (pi2 * j * j) * b[j - 1];
    }
    return {std::move(xi), family};
}

inline CoefficientVector<double> sine_diagonal_solve(const RealFunction& f, int n) {
    return sine_diagonal_solve(f, n, default_rule(n));
}

/// Solves the Galerkin system for -u'' = f in the given basis.
///
/// The sine family goes through the diagonal formula; everything else is
/// assembled and handed to lu_solve (which may report SingularMatrix for the
/// badly conditioned monomial basis).
inline CoefficientVector<double> solve_bvp(const RealFunction& f, const BasisFamily& family,
                                           const QuadratureRule& rule) {
    if (family.kind() == BasisKind::Sine) {
        return sine_diagonal_solve(f, family.size(), rule);
    }
    const GalerkinSystem<double> sys = assemble_bvp(f, family, rule);
    return {lu_solve(sys.a, sys.b), family};
}

inline CoefficientVector<double> solve_bvp(const RealFunction& f, const BasisFamily& family) {
    return solve_bvp(f, family, default_rule(family.dimension()));
}

/// K_N(x, t) = 2/pi^2 sum_{j=1}^N sin(j pi x) sin(j pi t) / j^2, so that u_N(x) = \int f(t) K_N(x, t) dt.
inline double kernel_value(double x, double t, int n) {
    double s = 0.0;
    for (int j = 1; j <= n; ++j) {
        s += std::sin(j * std::numbers::pi * x) * std::sin(j * std::numbers::pi * t) / (double(j) * j);
    }
    return 2.0 / (std::numbers::pi * std::numbers::pi) * s;
}

struct ConditionRow {
    int n;
    double cond2;
};

/// 2-norm condition numbers of the closed-form monomial stiffness matrix for N = 3..n_max.
inline std::vector<ConditionRow> condition_table(int n_max, IndexConvention convention = IndexConvention::shifted) {
    if (n_max < 1 || n_max > 12) {
        throw InvalidArgument("condition_table: N_max must be in [1, 12], got " + std::to_string(n_max));
    }
    std::vector<ConditionRow> rows;
    for (int n = 3; n <= n_max; ++n) {
        rows.push_back({n, cond2(stiffness_monomial_closed_form(n, convention))});
    }
    return rows;
}

/// E(v) = 1/2 a(v, v) - l(v) for the two-point problem.
inline double energy(const CoefficientVector<double>& u, const RealFunction& f, const QuadratureRule& rule) {
    return integrate([&](double x) {
        const double du = u.derivative(x);
        return 0.5 * du * du - f(x) * u.evaluate(x);
    }, rule);
}

/// |u - u_N|_1 given the exact derivative u'.
inline double h10_seminorm_error(const CoefficientVector<double>& u, const RealFunction& exact_derivative,
                                 const QuadratureRule& rule) {
    const double e2 = integrate([&](double x) {
        const double d = exact_derivative(x) - u.derivative(x);
        return d * d;
    }, rule);
    return std::sqrt(e2);
}

inline bool is_symmetric(const RealMatrix& a, double tol) {
    if (!a.square()) {
        return false;
    }
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = i + 1; j < a.cols(); ++j) {
            if (std::abs(a(i, j) - a(j, i)) > tol) {
                return false;
            }
        }
    }
    return true;
}

/// True when an unpivoted Cholesky factorization meets only positive pivots.
inline bool is_positive_definite(const RealMatrix& a) {
    if (!a.square()) {
        return false;
    }
    const std::size_t n = a.rows();
    RealMatrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = a(j, j);
        for (std::size_t k = 0; k < j; ++k) {
            d -= l(j, k) * l(j, k);
        }
        if (!(d > 0.0)) {
            return false;
        }
        l(j, j) = std::sqrt(d);
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) {
                s -= l(i, k) * l(j, k);
            }
            l(i, j) = s / l(j, j);
        }
    }
    return true;
}

}  // namespace galerkin
