#pragma once

// Galerkin methods for Fredholm integral equations.
//
// Second kind: lambda u(x) - \int_0^{2pi} k(x, y) u(y) dy = f(x) with periodic
// data, discretized in the complex exponentials e^{i j x}, j = -n..n.
//
// First kind: the "wing" test problem g(x) = \int_0^1 y e^{-x y^2} f(y) dy,
// whose exact solution is the indicator of (t1, t2).

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "galerkin/basis.hpp"
#include "galerkin/bvp.hpp"
#include "galerkin/coefficients.hpp"
#include "galerkin/dense_matrix.hpp"
#include "galerkin/errors.hpp"
#include "galerkin/linalg.hpp"
#include "galerkin/quadrature.hpp"

namespace galerkin {

using Complex = std::complex<double>;
using PeriodicKernel = std::function<Complex(double, double)>;
using PeriodicFunction = std::function<Complex(double)>;

struct SecondKindProblem {
    Complex lambda;
    PeriodicKernel kernel;
    PeriodicFunction rhs;
    int n;  // basis indices -n..n

    BasisFamily family() const { return BasisFamily(BasisKind::ComplexExponential, n); }

    /// Nonzero lambda, n >= 1, and kernel/rhs matching at 0 and 2 pi to 1e-10.
    void validate() const {
        if (n < 1) {
            throw InvalidArgument("SecondKindProblem: n must be >= 1");
        }
        if (lambda == Complex{}) {
            throw InvalidArgument("SecondKindProblem: lambda must be nonzero");
        }
        if (!kernel || !rhs) {
            throw InvalidArgument("SecondKindProblem: kernel and rhs are required");
        }
        constexpr double tol = 1e-10;
        const double period = 2.0 * std::numbers::pi;
        if (std::abs(rhs(0.0) - rhs(period)) > tol) {
            throw InvalidArgument("SecondKindProblem: rhs is not 2pi-periodic");
        }
        for (double s : {0.0, 0.7, 1.9, 3.1, 4.4, 5.8}) {
            if (std::abs(kernel(0.0, s) - kernel(period, s)) > tol ||
                std::abs(kernel(s, 0.0) - kernel(s, period)) > tol) {
                throw InvalidArgument("SecondKindProblem: kernel is not 2pi-periodic");
            }
        }
    }
};

/// Degenerate (finite-rank) periodic kernels and right-hand sides with closed-form behaviour.
namespace kernels {

inline Complex cos_difference(double x, double y) { return std::cos(x - y); }

/// 1 + cos x cos 2y + 1/2 sin 2x sin y
inline Complex separable_trig(double x, double y) {
    return 1.0 + std::cos(x) * std::cos(2.0 * y) + 0.5 * std::sin(2.0 * x) * std::sin(y);
}

/// 0.3 e^{i(x - 2y)} + 0.2 cos(2(x + y))
inline Complex complex_trig(double x, double y) {
    return 0.3 * std::polar(1.0, x - 2.0 * y) + 0.2 * std::cos(2.0 * (x + y));
}

inline std::optional<std::function<Complex(double, double)>> by_name(std::string_view name) {
    if (name == "cos") return std::function<Complex(double, double)>(cos_difference);
    if (name == "separable") return std::function<Complex(double, double)>(separable_trig);
    if (name == "complex") return std::function<Complex(double, double)>(complex_trig);
    if (name == "zero") return std::function<Complex(double, double)>([](double, double) { return Complex{}; });
    return std::nullopt;
}

inline std::optional<std::function<Complex(double)>> rhs_by_name(std::string_view name) {
    if (name == "exp1") return std::function<Complex(double)>([](double x) { return std::polar(1.0, x); });
    if (name == "exp2") return std::function<Complex(double)>([](double x) { return std::polar(1.0, 2.0 * x); });
    if (name == "cos2") return std::function<Complex(double)>([](double x) { return Complex(std::cos(2.0 * x)); });
    if (name == "one") return std::function<Complex(double)>([](double) { return Complex(1.0); });
    return std::nullopt;
}

}  // namespace kernels

/// Per-axis trapezoid resolution used when no rule is given: 4 (2n + 1) nodes.
inline QuadratureRule default_periodic_rule(int n) {
    return periodic_trapezoid(4 * (2 * n + 1));
}

/// Complex system  2 pi lambda c_k - sum_j c_j \iint e^{i(j y - k x)} k(x, y) dy dx = \int e^{-i k x} f(x) dx.
///
/// Rows and columns are ordered k, j = -n..n. The double integral uses the
/// tensor product of `rule` with itself.
inline GalerkinSystem<Complex> assemble_second_kind(const SecondKindProblem& p, const QuadratureRule& rule) {
    p.validate();
    const int n = p.n;
    if (rule.size() < static_cast<std::size_t>(2 * n + 2)) {
        throw QuadratureTooCoarse("assemble_second_kind: " + std::to_string(rule.size()) +
                                  " nodes cannot resolve modes up to " + std::to_string(n) +
                                  " (need at least " + std::to_string(2 * n + 2) + ")");
    }
    const int dim = 2 * n + 1;
    const auto& x = rule.nodes();
    const auto& w = rule.weights();
    const std::size_t q = x.size();

    // e^{i j x_a} for every mode and node
    ComplexMatrix modes(dim, q);
    for (int s = 0; s < dim; ++s) {
        for (std::size_t a = 0; a < q; ++a) {
            modes(s, a) = std::polar(1.0, (s - n) * x[a]);
        }
    }

    // inner(a, j) = \int k(x_a, y) e^{i j y} dy
    ComplexMatrix inner(q, dim);
    for (std::size_t a = 0; a < q; ++a) {
        std::vector<Complex> row(q);
        for (std::size_t b = 0; b < q; ++b) {
            row[b] = p.kernel(x[a], x[b]);
            if (!is_finite(row[b])) {
                throw IntegrandNotFinite("assemble_second_kind: kernel not finite");
            }
        }
        for (int s = 0; s < dim; ++s) {
            Complex acc{};
            for (std::size_t b = 0; b < q; ++b) {
                acc += w[b] * row[b] * modes(s, b);
            }
            inner(a, s) = acc;
        }
    }

    GalerkinSystem<Complex> sys{ComplexMatrix(dim, dim), Vector<Complex>(dim), p.family()};
    const Complex diag = 2.0 * std::numbers::pi * p.lambda;
    for (int r = 0; r < dim; ++r) {
        for (int s = 0; s < dim; ++s) {
            Complex acc{};
            for (std::size_t a = 0; a < q; ++a) {
                acc += w[a] * std::conj(modes(r, a)) * inner(a, s);
            }
            sys.a(r, s) = (r == s ? diag : Complex{}) - acc;
        }
        Complex load{};
        for (std::size_t a = 0; a < q; ++a) {
            const Complex fa = p.rhs(x[a]);
            if (!is_finite(fa)) {
                throw IntegrandNotFinite("assemble_second_kind: rhs not finite");
            }
            load += w[a] * std::conj(modes(r, a)) * fa;
        }
        sys.b[r] = load;
    }
    return sys;
}

inline GalerkinSystem<Complex> assemble_second_kind(const SecondKindProblem& p) {
    return assemble_second_kind(p, default_periodic_rule(p.n));
}

/// u_n(x) = sum_{j=-n}^{n} c_j e^{i j x}. SingularMatrix means lambda is (numerically)
/// an eigenvalue of the discretized operator.
inline CoefficientVector<Complex> solve_second_kind(const SecondKindProblem& p, const QuadratureRule& rule) {
    const GalerkinSystem<Complex> sys = assemble_second_kind(p, rule);
    return {lu_solve(sys.a, sys.b), sys.family};
}

inline CoefficientVector<Complex> solve_second_kind(const SecondKindProblem& p) {
    return solve_second_kind(p, default_periodic_rule(p.n));
}

/// Fourier coefficients (u, phi_j) / 2 pi for j = -n..n, so that P_n u = sum c_j phi_j.
inline CoefficientVector<Complex> projection_coefficients(const PeriodicFunction& u, int n,
                                                          const QuadratureRule& rule) {
    const BasisFamily family(BasisKind::ComplexExponential, n);
    Vector<Complex> c(family.dimension());
    for (int j = -n; j <= n; ++j) {
        c[family.slot(j)] =
            integrate([&](double x) { return u(x) * std::polar(1.0, -j * x); }, rule) / (2.0 * std::numbers::pi);
    }
    return {std::move(c), family};
}

inline CoefficientVector<Complex> projection_coefficients(const PeriodicFunction& u, int n) {
    return projection_coefficients(u, n, default_periodic_rule(n));
}

/// (K u)(x) = \int_0^{2pi} k(x, y) u(y) dy by `rule`.
inline Complex apply_kernel(const PeriodicKernel& k, const PeriodicFunction& u, double x, const QuadratureRule& rule) {
    return integrate([&](double y) { return k(x, y) * u(y); }, rule);
}

/// Moments (r_n, phi_i), i = -n..n, of the residual r_n = (lambda - K) u_n - f.
/// Both the operator and the moments are evaluated with `rule`.
inline Vector<Complex> residual_moments(const SecondKindProblem& p, const CoefficientVector<Complex>& u,
                                        const QuadratureRule& rule) {
    const auto& x = rule.nodes();
    std::vector<Complex> r(x.size());
    const PeriodicFunction un = [&](double y) { return u.evaluate(y); };
    for (std::size_t a = 0; a < x.size(); ++a) {
        r[a] = p.lambda * u.evaluate(x[a]) - apply_kernel(p.kernel, un, x[a], rule) - p.rhs(x[a]);
    }
    const BasisFamily family = u.family();
    Vector<Complex> m(family.dimension());
    for (int i = family.first_index(); i <= family.last_index(); ++i) {
        Complex acc{};
        for (std::size_t a = 0; a < x.size(); ++a) {
            acc += rule.weights()[a] * r[a] * std::polar(1.0, -i * x[a]);
        }
        m[family.slot(i)] = acc;
    }
    return m;
}

/// Hilbert-Schmidt norm (\iint |k|^2)^{1/2}, an upper bound for ||K|| on L^2.
inline double kernel_hs_norm(const PeriodicKernel& k, const QuadratureRule& rule) {
    double s = 0.0;
    for (std::size_t a = 0; a < rule.size(); ++a) {
        for (std::size_t b = 0; b < rule.size(); ++b) {
            s += rule.weights()[a] * rule.weights()[b] * std::norm(k(rule.nodes()[a], rule.nodes()[b]));
        }
    }
    return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// wing

struct WingProblem {
    int n = 1;
    double t1 = 1.0 / 3.0;
    double t2 = 2.0 / 3.0;

    double h() const { return 1.0 / n; }

    void validate() const {
        if (n < 1) {
            throw InvalidArgument("wing: n must be >= 1");
        }
        if (t1 > t2 || t1 == t2) {
            throw BreakpointOrder("t1 must be smaller than t2");
        }
        if (!(t1 > 0.0) || !(t2 < 1.0)) {
            throw InvalidArgument("wing: breakpoints must satisfy 0 < t1 < t2 < 1");
        }
    }

    /// Cell midpoints (i - 1/2) h, i = 1..n.
    std::vector<double> midpoints() const {
        std::vector<double> s(n);
        const double step = h();
        for (int i = 1; i <= n; ++i) {
            s[i - 1] = (i - 0.5) * step;
        }
        return s;
    }
};

struct WingSystem {
    RealMatrix a;
    Vector<double> b;
    Vector<double> x_exact;
};

/// Midpoint discretization of the wing problem in the box basis.
///
///   A_ij = h s_j exp(-s_i s_j^2)
///   b_i  = sqrt(h) (exp(-s_i t1^2) - exp(-s_i t2^2)) / (2 s_i)
///   x_i  = sqrt(h) if t1 < s_i < t2, else 0
///
/// Operation order follows the classic reference generator so that results are
/// reproducible to the last bit.
inline WingSystem wing_generate(const WingProblem& w) {
    w.validate();
    const int n = w.n;
    const double h = w.h();
    const std::vector<double> s = w.midpoints();
    RealMatrix a(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            a(i, j) = (h * s[j]) * std::exp((-s[i]) * (s[j] * s[j]));
        }
    }
    const double sqrt_h = std::sqrt(h);
    const double t1sq = w.t1 * w.t1;
    const double t2sq = w.t2 * w.t2;
    Vector<double> b(n);
    Vector<double> x(n, 0.0);
    for (int i = 0; i < n; ++i) {
        b[i] = (sqrt_h * 0.5 * (std::exp((-s[i]) * t1sq) - std::exp((-s[i]) * t2sq))) / s[i];
        if (w.t1 < s[i] && s[i] < w.t2) {
            x[i] = sqrt_h;
        }
    }
    return {std::move(a), std::move(b), std::move(x)};
}

/// Right-hand side of the continuous wing equation; the x = 0 branch is its limit.
inline double wing_g(double x, double y1, double y2) {
    if (!(y1 < y2)) {
        throw BreakpointOrder("wing_g: y1 must be smaller than y2");
    }
    if (x < 0.0) {
        throw InvalidArgument("wing_g: x must be >= 0");
    }
    if (x == 0.0) {
        return 0.5 * (y2 - y1);
    }
    return (std::exp(-x * y1 * y1) - std::exp(-x * y2 * y2)) / (2.0 * x);
}

/// ||x - x_exact|| / ||x_exact||, or the absolute error when x_exact = 0.
inline double relative_error(std::span<const double> x, std::span<const double> exact) {
    if (x.size() != exact.size()) {
        throw DimensionMismatch("relative_error: length mismatch");
    }
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num += (x[i] - exact[i]) * (x[i] - exact[i]);
        den += exact[i] * exact[i];
    }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

/// TSVD reconstruction errors against x_exact for k = 1..n (index k-1).
inline std::vector<double> wing_tsvd_sweep(const WingSystem& sys) {
    const SvdFactors f = svd(sys.a);
    std::vector<double> errors;
    for (std::size_t k = 1; k <= f.rank_bound(); ++k) {
        if (f.sigma[k - 1] == 0.0) {
            break;
        }
        errors.push_back(relative_error(tsvd_solve(f, sys.b, k), sys.x_exact));
    }
    return errors;
}

struct WingReport {
    int n;
    double cond2;                      // +inf when A is exactly singular
    std::optional<double> naive_error; // empty when lu_solve reported SingularMatrix
    std::size_t tsvd_k;
    double tsvd_error;
    Vector<double> x_naive;            // empty when singular
    Vector<double> x_tsvd;
};

/// Compares the unregularized solve with truncated SVD. Without `k` the
/// truncation minimizing the error against x_exact is used.
inline WingReport wing_solve_naive_vs_tsvd(const WingProblem& w, std::optional<std::size_t> k = std::nullopt) {
    const WingSystem sys = wing_generate(w);
    const SvdFactors f = svd(sys.a);

    WingReport r{};
    r.n = w.n;
    r.cond2 = f.sigma.back() > 0.0 ? f.sigma.front() / f.sigma.back() : std::numeric_limits<double>::infinity();
    try {
        r.x_naive = lu_solve(sys.a, sys.b);
        r.naive_error = relative_error(r.x_naive, sys.x_exact);
    } catch (const SingularMatrix&) {
        r.x_naive.clear();
        r.naive_error.reset();
    }

    if (k) {
        r.tsvd_k = *k;
    } else {
        const std::vector<double> sweep = wing_tsvd_sweep(sys);
        std::size_t best = 0;
        for (std::size_t i = 1; i < sweep.size(); ++i) {
            if (sweep[i] < sweep[best]) {
                best = i;
            }
        }
        r.tsvd_k = best + 1;
    }
    r.x_tsvd = tsvd_solve(f, sys.b, r.tsvd_k);
    r.tsvd_error = relative_error(r.x_tsvd, sys.x_exact);
    return r;
}

}  // namespace galerkin
