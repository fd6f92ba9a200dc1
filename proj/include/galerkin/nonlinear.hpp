#pragma once

// Galerkin approximation of -u'' - lambda u + u^3 = f on (0, 1), u(0) = u(1) = 0.
//
// The trial space W_m is spanned by the H^1_0-orthonormal sines
// w_j = sqrt(2) / (j pi) sin(j pi x), so that |v|_1 = |xi| for v = sum xi_j w_j.
// The discrete equations F(xi) = 0 are
//
//   F_i(xi) = xi_i - lambda \int v w_i + \int v^3 w_i - \int f w_i,
//
// solved by damped Newton from xi = 0.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "galerkin/basis.hpp"
#include "galerkin/coefficients.hpp"
#include "galerkin/dense_matrix.hpp"
#include "galerkin/errors.hpp"
#include "galerkin/forcing.hpp"
#include "galerkin/linalg.hpp"
#include "galerkin/quadrature.hpp"

namespace galerkin {

/// First Dirichlet eigenvalue of -d^2/dx^2 on (0, 1).
inline constexpr double kLambda1 = std::numbers::pi * std::numbers::pi;

struct NonlinearProblem {
    double lambda = 0.0;
    RealFunction f = forcing::zero;
    int m = 1;

    static constexpr double lambda1 = kLambda1;

    /// Existence of a Galerkin solution in the a priori ball is guaranteed only below lambda_1.
    bool solvability_guaranteed() const noexcept { return lambda < lambda1; }

    BasisFamily family() const { return BasisFamily(BasisKind::NormalizedSine, m); }

    void validate() const {
        if (m < 1) {
            throw InvalidArgument("NonlinearProblem: m must be >= 1");
        }
        if (!std::isfinite(lambda)) {
            throw InvalidArgument("NonlinearProblem: lambda must be finite");
        }
        if (!f) {
            throw InvalidArgument("NonlinearProblem: f is required");
        }
    }
};

/// Quadrature tables for one problem; evaluates F, its Jacobian and norms.
class NonlinearGalerkin {
public:
    NonlinearGalerkin(NonlinearProblem problem, QuadratureRule rule)
        : problem_(std::move(problem)), rule_(std::move(rule)), family_(problem_.family()) {
        problem_.validate();
        const std::size_t q = rule_.size();
        const int m = problem_.m;
        values_ = RealMatrix(q, m);
        derivs_ = RealMatrix(q, m);
        load_.assign(m, 0.0);
        for (std::size_t k = 0; k < q; ++k) {
            const double x = rule_.nodes()[k];
            const double fx = problem_.f(x);
            if (!std::isfinite(fx)) {
                throw IntegrandNotFinite("NonlinearGalerkin: f not finite at x = " + std::to_string(x));
            }
            for (int j = 0; j < m; ++j) {
                values_(k, j) = family_.value(j + 1, x);
                derivs_(k, j) = family_.derivative(j + 1, x);
                load_[j] += rule_.weights()[k] * fx * values_(k, j);
            }
        }
    }

    /// Default resolution: 4m panels of 8-point Gauss.
    explicit NonlinearGalerkin(NonlinearProblem problem)
        : NonlinearGalerkin(problem, default_rule(problem.m)) {}

    const NonlinearProblem& problem() const noexcept { return problem_; }
    const QuadratureRule& rule() const noexcept { return rule_; }
    const BasisFamily& family() const noexcept { return family_; }
    int dimension() const noexcept { return problem_.m; }

    /// \int f w_i
    const Vector<double>& load() const noexcept { return load_; }

    Vector<double> residual(std::span<const double> xi) const {
        check(xi);
        const int m = dimension();
        Vector<double> out(xi.begin(), xi.end());
        for (int i = 0; i < m; ++i) {
            out[i] -= load_[i];
        }
        for (std::size_t k = 0; k < rule_.size(); ++k) {
            const double v = value_at(k, xi);
            const double g = rule_.weights()[k] * (v * v * v - problem_.lambda * v);
            for (int i = 0; i < m; ++i) {
                out[i] += g * values_(k, i);
            }
        }
        return out;
    }

    /// J_ij = delta_ij - lambda \int w_i w_j + 3 \int v^2 w_i w_j
    RealMatrix jacobian(std::span<const double> xi) const {
        check(xi);
        const int m = dimension();
        RealMatrix j = RealMatrix::identity(m);
        for (std::size_t k = 0; k < rule_.size(); ++k) {
            const double v = value_at(k, xi);
            const double g = rule_.weights()[k] * (3.0 * v * v - problem_.lambda);
            for (int a = 0; a < m; ++a) {
                const double ga = g * values_(k, a);
                for (int b = a; b < m; ++b) {
                    j(a, b) += ga * values_(k, b);
                }
            }
        }
        for (int a = 0; a < m; ++a) {
            for (int b = 0; b < a; ++b) {
                j(a, b) = j(b, a);
            }
        }
        return j;
    }

    /// |v|_1^2 = \int v'^2 by quadrature.
    double h1_seminorm_squared(std::span<const double> xi) const {
        check(xi);
        double s = 0.0;
        for (std::size_t k = 0; k < rule_.size(); ++k) {
            double d = 0.0;
            for (int j = 0; j < dimension(); ++j) {
                d += xi[j] * derivs_(k, j);
            }
            s += rule_.weights()[k] * d * d;
        }
        return s;
    }

    /// \int v' w_i' by quadrature; equals xi_i for an orthonormal basis.
    Vector<double> stiffness_term(std::span<const double> xi) const {
        check(xi);
        Vector<double> out(dimension(), 0.0);
        for (std::size_t k = 0; k < rule_.size(); ++k) {
            double d = 0.0;
            for (int j = 0; j < dimension(); ++j) {
                d += xi[j] * derivs_(k, j);
            }
            for (int i = 0; i < dimension(); ++i) {
                out[i] += rule_.weights()[k] * d * derivs_(k, i);
            }
        }
        return out;
    }

    double l2_norm_squared(std::span<const double> xi) const {
        check(xi);
        double s = 0.0;
        for (std::size_t k = 0; k < rule_.size(); ++k) {
            const double v = value_at(k, xi);
            s += rule_.weights()[k] * v * v;
        }
        return s;
    }

private:
    void check(std::span<const double> xi) const {
        if (xi.size() != static_cast<std::size_t>(dimension())) {
            throw DimensionMismatch("NonlinearGalerkin: expected " + std::to_string(dimension()) +
                                    " coefficients, got " + std::to_string(xi.size()));
        }
    }

    double value_at(std::size_t k, std::span<const double> xi) const {
        double v = 0.0;
        for (int j = 0; j < dimension(); ++j) {
            v += xi[j] * values_(k, j);
        }
        return v;
    }

    NonlinearProblem problem_;
    QuadratureRule rule_;
    BasisFamily family_;
    RealMatrix values_;  // w_j(x_k)
    RealMatrix derivs_;  // w_j'(x_k)
    Vector<double> load_;
};

struct NewtonOptions {
    double tol = 1e-12;
    int max_iters = 100;
    int max_halvings = 30;
};

struct NonlinearState {
    Vector<double> xi;
    double residual_norm = 0.0;
    std::size_t newton_iters = 0;

    CoefficientVector<double> coefficients() const {
        return {xi, BasisFamily(BasisKind::NormalizedSine, static_cast<int>(xi.size()))};
    }
};

/// Damped Newton on F(xi) = 0 from xi = 0; steps are halved until ||F||_2 decreases.
inline NonlinearState newton_solve(const NonlinearGalerkin& system, const NewtonOptions& opts = {}) {
    if (!(opts.tol > 0.0)) {
        throw InvalidArgument("newton_solve: tol must be positive");
    }
    NonlinearState st;
    st.xi.assign(system.dimension(), 0.0);
    Vector<double> r = system.residual(st.xi);
    st.residual_norm = norm2(r);
    while (st.residual_norm > opts.tol) {
        if (st.newton_iters >= static_cast<std::size_t>(opts.max_iters)) {
            throw NoConvergence("newton_solve: iteration cap reached", st.residual_norm, st.newton_iters);
        }
        Vector<double> rhs(r.size());
        for (std::size_t i = 0; i < r.size(); ++i) {
            rhs[i] = -r[i];
        }
        const Vector<double> step = lu_solve(system.jacobian(st.xi), rhs);

        double t = 1.0;
        bool accepted = false;
        Vector<double> trial(st.xi.size());
        for (int h = 0; h <= opts.max_halvings; ++h, t *= 0.5) {
            for (std::size_t i = 0; i < trial.size(); ++i) {
                trial[i] = st.xi[i] + t * step[i];
            }
            Vector<double> rt = system.residual(trial);
            const double nt = norm2(rt);
            if (nt < st.residual_norm) {
                st.xi = trial;
                r = std::move(rt);
                st.residual_norm = nt;
                accepted = true;
                break;
            }
        }
        ++st.newton_iters;
        if (!accepted) {
            throw NoConvergence("newton_solve: line search stalled", st.residual_norm, st.newton_iters);
        }
    }
    return st;
}

inline NonlinearState newton_solve(const NonlinearProblem& p, const NewtonOptions& opts = {}) {
    return newton_solve(NonlinearGalerkin(p), opts);
}

/// F(xi) with the default quadrature.
inline Vector<double> nonlinear_residual(std::span<const double> xi, const NonlinearProblem& p) {
    return NonlinearGalerkin(p).residual(xi);
}

inline RealMatrix nonlinear_jacobian(std::span<const double> xi, const NonlinearProblem& p) {
    return NonlinearGalerkin(p).jacobian(xi);
}

/// Radius R of the coefficient ball that must contain every Galerkin solution.
///
/// From (F(xi), xi) >= c |xi|^2 - |f|_0 / sqrt(lambda_1) |xi| with
/// c = 1 - lambda / lambda_1 (c = 1 when lambda <= 0), so R = |f|_0 / (sqrt(lambda_1) c).
inline double apriori_radius(const NonlinearProblem& p, const QuadratureRule& rule) {
    if (!(p.lambda < kLambda1)) {
        throw LambdaTooLarge("apriori_radius: lambda = " + std::to_string(p.lambda) +
                             " is not below lambda_1 = pi^2");
    }
    const double f0 = std::sqrt(integrate([&](double x) { return p.f(x) * p.f(x); }, rule));
    const double coercivity = p.lambda > 0.0 ? 1.0 - p.lambda / kLambda1 : 1.0;
    return f0 / (std::sqrt(kLambda1) * coercivity);
}

inline double apriori_radius(const NonlinearProblem& p) {
    return apriori_radius(p, default_rule(std::max(p.m, 8)));
}

struct ConvergenceRow {
    int m;
    double norm_xi;
    double dist_to_finest;  // H^1_0 distance = l2 distance of zero-padded coefficients
    std::size_t newton_iters;
    double residual_norm;
};

/// Solves at every m in `m_list` (strictly increasing) and measures the distance to the finest solution.
inline std::vector<ConvergenceRow> convergence_study(const NonlinearProblem& base, const std::vector<int>& m_list,
                                                     const NewtonOptions& opts = {}) {
    if (m_list.empty()) {
        throw InvalidArgument("convergence_study: empty m list");
    }
    for (std::size_t i = 0; i < m_list.size(); ++i) {
        if (m_list[i] < 1 || (i > 0 && m_list[i] <= m_list[i - 1])) {
            throw InvalidArgument("convergence_study: m list must be positive and strictly increasing");
        }
    }
    std::vector<NonlinearState> states;
    states.reserve(m_list.size());
    for (int m : m_list) {
        NonlinearProblem p = base;
        p.m = m;
        states.push_back(newton_solve(p, opts));
    }
    const Vector<double>& finest = states.back().xi;
    std::vector<ConvergenceRow> rows;
    for (std::size_t i = 0; i < states.size(); ++i) {
        const Vector<double>& xi = states[i].xi;
        double d = 0.0;
        for (std::size_t j = 0; j < finest.size(); ++j) {
            const double a = j < xi.size() ? xi[j] : 0.0;
            d += (a - finest[j]) * (a - finest[j]);
        }
        rows.push_back({m_list[i], norm2(xi), std::sqrt(d), states[i].newton_iters, states[i].residual_norm});
    }
    return rows;
}

}  // namespace galerkin
