#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "galerkin/nonlinear.hpp"

using namespace galerkin;

namespace {

constexpr double kPi = std::numbers::pi;

NonlinearProblem manufactured(int m) { return {1.0, forcing::manufactured_cubic(1.0), m}; }

double dot(const Vector<double>& a, const Vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

TEST(Residual, Examples) {
    const NonlinearProblem zero{0.0, forcing::zero, 4};
    for (double v : nonlinear_residual(Vector<double>(4, 0.0), zero)) EXPECT_EQ(v, 0.0);

    // lambda = 0, f = 0: F(e_1) = e_1 + \int w_1^4 w_i, with \int w_1^4 = 3/(2 pi^4)
    const Vector<double> f = nonlinear_residual(Vector<double>{1.0, 0.0, 0.0, 0.0}, zero);
    EXPECT_NEAR(f[0], 1.0 + 1.5 / std::pow(kPi, 4), 1e-14);
    EXPECT_NEAR(f[1], 0.0, 1e-14);

    // -\int f w_i at xi = 0
    const NonlinearProblem one{0.0, forcing::one, 3};
    const Vector<double> g = nonlinear_residual(Vector<double>(3, 0.0), one);
    EXPECT_NEAR(g[0], -2.0 * std::sqrt(2.0) / (kPi * kPi), 1e-14);
    EXPECT_NEAR(g[1], 0.0, 1e-14);

    EXPECT_THROW(nonlinear_residual(Vector<double>(2, 0.0), one), DimensionMismatch);
}

TEST(Residual, VanishesAtManufacturedSolution) {
    for (int m : {1, 3, 5, 10}) {
        Vector<double> xi(m, 0.0);
        xi[0] = kPi / std::sqrt(2.0);
        for (double v : nonlinear_residual(xi, manufactured(m))) EXPECT_NEAR(v, 0.0, 1e-12) << "m=" << m;
    }
}

TEST(Jacobian, IdentityAtOriginWithoutShift) {
    const RealMatrix j = nonlinear_jacobian(Vector<double>(5, 0.0), {0.0, forcing::one, 5});
    EXPECT_TRUE(j == RealMatrix::identity(5));
}

TEST(Jacobian, ShiftOnlyAtOrigin) {
    // J(0) = I - lambda M with M_ij = \int w_i w_j = delta_ij / (j pi)^2
    const RealMatrix j = nonlinear_jacobian(Vector<double>(4, 0.0), {2.0, forcing::one, 4});
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            EXPECT_NEAR(j(a, b), a == b ? 1.0 - 2.0 / ((a + 1) * (a + 1) * kPi * kPi) : 0.0, 1e-14);
}

TEST(Jacobian, SymmetricAndMatchesFiniteDifferences) {
    std::mt19937 gen(7);
    std::normal_distribution<double> nd(0.0, 1.0);
    const NonlinearGalerkin sys(manufactured(6));
    const double eps = 1e-6;
    for (int trial = 0; trial < 5; ++trial) {
        Vector<double> xi(6);
        for (double& v : xi) v = nd(gen);
        const RealMatrix j = sys.jacobian(xi);
        for (int a = 0; a < 6; ++a)
            for (int b = 0; b < 6; ++b) EXPECT_EQ(j(a, b), j(b, a));
        for (int c = 0; c < 6; ++c) {
            Vector<double> p = xi;
            Vector<double> m = xi;
            p[c] += eps;
            m[c] -= eps;
            const Vector<double> fp = sys.residual(p);
            const Vector<double> fm = sys.residual(m);
            for (int r = 0; r < 6; ++r) EXPECT_NEAR(j(r, c), (fp[r] - fm[r]) / (2 * eps), 1e-6);
        }
    }
}

TEST(Norms, CoefficientNormIsH1Seminorm) {
    std::mt19937 gen(3);
    std::normal_distribution<double> nd(0.0, 1.0);
    const NonlinearGalerkin sys(NonlinearProblem{0.0, forcing::one, 8});
    for (int trial = 0; trial < 10; ++trial) {
        Vector<double> xi(8);
        for (double& v : xi) v = nd(gen);
        EXPECT_NEAR(sys.h1_seminorm_squared(xi), dot(xi, xi), 1e-11);
        const Vector<double> st = sys.stiffness_term(xi);
        for (int i = 0; i < 8; ++i) EXPECT_NEAR(st[i], xi[i], 1e-12);
        // Poincare: |v|_0^2 <= |v|_1^2 / pi^2
        EXPECT_LE(sys.l2_norm_squared(xi), dot(xi, xi) / (kPi * kPi) + 1e-14);
    }
}

TEST(Newton, ZeroDataGivesZero) {
    const NonlinearState s = newton_solve(NonlinearProblem{0.0, forcing::zero, 5});
    EXPECT_EQ(s.newton_iters, 0u);
    for (double v : s.xi) EXPECT_EQ(v, 0.0);
}

TEST(Newton, ManufacturedRecovery) {
    for (int m : {3, 5, 10}) {
        const NonlinearState s = newton_solve(manufactured(m));
        EXPECT_LE(s.residual_norm, 1e-12);
        EXPECT_LE(s.newton_iters, 20u);
        EXPECT_NEAR(s.xi[0], kPi / std::sqrt(2.0), 1e-8);
        for (int j = 1; j < m; ++j) EXPECT_NEAR(s.xi[j], 0.0, 1e-8);
        EXPECT_NEAR(s.coefficients().evaluate(0.5), 1.0, 1e-8);
    }
}

TEST(Newton, AgreesWithPicardIteration) {
    // lambda = 0, f = 1: xi = \int (1 - v^3) w_i is a contraction for this small solution
    const int m = 10;
    const QuadratureRule r = default_rule(m);
    const auto w = [](int j, double x) { return std::sqrt(2.0) / (j * kPi) * std::sin(j * kPi * x); };
    Vector<double> xi(m, 0.0);
    for (int it = 0; it < 200; ++it) {
        Vector<double> next(m, 0.0);
        for (std::size_t k = 0; k < r.size(); ++k) {
            const double x = r.nodes()[k];
            double v = 0.0;
            for (int j = 1; j <= m; ++j) v += xi[j - 1] * w(j, x);
            for (int i = 1; i <= m; ++i) next[i - 1] += r.weights()[k] * (1.0 - v * v * v) * w(i, x);
        }
        xi = next;
    }
    const NonlinearState s = newton_solve(NonlinearProblem{0.0, forcing::one, m});
    for (int i = 0; i < m; ++i) EXPECT_NEAR(s.xi[i], xi[i], 1e-13) << i;
    EXPECT_LE(norm2(s.xi), 1.0 / kPi);
}

TEST(Newton, Failures) {
    NewtonOptions opts;
    opts.max_iters = 1;
    try {
        newton_solve(manufactured(5), opts);
        FAIL() << "expected NoConvergence";
    } catch (const NoConvergence& e) {
        EXPECT_EQ(e.iterations(), 1u);
        EXPECT_GT(e.residual(), 1e-12);
    }
    opts = {};
    opts.tol = 0.0;
    EXPECT_THROW(newton_solve(manufactured(2), opts), InvalidArgument);
    EXPECT_THROW(newton_solve(NonlinearProblem{0.0, forcing::one, 0}), InvalidArgument);
}

TEST(AprioriRadius, Examples) {
    EXPECT_EQ(apriori_radius(NonlinearProblem{0.0, forcing::zero, 4}), 0.0);
    EXPECT_NEAR(apriori_radius(NonlinearProblem{0.0, forcing::one, 4}), 1.0 / kPi, 1e-14);
    EXPECT_NEAR(apriori_radius(NonlinearProblem{-3.0, forcing::one, 4}), 1.0 / kPi, 1e-14);
    EXPECT_NEAR(apriori_radius(manufactured(10)), 2.4101, 1e-4);
    EXPECT_THROW(apriori_radius(NonlinearProblem{kPi * kPi, forcing::one, 4}), LambdaTooLarge);
    EXPECT_THROW(apriori_radius(NonlinearProblem{12.0, forcing::one, 4}), LambdaTooLarge);
    EXPECT_FALSE((NonlinearProblem{12.0, forcing::one, 4}).solvability_guaranteed());
}

TEST(AprioriRadius, BoundsSolutionsAndCoercivityOnSphere) {
    for (double lambda : {-2.0, 0.0, 1.0, 5.0}) {
        const NonlinearProblem p{lambda, forcing::manufactured_cubic(1.0), 10};
        const double r = apriori_radius(p);
        EXPECT_LE(norm2(newton_solve(p).xi), r) << lambda;

        const NonlinearGalerkin sys(p);
        std::mt19937 gen(static_cast<unsigned>(100 + lambda));
        std::normal_distribution<double> nd(0.0, 1.0);
        for (int d = 0; d < 50; ++d) {
            Vector<double> xi(10);
            for (double& v : xi) v = nd(gen);
            const double scale = r / norm2(xi);
            for (double& v : xi) v *= scale;
            EXPECT_GE(dot(sys.residual(xi), xi), 0.0) << "lambda=" << lambda << " d=" << d;
        }
    }
}

TEST(ConvergenceStudy, Manufactured) {
    const std::vector<ConvergenceRow> rows = convergence_study(manufactured(1), {3, 5, 10});
    ASSERT_EQ(rows.size(), 3u);
    for (const ConvergenceRow& r : rows) {
        EXPECT_NEAR(r.norm_xi, kPi / std::sqrt(2.0), 1e-8);
        EXPECT_LE(r.dist_to_finest, 1e-8);
    }
    EXPECT_EQ(rows.back().dist_to_finest, 0.0);
}

TEST(ConvergenceStudy, StepForcingConverges) {
    const std::vector<ConvergenceRow> rows =
        convergence_study(NonlinearProblem{1.0, forcing::step, 1}, {4, 8, 16, 32});
    for (std::size_t i = 1; i < rows.size(); ++i) {
        EXPECT_LT(rows[i].dist_to_finest, rows[i - 1].dist_to_finest);
    }
}

TEST(ConvergenceStudy, ZeroForcingAndErrors) {
    for (const ConvergenceRow& r : convergence_study(NonlinearProblem{1.0, forcing::zero, 1}, {1, 2, 4})) {
        EXPECT_EQ(r.norm_xi, 0.0);
        EXPECT_EQ(r.newton_iters, 0u);
    }
    EXPECT_THROW(convergence_study(manufactured(1), {}), InvalidArgument);
    EXPECT_THROW(convergence_study(manufactured(1), {4, 4}), InvalidArgument);
}
