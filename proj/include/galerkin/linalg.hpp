#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "galerkin/dense_matrix.hpp"
#include "galerkin/errors.hpp"

namespace galerkin {

namespace detail {

// Elimination is carried in extended precision; results are rounded back to T.
template <Scalar T>
using Wide = std::conditional_t<is_complex_v<T>, std::complex<long double>, long double>;

}  // namespace detail

/// Solves A x = b by Gaussian elimination with partial pivoting.
///
/// A pivot whose magnitude does not exceed eps * ||A||_inf (eps = double
/// machine epsilon) is treated as zero and reported as SingularMatrix. The
/// factorization and substitutions run in long double.
template <Scalar T>
Vector<T> lu_solve(const DenseMatrix<T>& a, std::span<const T> b) {
    if (!a.square()) {
        throw DimensionMismatch("lu_solve: matrix is " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + ", not square");
    }
    if (a.rows() != b.size()) {
        throw DimensionMismatch("lu_solve: right-hand side has length " + std::to_string(b.size()) +
                                ", expected " + std::to_string(a.rows()));
    }
    using W = detail::Wide<T>;
    const std::size_t n = a.rows();
    const long double tiny = std::numeric_limits<double>::epsilon() * static_cast<long double>(a.norm_inf());

    std::vector<W> lu(a.entries().begin(), a.entries().end());
    std::vector<W> x(b.begin(), b.end());
    auto at = [&](std::size_t i, std::size_t j) -> W& { return lu[i * n + j]; };

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        long double best = std::abs(at(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const long double v = std::abs(at(i, k));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (best <= tiny) {
            throw SingularMatrix("lu_solve: pivot " + std::to_string(static_cast<double>(best)) +
                                 " in column " + std::to_string(k) + " below tolerance");
        }
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(at(k, j), at(p, j));
            }
            std::swap(x[k], x[p]);
        }
        const W pivot = at(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const W factor = at(i, k) / pivot;
            if (factor == W{}) {
                continue;
            }
            at(i, k) = factor;
            for (std::size_t j = k + 1; j < n; ++j) {
                at(i, j) -= factor * at(k, j);
            }
            x[i] -= factor * x[k];
        }
    }
    for (std::size_t k = n; k-- > 0;) {
        W s = x[k];
        for (std::size_t j = k + 1; j < n; ++j) {
            s -= at(k, j) * x[j];
        }
        x[k] = s / at(k, k);
    }
    Vector<T> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = static_cast<T>(x[i]);
    }
    return out;
}

template <Scalar T>
Vector<T> lu_solve(const DenseMatrix<T>& a, const Vector<T>& b) {
    return lu_solve(a, std::span<const T>(b));
}

/// Thin SVD: A = U diag(sigma) V^T with sigma sorted nonincreasing.
struct SvdFactors {
    RealMatrix u;               // m x r
    std::vector<double> sigma;  // r
    RealMatrix v;               // n x r

    std::size_t rank_bound() const noexcept { return sigma.size(); }
};

namespace detail {

inline constexpr int kSvdMaxSweeps = 60;
inline constexpr double kSvdTolerance = 1e-14;

// Fills columns of `q` whose norm is zero with unit vectors orthogonal to the rest.
inline void complete_orthonormal_columns(RealMatrix& q, std::span<const char> filled) {
    const std::size_t m = q.rows();
    const std::size_t r = q.cols();
    std::size_t candidate = 0;
    for (std::size_t c = 0; c < r; ++c) {
        if (filled[c]) {
            continue;
        }
        while (candidate < m) {
            std::vector<double> w(m, 0.0);
            w[candidate++] = 1.0;
            // two passes of modified Gram-Schmidt
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t o = 0; o < r; ++o) {
                    if (o == c || (!filled[o] && o > c)) {
                        continue;
                    }
                    double d = 0.0;
                    for (std::size_t i = 0; i < m; ++i) {
                        d += q(i, o) * w[i];
                    }
                    for (std::size_t i = 0; i < m; ++i) {
                        w[i] -= d * q(i, o);
                    }
                }
            }
            const double nrm = norm2(std::span<const double>(w));
            if (nrm > 0.5) {
                for (std::size_t i = 0; i < m; ++i) {
                    q(i, c) = w[i] / nrm;
                }
                break;
            }
        }
    }
}

// One-sided (Hestenes) Jacobi on the columns of `work` (m x n, m >= n).
inline SvdFactors jacobi_tall(RealMatrix work) {
    const std::size_t m = work.rows();
    const std::size_t n = work.cols();
    RealMatrix v = RealMatrix::identity(n);

    bool converged = n < 2;
    for (int sweep = 0; sweep < kSvdMaxSweeps && !converged; ++sweep) {
        converged = true;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double app = 0.0;
                double aqq = 0.0;
                double apq = 0.0;
                for (std::size_t i = 0; i < m; ++i) {
                    const double xp = work(i, p);
                    const double xq = work(i, q);
                    app += xp * xp;
                    aqq += xq * xq;
                    apq += xp * xq;
                }
                if (apq == 0.0 || std::abs(apq) <= kSvdTolerance * std::sqrt(app * aqq)) {
                    continue;
                }
                converged = false;
                const double zeta = (aqq - app) / (2.0 * apq);
                const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
                const double c = 1.0 / std::hypot(1.0, t);
                const double s = c * t;
                for (std::size_t i = 0; i < m; ++i) {
                    const double xp = work(i, p);
                    const double xq = work(i, q);
                    work(i, p) = c * xp - s * xq;
                    work(i, q) = s * xp + c * xq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double xp = v(i, p);
                    const double xq = v(i, q);
                    v(i, p) = c * xp - s * xq;
                    v(i, q) = s * xp + c * xq;
                }
            }
        }
        if (!converged && sweep + 1 == kSvdMaxSweeps) {
            throw NoConvergence("svd: one-sided Jacobi did not converge", 0.0,
                                static_cast<std::size_t>(kSvdMaxSweeps));
        }
    }

    std::vector<double> norms(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            s += work(i, j) * work(i, j);
        }
        norms[j] = std::sqrt(s);
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return norms[a] > norms[b]; });

    SvdFactors out{RealMatrix(m, n), std::vector<double>(n), RealMatrix(n, n)};
    std::vector<char> filled(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t j = order[k];
        out.sigma[k] = norms[j];
        for (std::size_t i = 0; i < n; ++i) {
            out.v(i, k) = v(i, j);
        }
        if (norms[j] > 0.0) {
            filled[k] = 1;
            for (std::size_t i = 0; i < m; ++i) {
                out.u(i, k) = work(i, j) / norms[j];
            }
        }
    }
    complete_orthonormal_columns(out.u, filled);
    return out;
}

}  // namespace detail

/// Thin singular value decomposition by cyclic one-sided Jacobi.
///
/// Columns are rotated until every pair is orthogonal to 1e-14 relative; a
/// cap of 60 sweeps raises NoConvergence. One-sided Jacobi keeps small
/// singular values accurate relative to their size for graded matrices.
inline SvdFactors svd(const RealMatrix& a) {
    if (a.rows() >= a.cols()) {
        return detail::jacobi_tall(a);
    }
    SvdFactors t = detail::jacobi_tall(a.transpose());
    return SvdFactors{std::move(t.v), std::move(t.sigma), std::move(t.u)};
}

/// 2-norm condition number sigma_max / sigma_min.
inline double cond2(const RealMatrix& a) {
    if (!a.square()) {
        throw DimensionMismatch("cond2: matrix must be square");
    }
    if (a.rows() == 0) {
        throw DimensionMismatch("cond2: empty matrix");
    }
    const SvdFactors f = svd(a);
    const double smin = f.sigma.back();
    if (smin == 0.0) {
        throw SingularMatrix("cond2: smallest singular value is zero");
    }
    return f.sigma.front() / smin;
}

/// Solution restricted to the k leading singular triplets.
inline Vector<double> tsvd_solve(const SvdFactors& f, std::span<const double> b, std::size_t k) {
    if (f.u.rows() != b.size()) {
        throw DimensionMismatch("tsvd_solve: right-hand side length mismatch");
    }
    if (k < 1 || k > f.rank_bound()) {
        throw TruncationOutOfRange("tsvd_solve: truncation " + std::to_string(k) + " outside [1, " +
                                   std::to_string(f.rank_bound()) + "]");
    }
    Vector<double> x(f.v.rows(), 0.0);
    for (std::size_t c = 0; c < k; ++c) {
        if (f.sigma[c] == 0.0) {
            throw SingularMatrix("tsvd_solve: retained singular value is zero");
        }
        double coef = 0.0;
        for (std::size_t i = 0; i < b.size(); ++i) {
            coef += f.u(i, c) * b[i];
        }
        coef /= f.sigma[c];
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] += coef * f.v(i, c);
        }
    }
    return x;
}

inline Vector<double> tsvd_solve(const RealMatrix& a, std::span<const double> b, std::size_t k) {
    if (a.rows() != b.size()) {
        throw DimensionMismatch("tsvd_solve: right-hand side length mismatch");
    }
    if (k < 1 || k > std::min(a.rows(), a.cols())) {
        throw TruncationOutOfRange("tsvd_solve: truncation " + std::to_string(k) + " outside [1, " +
                                   std::to_string(std::min(a.rows(), a.cols())) + "]");
    }
    return tsvd_solve(svd(a), b, k);
}

inline Vector<double> tsvd_solve(const RealMatrix& a, const Vector<double>& b, std::size_t k) {
    return tsvd_solve(a, std::span<const double>(b), k);
}

}  // namespace galerkin
