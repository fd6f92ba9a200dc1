#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "galerkin/errors.hpp"

namespace galerkin {

template <typename T>
struct is_complex : std::false_type {};
template <typename R>
struct is_complex<std::complex<R>> : std::true_type {};
template <typename T>
inline constexpr bool is_complex_v = is_complex<T>::value;

template <typename T>
concept Scalar = std::is_same_v<T, double> || std::is_same_v<T, std::complex<double>>;

template <Scalar T>
inline bool is_finite(const T& v) {
    if constexpr (is_complex_v<T>) {
        return std::isfinite(v.real()) && std::isfinite(v.imag());
    } else {
        return std::isfinite(v);
    }
}

template <Scalar T>
using Vector = std::vector<T>;

/// Row-major dense matrix over double or std::complex<double>.
template <Scalar T>
class DenseMatrix {
public:
    using value_type = T;

    DenseMatrix() = default;

    DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T{}) {}

    /// Takes ownership of `entries` (row-major); rejects wrong sizes and non-finite values.
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows_ * cols_) {
            throw DimensionMismatch("DenseMatrix: expected " + std::to_string(rows_ * cols_) +
                                    " entries, got " + std::to_string(data_.size()));
        }
        if (!std::all_of(data_.begin(), data_.end(), [](const T& v) { return is_finite(v); })) {
            throw InvalidArgument("DenseMatrix: non-finite entry");
        }
    }

    DenseMatrix(std::initializer_list<std::initializer_list<T>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) {
                throw DimensionMismatch("DenseMatrix: ragged initializer");
            }
            for (const auto& v : r) {
                if (!is_finite(v)) {
                    throw InvalidArgument("DenseMatrix: non-finite entry");
                }
                data_.push_back(v);
            }
        }
    }

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = T{1};
        }
        return m;
    }

    static DenseMatrix diagonal(std::span<const T> d) {
        DenseMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) {
            m(i, i) = d[i];
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const T> entries() const noexcept { return data_; }
    std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    DenseMatrix transpose() const {
        DenseMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                t(j, i) = (*this)(i, j);
            }
        }
        return t;
    }

    /// Maximum absolute row sum.
    double norm_inf() const {
        double best = 0.0;
        for (std::size_t i = 0; i < rows_; ++i) {
            double s = 0.0;
            for (const auto& v : row(i)) {
                s += std::abs(v);
            }
            best = std::max(best, s);
        }
        return best;
    }

    double max_abs() const {
        double best = 0.0;
        for (const auto& v : data_) {
            best = std::max(best, static_cast<double>(std::abs(v)));
        }
        return best;
    }

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using RealMatrix = DenseMatrix<double>;
using ComplexMatrix = DenseMatrix<std::complex<double>>;

template <Scalar T>
Vector<T> operator*(const DenseMatrix<T>& a, std::span<const T> x) {
    if (a.cols() != x.size()) {
        throw DimensionMismatch("matrix-vector product: dimension mismatch");
    }
    Vector<T> y(a.rows(), T{});
    for (std::size_t i = 0; i < a.rows(); ++i) {
        T s{};
        const auto r = a.row(i);
        for (std::size_t j = 0; j < a.cols(); ++j) {
            s += r[j] * x[j];
        }
        y[i] = s;
    }
    return y;
}

template <Scalar T>
Vector<T> operator*(const DenseMatrix<T>& a, const Vector<T>& x) {
    return a * std::span<const T>(x);
}

template <Scalar T>
DenseMatrix<T> operator*(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
    if (a.cols() != b.rows()) {
        throw DimensionMismatch("matrix product: dimension mismatch");
    }
    DenseMatrix<T> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const T aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) {
                c(i, j) += aik * b(k, j);
            }
        }
    }
    return c;
}

template <Scalar T>
double norm_inf(std::span<const T> v) {
    double best = 0.0;
    for (const auto& x : v) {
        best = std::max(best, static_cast<double>(std::abs(x)));
    }
    return best;
}

template <Scalar T>
double norm2(std::span<const T> v) {
    double s = 0.0;
    for (const auto& x : v) {
        s += std::norm(x);
    }
    return std::sqrt(s);
}

template <Scalar T>
double norm2(const Vector<T>& v) {
    return norm2(std::span<const T>(v));
}

template <Scalar T>
double norm_inf(const Vector<T>& v) {
    return norm_inf(std::span<const T>(v));
}

}  // namespace galerkin
