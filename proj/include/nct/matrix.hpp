#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "nct/errors.hpp"
#include "nct/rational.hpp"

namespace nct {

/// Dense row-major matrix over an exact or numeric scalar type.
template <typename T>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols, T fill = T())
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    Matrix(std::initializer_list<std::initializer_list<T>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw DimensionMismatch("ragged initializer");
            for (const auto& v : r) data_.push_back(v);
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix operator+(const Matrix& o) const {
        check_same_shape(o);
        Matrix r(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] + o.data_[i];
        return r;
    }

    Matrix operator-(const Matrix& o) const {
        check_same_shape(o);
        Matrix r(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] - o.data_[i];
        return r;
    }

    Matrix operator-() const {
        Matrix r(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = -data_[i];
        return r;
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw DimensionMismatch("matrix product shape mismatch");
        Matrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const T& a = (*this)(i, k);
                if (a == T(0)) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
            }
        return r;
    }

    Matrix operator*(const T& s) const {
        Matrix r(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] * s;
        return r;
    }

    std::vector<T> operator*(const std::vector<T>& v) const {
        if (cols_ != v.size()) throw DimensionMismatch("matrix-vector shape mismatch");
        std::vector<T> r(rows_, T(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    Matrix transpose() const {
        Matrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        if (r0 + nr > rows_ || c0 + nc > cols_) throw IndexOutOfRange("block out of range");
        Matrix r(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
        return r;
    }

    void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
        if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw IndexOutOfRange("block out of range");
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }

    template <typename U, typename F>
    Matrix<U> map(F f) const {
        Matrix<U> r(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(i, j) = f((*this)(i, j));
        return r;
    }

private:
    void check_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("shape mismatch");
    }

    std::size_t rows_, cols_;
    std::vector<T> data_;
};

using RatMatrix = Matrix<Rational>;
using IntMatrix = Matrix<Int>;
using Complex = std::complex<double>;
using CMatrix = Matrix<Complex>;

/// Exact determinant by fraction-free Gaussian elimination on a rational copy.
inline Rational det(const RatMatrix& m) {
    if (!m.square()) throw NonSquare();
    std::size_t n = m.rows();
    RatMatrix a = m;
    Rational d(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a(pivot, col).is_zero()) ++pivot;
        if (pivot == n) return Rational(0);
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(pivot, j), a(col, j));
            d = -d;
        }
        d *= a(col, col);
        Rational inv = a(col, col).inverse();
        for (std::size_t i = col + 1; i < n; ++i) {
            if (a(i, col).is_zero()) continue;
            Rational f = a(i, col) * inv;
            for (std::size_t j = col; j < n; ++j) a(i, j) -= f * a(col, j);
        }
    }
    return d;
}

inline Rational det(const IntMatrix& m) {
    return det(m.map<Rational>([](const Int& v) { return Rational(v); }));
}

/// Exact inverse; throws SingularMatrix when det = 0.
inline RatMatrix rat_inverse(const RatMatrix& m) {
    if (!m.square()) throw NonSquare();
    std::size_t n = m.rows();
    RatMatrix a = m;
    RatMatrix inv = RatMatrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a(pivot, col).is_zero()) ++pivot;
        if (pivot == n) throw SingularMatrix();
        if (pivot != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(pivot, j), a(col, j));
                std::swap(inv(pivot, j), inv(col, j));
            }
        Rational p = a(col, col).inverse();
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) *= p;
            inv(col, j) *= p;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a(i, col).is_zero()) continue;
            Rational f = a(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

/// True iff m = -m^t entrywise. Throws NonSquare for rectangular input.
template <typename T>
bool is_skew(const Matrix<T>& m) {
    if (!m.square()) throw NonSquare();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j <= i; ++j)
            if (!(m(i, j) == -m(j, i))) return false;
    return true;
}

inline RatMatrix to_rational(const IntMatrix& m) {
    return m.map<Rational>([](const Int& v) { return Rational(v); });
}

/// Conversion that insists every entry is integral.
inline IntMatrix to_integer(const RatMatrix& m) {
    return m.map<Int>([](const Rational& v) {
        if (!v.is_integer()) throw NotRational("matrix entry is not an integer");
        return v.num();
    });
}

inline CMatrix to_complex(const RatMatrix& m) {
    return m.map<Complex>([](const Rational& v) { return Complex(v.to_double(), 0.0); });
}

/// Exact rational skew-symmetric deformation matrix.
class SkewMatrix {
public:
    SkewMatrix() = default;
    explicit SkewMatrix(RatMatrix m) : m_(std::move(m)) {
        if (!is_skew(m_)) throw NotSkew("deformation matrix must be skew-symmetric");
    }

    static SkewMatrix zero(std::size_t n) { return SkewMatrix(RatMatrix(n, n)); }

    std::size_t n() const { return m_.rows(); }
    const RatMatrix& mat() const { return m_; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

    bool operator==(const SkewMatrix& o) const { return m_ == o.m_; }
    bool operator!=(const SkewMatrix& o) const { return !(*this == o); }

private:
    RatMatrix m_;
};

// Numeric helpers for complex matrices.

inline CMatrix adjoint(const CMatrix& m) {
    CMatrix r(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(j, i) = std::conj(m(i, j));
    return r;
}

inline double max_abs(const CMatrix& m) {
    double r = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r = std::max(r, std::abs(m(i, j)));
    return r;
}

inline Complex trace(const CMatrix& m) {
    if (!m.square()) throw NonSquare();
    Complex t = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
    return t;
}

inline double hermitian_defect(const CMatrix& m) { return max_abs(m - adjoint(m)); }

}  // namespace nct
