#pragma once

#include <cassert>
#include <cstddef>
#include <utility>
#include <vector>

#include "lcmident/dual.hpp"
#include "lcmident/errors.hpp"
#include "lcmident/rational.hpp"

namespace lcmident {

/// Dense row-major matrix over an exact scalar ring (Rational or Dual).
template <typename R>
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = R(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    R& at(std::size_t i, std::size_t j) {
        assert(i < rows_ && j < cols_);
        return e_[i * cols_ + j];
    }
    const R& at(std::size_t i, std::size_t j) const {
        assert(i < rows_ && j < cols_);
        return e_[i * cols_ + j];
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    R trace() const {
        if (rows_ != cols_) throw Error("trace of a non-square matrix");
        R t(0);
        for (std::size_t i = 0; i < rows_; ++i) t += at(i, i);
        return t;
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw Error("matrix product dimension mismatch");
        Matrix p(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const R& a = at(i, k);
                if (a.is_zero()) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) p.at(i, j) += a * o.at(k, j);
            }
        return p;
    }

    /// Copy with one row and one column removed (0-indexed).
    Matrix minor_removed(std::size_t row, std::size_t col) const {
        if (row >= rows_ || col >= cols_) throw Error("minor indices out of range");
        Matrix m(rows_ - 1, cols_ - 1);
        for (std::size_t i = 0, mi = 0; i < rows_; ++i) {
            if (i == row) continue;
            for (std::size_t j = 0, mj = 0; j < cols_; ++j) {
                if (j == col) continue;
                m.at(mi, mj) = at(i, j);
                ++mj;
            }
            ++mi;
        }
        return m;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<R> e_;
};

/// a stacked on top of b (column counts must agree).
template <typename R>
Matrix<R> stack_rows(const Matrix<R>& a, const Matrix<R>& b) {
    if (a.cols() != b.cols()) throw Error("stack_rows column mismatch");
    Matrix<R> s(a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) s.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) s.at(a.rows() + i, j) = b.at(i, j);
    return s;
}

/// Exact rank over the rational field, via fraction-free Bareiss elimination
/// on the integer matrix obtained by clearing row denominators.
std::size_t exact_rank(const Matrix<Rational>& m);

/// Exact determinant (Bareiss).  Errors on non-square input.
Rational det_exact(const Matrix<Rational>& m);

/// Exact determinant over the dual ring: Gaussian elimination with pivots of
/// nonzero value part, cofactor expansion as fallback when no such pivot
/// exists in a column.
Dual det_exact(const Matrix<Dual>& m);

}  // namespace lcmident
