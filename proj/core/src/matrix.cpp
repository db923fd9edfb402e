#include "lcmident/matrix.hpp"

#include <gmpxx.h>

#include <vector>

namespace lcmident {

namespace {

struct IntMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<mpz_class> e;
    mpz_class row_scale_product = 1;

    mpz_class& at(std::size_t i, std::size_t j) { return e[i * cols + j]; }
    const mpz_class& at(std::size_t i, std::size_t j) const { return e[i * cols + j]; }
};

// Scale each row by the lcm of its denominators; the rank is unchanged and
// the determinant picks up the product of the scales.
IntMatrix clear_denominators(const Matrix<Rational>& m) {
    IntMatrix a;
    a.rows = m.rows();
    a.cols = m.cols();
    a.e.resize(a.rows * a.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        mpz_class scale = 1;
        for (std::size_t j = 0; j < a.cols; ++j)
            mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), m.at(i, j).den().get_mpz_t());
        for (std::size_t j = 0; j < a.cols; ++j) {
            const Rational& r = m.at(i, j);
            mpz_class factor;
            mpz_divexact(factor.get_mpz_t(), scale.get_mpz_t(), r.den().get_mpz_t());
            a.at(i, j) = r.num() * factor;
        }
        a.row_scale_product *= scale;
    }
    return a;
}

// Fraction-free elimination.  Returns the rank; when det_out is non-null the
// matrix must be square and *det_out receives the (sign-adjusted) Bareiss
// determinant of the integer matrix.
std::size_t bareiss(IntMatrix& a, mpz_class* det_out) {
    std::size_t r = 0;
    int sign = 1;
    mpz_class prev = 1;
    mpz_class last_pivot = 1;
    bool skipped_column = false;
    for (std::size_t c = 0; c < a.cols && r < a.rows; ++c) {
        std::size_t pivot = r;
        while (pivot < a.rows && sgn(a.at(pivot, c)) == 0) ++pivot;
        if (pivot == a.rows) {
            skipped_column = true;
            continue;
        }
        if (pivot != r) {
            for (std::size_t j = 0; j < a.cols; ++j) swap(a.at(pivot, j), a.at(r, j));
            sign = -sign;
        }
        for (std::size_t i = r + 1; i < a.rows; ++i) {
            for (std::size_t j = c + 1; j < a.cols; ++j) {
                mpz_class t = a.at(i, j) * a.at(r, c) - a.at(i, c) * a.at(r, j);
                mpz_divexact(a.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a.at(i, c) = 0;
        }
        prev = a.at(r, c);
        last_pivot = prev;
        ++r;
    }
    if (det_out != nullptr) {
        if (skipped_column || r < a.rows) {
            *det_out = 0;
        } else {
            *det_out = sign > 0 ? last_pivot : mpz_class(-last_pivot);
        }
    }
    return r;
}

Dual det_by_cofactor(const Matrix<Dual>& m) {
    const std::size_t n = m.rows();
    if (n == 0) return Dual(Rational(1));
    if (n == 1) return m.at(0, 0);
    if (n > 8)
        throw DegeneratePointError("cofactor determinant fallback limited to small matrices");
    Dual acc(Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        if (m.at(i, 0).is_zero()) continue;
        Dual term = m.at(i, 0) * det_by_cofactor(m.minor_removed(i, 0));
        if (i % 2 == 0)
            acc += term;
        else
            acc -= term;
    }
    return acc;
}

}  // namespace

std::size_t exact_rank(const Matrix<Rational>& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    IntMatrix a = clear_denominators(m);
    return bareiss(a, nullptr);
}

Rational det_exact(const Matrix<Rational>& m) {
    if (m.rows() != m.cols()) throw Error("determinant of a non-square matrix");
    if (m.rows() == 0) return Rational(1);
    IntMatrix a = clear_denominators(m);
    mpz_class det;
    bareiss(a, &det);
    return Rational(mpq_class(det)) / Rational(mpq_class(a.row_scale_product));
}

Dual det_exact(const Matrix<Dual>& m) {
    if (m.rows() != m.cols()) throw Error("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return Dual(Rational(1));

    Matrix<Dual> w = m;
    Dual det(Rational(1));
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && !exactly_invertible(w.at(pivot, k))) ++pivot;
        if (pivot == n) {
            bool column_zero = true;
            for (std::size_t i = k; i < n; ++i)
                if (!w.at(i, k).is_zero()) column_zero = false;
            if (column_zero) return Dual(Rational(0));
            // Entries with zero value but nonzero derivative: no invertible
            // pivot, finish the remaining block by cofactor expansion.
            Matrix<Dual> rest(n - k, n - k);
            for (std::size_t i = k; i < n; ++i)
                for (std::size_t j = k; j < n; ++j) rest.at(i - k, j - k) = w.at(i, j);
            Dual tail = det_by_cofactor(rest);
            Dual result = det * tail;
            return sign > 0 ? result : -result;
        }
        if (pivot != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(w.at(pivot, j), w.at(k, j));
            sign = -sign;
        }
        det *= w.at(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (w.at(i, k).is_zero()) continue;
            Dual f = w.at(i, k) / w.at(k, k);
            for (std::size_t j = k; j < n; ++j) w.at(i, j) -= f * w.at(k, j);
        }
    }
    return sign > 0 ? det : -det;
}

}  // namespace lcmident
