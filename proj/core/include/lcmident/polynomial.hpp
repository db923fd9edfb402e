#pragma once

#include <cstddef>
#include <ostream>
#include <utility>
#include <vector>

#include "lcmident/dual.hpp"
#include "lcmident/errors.hpp"
#include "lcmident/rational.hpp"

namespace lcmident {

/// Univariate polynomial in the differential operator, coefficients ascending
/// by degree.  The scalar ring R is Rational or Dual.  The highest stored
/// coefficient is nonzero unless the polynomial is zero.
template <typename R>
class Polynomial {
  public:
    Polynomial() = default;

    explicit Polynomial(std::vector<R> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Polynomial constant(R value) { return Polynomial(std::vector<R>{std::move(value)}); }

    /// coeff * x^power
    static Polynomial monomial(std::size_t power, R coeff) {
        std::vector<R> c(power + 1);
        c[power] = std::move(coeff);
        return Polynomial(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    /// Coefficient of x^k; zero beyond the stored degree.
    R coeff(std::size_t k) const { return k < c_.size() ? c_[k] : R(0); }

    const std::vector<R>& coeffs() const { return c_; }

    const R& leading() const {
        if (c_.empty()) throw Error("leading coefficient of the zero polynomial");
        return c_.back();
    }

    R eval(const R& x) const {
        R acc(0);
        for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
        return acc;
    }

    Polynomial& operator+=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), R(0));
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
        trim();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), R(0));
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
        trim();
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { a += b; return a; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { a -= b; return a; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return Polynomial();
        std::vector<R> c(a.c_.size() + b.c_.size() - 1, R(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(std::move(c));
    }

    Polynomial scaled(const R& s) const {
        std::vector<R> c(c_);
        for (auto& v : c) v = v * s;
        return Polynomial(std::move(c));
    }

    friend Polynomial operator-(const Polynomial& a) { return a.scaled(R(-1)); }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    /// Leading coefficient scaled to one.  Requires an invertible lead.
    Polynomial monic() const {
        if (is_zero()) throw Error("monic form of the zero polynomial");
        if (!exactly_invertible(c_.back()))
            throw DegeneratePointError("leading coefficient is not invertible");
        if (c_.back() == R(1)) return *this;
        std::vector<R> c(c_);
        const R inv = R(1) / c_.back();
        for (auto& v : c) v = v * inv;
        c.back() = R(1);
        return Polynomial(std::move(c));
    }

    friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
        if (p.is_zero()) return os << "0";
        for (std::size_t k = p.c_.size(); k-- > 0;) {
            os << p.c_[k];
            if (k > 0) os << "*s^" << k << " + ";
        }
        return os;
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<R> c_;
};

/// Quotient and remainder of num by den.  Requires the divisor's leading
/// coefficient to be invertible (over Dual: nonzero value part).
template <typename R>
std::pair<Polynomial<R>, Polynomial<R>> poly_divmod(const Polynomial<R>& num,
                                                    const Polynomial<R>& den) {
    if (den.is_zero()) throw Error("polynomial division by zero");
    if (!exactly_invertible(den.leading()))
        throw DegeneratePointError("polynomial division by non-invertible leading coefficient");
    if (num.degree() < den.degree()) return {Polynomial<R>(), num};

    std::vector<R> rem(num.coeffs());
    const int dn = num.degree();
    const int dd = den.degree();
    std::vector<R> quot(static_cast<std::size_t>(dn - dd) + 1, R(0));
    const R lead_inv = R(1) / den.leading();
    for (int k = dn - dd; k >= 0; --k) {
        R q = rem[static_cast<std::size_t>(k + dd)] * lead_inv;
        if (q.is_zero()) continue;
        quot[static_cast<std::size_t>(k)] = q;
        for (int j = 0; j <= dd; ++j)
            rem[static_cast<std::size_t>(k + j)] -= q * den.coeff(static_cast<std::size_t>(j));
    }
    return {Polynomial<R>(std::move(quot)), Polynomial<R>(std::move(rem))};
}

/// Monic greatest common divisor via the Euclidean algorithm.
/// gcd(p, 0) = monic(p); both inputs zero is an error.
template <typename R>
Polynomial<R> poly_gcd_monic(Polynomial<R> p, Polynomial<R> q) {
    if (p.is_zero() && q.is_zero()) throw Error("gcd undefined for two zero polynomials");
    while (!q.is_zero()) {
        auto [quot, rem] = poly_divmod(p, q);
        (void)quot;
        p = std::move(q);
        q = std::move(rem);
    }
    return p.monic();
}

/// Unique polynomial of degree < nodes.size() through (node_k, value_k).
/// Nodes are plain rationals, so every division is by a rational scalar and
/// the result is exact over Dual values as well.
template <typename R>
Polynomial<R> lagrange_interpolate(const std::vector<Rational>& nodes,
                                   const std::vector<R>& values) {
    if (nodes.empty()) throw Error("interpolation requires at least one node");
    if (nodes.size() != values.size()) throw Error("interpolation node/value count mismatch");
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j)
            if (nodes[i] == nodes[j]) throw Error("repeated interpolation node");

    Polynomial<R> acc;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        Polynomial<Rational> basis = Polynomial<Rational>::constant(Rational(1));
        Rational denom(1);
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            if (j == i) continue;
            basis = basis * Polynomial<Rational>(std::vector<Rational>{-nodes[j], Rational(1)});
            denom *= nodes[i] - nodes[j];
        }
        std::vector<R> term(basis.coeffs().size(), R(0));
        for (std::size_t k = 0; k < basis.coeffs().size(); ++k)
            term[k] = values[i] * R(basis.coeff(k) / denom);
        acc += Polynomial<R>(std::move(term));
    }
    return acc;
}

}  // namespace lcmident
