#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>

#include "lcmident/errors.hpp"

namespace lcmident {

/// Arbitrary-precision rational number, always stored in lowest terms with a
/// positive denominator.  Arithmetic never rounds.
class Rational {
  public:
    Rational() : q_(0) {}
    Rational(long n) : q_(n) {}  // NOLINT: implicit by design
    Rational(int n) : q_(static_cast<long>(n)) {}

    Rational(long num, long den) : q_(num, den) {
        if (den == 0) throw Error("rational with zero denominator");
        q_.canonicalize();
    }

    /// Takes ownership of an mpq value; canonicalizes it.
    explicit Rational(mpq_class q) : q_(std::move(q)) {
        if (q_.get_den() == 0) throw Error("rational with zero denominator");
        q_.canonicalize();
    }

    /// Parses "p", "-p", or "p/q" in base 10.
    static Rational from_string(const std::string& text);

    const mpz_class& num() const { return q_.get_num(); }
    const mpz_class& den() const { return q_.get_den(); }

    bool is_zero() const { return sgn(q_) == 0; }
    int sign() const { return sgn(q_); }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw Error("rational division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
    friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
    friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
    friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return ::cmp(a.q_, b.q_) == 0; }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return ::cmp(a.q_, b.q_) < 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    /// "p" when the denominator is 1, otherwise "p/q".
    std::string str() const {
        if (q_.get_den() == 1) return q_.get_num().get_str();
        return q_.get_num().get_str() + "/" + q_.get_den().get_str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

    /// Cheap mixing value for deriving deterministic retry seeds from points.
    std::uint64_t fold() const {
        const std::uint64_t n = mpz_fdiv_ui(q_.get_num().get_mpz_t(), 0xfffffffbUL);
        const std::uint64_t d = mpz_fdiv_ui(q_.get_den().get_mpz_t(), 0xfffffffbUL);
        return (n << 32) ^ d ^ (q_.get_num() < 0 ? 0x8000000000000000ULL : 0);
    }

  private:
    mpq_class q_;
};

inline Rational Rational::from_string(const std::string& text) {
    if (text.empty()) throw ParseError("empty rational literal");
    std::size_t start = (text[0] == '+' || text[0] == '-') ? 1 : 0;
    bool seen_digit = false;
    bool seen_slash = false;
    for (std::size_t i = start; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '/') {
            if (seen_slash || !seen_digit) throw ParseError("malformed rational literal: " + text);
            seen_slash = true;
            seen_digit = false;
        } else if (c >= '0' && c <= '9') {
            seen_digit = true;
        } else {
            throw ParseError("malformed rational literal: " + text);
        }
    }
    if (!seen_digit) throw ParseError("malformed rational literal: " + text);
    const std::string body = text[0] == '+' ? text.substr(1) : text;  // GMP rejects a leading +
    mpq_class q;
    if (q.set_str(body, 10) != 0) throw ParseError("malformed rational literal: " + text);
    if (q.get_den() == 0) throw ParseError("rational literal with zero denominator: " + text);
    return Rational(std::move(q));
}

inline bool exactly_invertible(const Rational& r) { return !r.is_zero(); }

}  // namespace lcmident
