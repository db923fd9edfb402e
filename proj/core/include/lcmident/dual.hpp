#pragma once

#include <ostream>
#include <utility>

#include "lcmident/errors.hpp"
#include "lcmident/rational.hpp"

namespace lcmident {

/// Rational dual number a + b·eps with eps^2 = 0, carrying one derivative
/// slot.  Running an evaluation with one parameter seeded to (value, 1) and
/// the rest to (value, 0) yields the exact partial derivative with respect to
/// that parameter in the eps component.
struct Dual {
    Rational val;
    Rational der;

    Dual() = default;
    Dual(long v) : val(v) {}  // NOLINT: implicit by design
    Dual(Rational v) : val(std::move(v)) {}  // NOLINT
    Dual(Rational v, Rational d) : val(std::move(v)), der(std::move(d)) {}

    static Dual seeded(Rational v) { return Dual(std::move(v), Rational(1)); }

    bool is_zero() const { return val.is_zero() && der.is_zero(); }

    Dual& operator+=(const Dual& o) {
        val += o.val;
        der += o.der;
        return *this;
    }
    Dual& operator-=(const Dual& o) {
        val -= o.val;
        der -= o.der;
        return *this;
    }
    Dual& operator*=(const Dual& o) {
        der = der * o.val + val * o.der;
        val *= o.val;
        return *this;
    }
    Dual& operator/=(const Dual& o) {
        if (o.val.is_zero())
            throw DegeneratePointError("division by a dual number with zero value part");
        val /= o.val;
        der = (der - val * o.der) / o.val;
        return *this;
    }

    friend Dual operator+(Dual a, const Dual& b) { a += b; return a; }
    friend Dual operator-(Dual a, const Dual& b) { a -= b; return a; }
    friend Dual operator*(Dual a, const Dual& b) { a *= b; return a; }
    friend Dual operator/(Dual a, const Dual& b) { a /= b; return a; }
    friend Dual operator-(const Dual& a) { return Dual(-a.val, -a.der); }

    friend bool operator==(const Dual& a, const Dual& b) { return a.val == b.val && a.der == b.der; }
    friend bool operator!=(const Dual& a, const Dual& b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, const Dual& d) {
        return os << d.val << " + " << d.der << "*eps";
    }
};

/// Division is only defined for duals with nonzero value part.
inline bool exactly_invertible(const Dual& d) { return !d.val.is_zero(); }

}  // namespace lcmident
