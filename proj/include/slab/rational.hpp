#pragma once

#include <boost/rational.hpp>

#include <string>

namespace slab {

using Rational = boost::rational<long long>;
// Compare Rationals only with Rationals: mixed comparisons with integers
// recurse forever in boost 1.74 under C++20 rewritten operators.

// Accepts "a/b", integers and finite decimals ("3.5"); exact.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);
double to_double(const Rational& q);

// Positive exponent or infinity; infinity is a distinct state, never a float.
// Range checks such as p >= 1 belong to the types that use it.
class Exponent {
public:
    Exponent() = default;
    Exponent(long long v) : value_(v) { check(); }
    Exponent(const Rational& v) : value_(v) { check(); }

    static Exponent infinity() {
        Exponent e;
        e.inf_ = true;
        return e;
    }
    // "inf", "infinity", "oo" or a rational/decimal literal.
    static Exponent parse(const std::string& text);

    bool is_infinite() const { return inf_; }
    const Rational& rational() const;
    double value() const;
    // 1/p, exactly 0 for infinity.
    Rational reciprocal() const { return inf_ ? Rational(0) : Rational(1) / value_; }
    double reciprocal_d() const { return to_double(reciprocal()); }
    // Hoelder conjugate p'.
    Exponent conjugate() const;

    std::string str() const;
    bool operator==(const Exponent& o) const {
        return inf_ == o.inf_ && (inf_ || value_ == o.value_);
    }

private:
    void check() const;
    bool inf_ = false;
    Rational value_{2};
};

}  // namespace slab
