#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace hopfcert {

using Integer = mpz_class;

/// Exact rational number, always kept in lowest terms with a positive
/// denominator. Zero is 0/1.
class Rational {
public:
    Rational() = default;
    Rational(long v) : value_(v) {}  // NOLINT(google-explicit-constructor)
    Rational(const Integer& v) : value_(v) {}  // NOLINT(google-explicit-constructor)
    Rational(const Integer& num, const Integer& den);
    Rational(long num, long den) : Rational(Integer(num), Integer(den)) {}

    /// Parses "num/den" or "num".
    static Rational parse(const std::string& text);

    Integer numerator() const { return value_.get_num(); }
    Integer denominator() const { return value_.get_den(); }

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_integer() const { return value_.get_den() == 1; }
    int sign() const { return sgn(value_); }

    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const;

    Rational inverse() const;
    Rational pow(unsigned exponent) const;

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    /// "num/den", with "/den" omitted when the denominator is 1.
    std::string str() const;

    const mpq_class& raw() const { return value_; }

private:
    explicit Rational(mpq_class v) : value_(std::move(v)) {}

    mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Greatest common divisor of |a| and |b|.
Integer gcd(const Integer& a, const Integer& b);

}  // namespace hopfcert
