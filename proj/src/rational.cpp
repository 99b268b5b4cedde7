#include "hopfcert/rational.hpp"

#include <ostream>

#include "hopfcert/error.hpp"

namespace hopfcert {

Rational::Rational(const Integer& num, const Integer& den) {
    if (den == 0) {
        throw InvalidArgument("rational with zero denominator");
    }
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

Rational Rational::parse(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            return Rational(Integer(text));
        }
        return Rational(Integer(text.substr(0, slash)), Integer(text.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
        throw InvalidArgument("not a rational: '" + text + "'");
    }
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) {
        throw InvalidArgument("rational division by zero");
    }
    value_ /= o.value_;
    return *this;
}

Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

Rational Rational::inverse() const { return Rational(1) / *this; }

Rational Rational::pow(unsigned exponent) const {
    Rational result(1);
    Rational base = *this;
    while (exponent != 0) {
        if (exponent & 1U) {
            result *= base;
        }
        base *= base;
        exponent >>= 1U;
    }
    return result;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Rational::str() const {
    if (value_.get_den() == 1) {
        return value_.get_num().get_str();
    }
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Integer gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

}  // namespace hopfcert
