#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hopfcert/rational.hpp"

namespace hopfcert {

/// Integer coefficients of the n-th cyclotomic polynomial, constant term
/// first. Computed by dividing x^n - 1 by Phi_d for every proper divisor d.
std::vector<Integer> cyclotomic_polynomial(unsigned n);

/// Euler's totient.
unsigned euler_phi(unsigned n);

/// Element of Q(zeta_n), stored as a polynomial in zeta_n of degree
/// < phi(n) reduced modulo Phi_n.
class Cyclotomic {
public:
    static Cyclotomic zero(unsigned n);
    static Cyclotomic one(unsigned n);
    static Cyclotomic from_rational(unsigned n, const Rational& r);
    /// zeta_n^k for any integer k (reduced mod n).
    static Cyclotomic zeta(unsigned n, long k);

    unsigned order() const { return order_; }
    const std::vector<Rational>& coefficients() const { return coeffs_; }

    bool is_zero() const;
    bool is_rational() const;
    /// Constant coefficient; meaningful when is_rational().
    const Rational& rational_part() const { return coeffs_.front(); }

    Cyclotomic& operator+=(const Cyclotomic& o);
    Cyclotomic& operator-=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Rational& r);

    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Rational& r) { return a *= r; }
    Cyclotomic operator-() const;

    /// Multiplicative inverse via the extended Euclidean algorithm against Phi_n.
    Cyclotomic inverse() const;

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);

    std::string str() const;

private:
    Cyclotomic(unsigned n, std::shared_ptr<const std::vector<Integer>> modulus);
    void check_order(const Cyclotomic& o) const;

    unsigned order_ = 1;
    std::shared_ptr<const std::vector<Integer>> modulus_;
    std::vector<Rational> coeffs_;
};

}  // namespace hopfcert
