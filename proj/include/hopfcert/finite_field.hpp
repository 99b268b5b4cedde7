#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hopfcert {

/// Canonical integer encoding of a field element: base-p digits, least
/// significant first, are the polynomial-basis coefficients.
using Code = std::uint32_t;

inline constexpr std::uint64_t kDefaultMaxFieldOrder = 1024;

bool is_prime(std::uint64_t n);

/// If n = p^m for a prime p, returns {p, m}.
std::optional<std::pair<unsigned, unsigned>> prime_power(std::uint64_t n);

/// GF(p^m) in the polynomial basis given by the lexicographically smallest
/// monic irreducible modulus (coefficient tuples compared constant term first).
/// Arithmetic is table driven, so the order is capped.
class FiniteField {
public:
    static std::shared_ptr<const FiniteField> create(unsigned p, unsigned m,
                                                     std::uint64_t max_order = kDefaultMaxFieldOrder);
    /// Field of order q, q a prime power.
    static std::shared_ptr<const FiniteField> of_order(std::uint64_t q,
                                                       std::uint64_t max_order = kDefaultMaxFieldOrder);

    unsigned characteristic() const { return p_; }
    unsigned degree() const { return m_; }
    Code order() const { return q_; }
    /// Coefficients c_0..c_m of the monic modulus; x for prime fields.
    const std::vector<unsigned>& modulus() const { return modulus_; }

    Code zero() const { return 0; }
    Code one() const { return 1; }
    /// The class of x in the polynomial basis (code p); for m = 1 this is the
    /// least primitive root instead, since x would be 0.
    Code generator() const;
    /// Least code of multiplicative order q - 1.
    Code primitive_element() const { return primitive_; }
    /// Integer n reduced into the prime subfield.
    Code from_int(long n) const;
    bool in_prime_subfield(Code x) const { return x < p_; }

    Code add(Code a, Code b) const { return add_[index(a, b)]; }
    Code sub(Code a, Code b) const { return add_[index(a, neg_[b])]; }
    Code mul(Code a, Code b) const { return mul_[index(a, b)]; }
    Code neg(Code a) const { return neg_[a]; }
    /// Throws InvalidArgument on zero.
    Code inv(Code a) const;
    Code pow(Code a, std::uint64_t k) const;
    /// x^(p^k).
    Code frobenius(Code x, unsigned k) const;
    /// Square root with the smaller code, if x is a square.
    std::optional<Code> square_root(Code x) const;

    std::vector<unsigned> digits(Code x) const;
    Code from_digits(const std::vector<unsigned>& digits) const;

    /// "x^2+x+1"-style rendering of the modulus.
    std::string modulus_string() const;

    bool operator==(const FiniteField& o) const { return p_ == o.p_ && m_ == o.m_ && modulus_ == o.modulus_; }

private:
    FiniteField(unsigned p, unsigned m, std::vector<unsigned> modulus);
    std::size_t index(Code a, Code b) const { return static_cast<std::size_t>(a) * q_ + b; }

    unsigned p_;
    unsigned m_;
    Code q_;
    std::vector<unsigned> modulus_;
    std::vector<Code> add_;
    std::vector<Code> mul_;
    std::vector<Code> neg_;
    std::vector<Code> inv_;
    std::vector<Code> frob_;
    std::vector<std::int64_t> sqrt_;
    Code primitive_ = 1;
};

/// A field element bound to its field; arithmetic checks that operands agree.
class FieldElement {
public:
    FieldElement(std::shared_ptr<const FiniteField> field, Code code);

    const FiniteField& field() const { return *field_; }
    const std::shared_ptr<const FiniteField>& field_ptr() const { return field_; }
    Code code() const { return code_; }
    bool is_zero() const { return code_ == 0; }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    FieldElement operator-() const;
    FieldElement inverse() const;
    FieldElement pow(std::uint64_t k) const;
    FieldElement frobenius(unsigned k) const;
    std::optional<FieldElement> square_root() const;

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return *a.field_ == *b.field_ && a.code_ == b.code_;
    }

private:
    void check_same(const FieldElement& o) const;

    std::shared_ptr<const FiniteField> field_;
    Code code_;
};

/// The Suzuki automorphism Fr_2^(n+1) of GF(2^(2n+1)); squares to Fr_2.
Code suzuki_theta(const FiniteField& f, Code x);
/// Inverse of suzuki_theta, Fr_2^n.
Code suzuki_theta_inverse(const FiniteField& f, Code x);

}  // namespace hopfcert
