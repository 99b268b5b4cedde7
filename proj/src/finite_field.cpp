#include "hopfcert/finite_field.hpp"

#include <sstream>

#include "hopfcert/error.hpp"

namespace hopfcert {

namespace {

using PolyP = std::vector<unsigned>;

// Remainder of a modulo the monic polynomial b over GF(p).
PolyP poly_mod(PolyP a, const PolyP& b, unsigned p) {
    const std::size_t db = b.size() - 1;
    for (std::size_t k = a.size(); k-- > db;) {
        const unsigned c = a[k] % p;
        if (c == 0) continue;
        for (std::size_t i = 0; i <= db; ++i) {
            a[k - db + i] = (a[k - db + i] + (p - c) * b[i]) % p;
        }
    }
    a.resize(std::min(a.size(), db));
    return a;
}

PolyP monic_from_index(std::uint64_t idx, unsigned p, unsigned deg) {
    PolyP f(deg + 1, 0);
    f[deg] = 1;
    for (unsigned i = 0; i < deg; ++i) {
        f[i] = static_cast<unsigned>(idx % p);
        idx /= p;
    }
    return f;
}

bool is_irreducible(const PolyP& f, unsigned p) {
    const unsigned m = static_cast<unsigned>(f.size() - 1);
    for (unsigned d = 1; 2 * d <= m; ++d) {
        std::uint64_t count = 1;
        for (unsigned i = 0; i < d; ++i) count *= p;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            const PolyP g = monic_from_index(idx, p, d);
            const PolyP r = poly_mod(f, g, p);
            bool zero = true;
            for (unsigned c : r) zero = zero && c == 0;
            if (zero) return false;
        }
    }
    return true;
}

// Lexicographically smallest monic irreducible of degree m, comparing the
// coefficient tuples (c_0, ..., c_{m-1}) with c_0 as the leading digit.
PolyP canonical_modulus(unsigned p, unsigned m) {
    if (m == 1) return {0, 1};
    std::uint64_t count = 1;
    for (unsigned i = 0; i < m; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        PolyP f(m + 1, 0);
        f[m] = 1;
        std::uint64_t rest = idx;
        for (unsigned i = m; i-- > 0;) {
            f[i] = static_cast<unsigned>(rest % p);
            rest /= p;
        }
        if (f[0] == 0) continue;
        if (is_irreducible(f, p)) return f;
    }
    throw InvariantViolation("no irreducible polynomial found");
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

std::optional<std::pair<unsigned, unsigned>> prime_power(std::uint64_t n) {
    if (n < 2) return std::nullopt;
    std::uint64_t p = 2;
    while (n % p != 0) ++p;
    unsigned m = 0;
    while (n % p == 0) {
        n /= p;
        ++m;
    }
    if (n != 1) return std::nullopt;
    return std::make_pair(static_cast<unsigned>(p), m);
}

std::shared_ptr<const FiniteField> FiniteField::create(unsigned p, unsigned m, std::uint64_t max_order) {
    if (!is_prime(p)) {
        throw InvalidArgument("field characteristic " + std::to_string(p) + " is not prime");
    }
    if (m == 0) {
        throw InvalidArgument("field degree must be positive");
    }
    std::uint64_t q = 1;
    for (unsigned i = 0; i < m; ++i) {
        q *= p;
        if (q > max_order) {
            throw BoundExceeded("field order " + std::to_string(p) + "^" + std::to_string(m) +
                                " exceeds bound " + std::to_string(max_order));
        }
    }
    return std::shared_ptr<const FiniteField>(new FiniteField(p, m, canonical_modulus(p, m)));
}

std::shared_ptr<const FiniteField> FiniteField::of_order(std::uint64_t q, std::uint64_t max_order) {
    const auto pm = prime_power(q);
    if (!pm) {
        throw InvalidArgument(std::to_string(q) + " is not a prime power");
    }
    return create(pm->first, pm->second, max_order);
}

FiniteField::FiniteField(unsigned p, unsigned m, std::vector<unsigned> modulus)
    : p_(p), m_(m), q_(1), modulus_(std::move(modulus)) {
    for (unsigned i = 0; i < m_; ++i) q_ *= p_;
    const std::size_t qq = static_cast<std::size_t>(q_) * q_;
    add_.resize(qq);
    mul_.resize(qq);
    neg_.resize(q_);
    inv_.assign(q_, 0);
    frob_.resize(q_);
    sqrt_.assign(q_, -1);

    std::vector<PolyP> polys(q_);
    for (Code a = 0; a < q_; ++a) polys[a] = digits(a);
    for (Code a = 0; a < q_; ++a) {
        for (Code b = 0; b < q_; ++b) {
            PolyP s(m_);
            for (unsigned i = 0; i < m_; ++i) s[i] = (polys[a][i] + polys[b][i]) % p_;
            add_[index(a, b)] = from_digits(s);

            PolyP prod(2 * m_ - 1, 0);
            for (unsigned i = 0; i < m_; ++i) {
                for (unsigned j = 0; j < m_; ++j) {
                    prod[i + j] = (prod[i + j] + polys[a][i] * polys[b][j]) % p_;
                }
            }
            mul_[index(a, b)] = m_ == 1 ? static_cast<Code>((a * b) % p_) : from_digits(poly_mod(prod, modulus_, p_));
        }
    }
    for (Code a = 0; a < q_; ++a) {
        for (Code b = 0; b < q_; ++b) {
            if (add_[index(a, b)] == 0) neg_[a] = b;
            if (mul_[index(a, b)] == 1) inv_[a] = b;
        }
        frob_[a] = pow(a, p_);
    }
    for (Code y = q_; y-- > 0;) {
        sqrt_[mul(y, y)] = y;  // descending, so the smaller root wins
    }
    for (Code g = 1; g < q_; ++g) {
        Code x = g;
        Code ord = 1;
        while (x != 1) {
            x = mul(x, g);
            ++ord;
        }
        if (ord == q_ - 1) {
            primitive_ = g;
            break;
        }
    }
}

Code FiniteField::generator() const { return m_ > 1 ? static_cast<Code>(p_) : primitive_; }

Code FiniteField::from_int(long n) const {
    const long r = ((n % static_cast<long>(p_)) + static_cast<long>(p_)) % static_cast<long>(p_);
    return static_cast<Code>(r);
}

Code FiniteField::inv(Code a) const {
    if (a == 0) {
        throw InvalidArgument("inversion of zero in GF(" + std::to_string(q_) + ")");
    }
    return inv_[a];
}

Code FiniteField::pow(Code a, std::uint64_t k) const {
    Code result = 1;
    Code base = a;
    while (k != 0) {
        if (k & 1U) result = mul(result, base);
        base = mul(base, base);
        k >>= 1U;
    }
    return result;
}

Code FiniteField::frobenius(Code x, unsigned k) const {
    for (unsigned i = 0; i < k % m_; ++i) x = frob_[x];
    return x;
}

std::optional<Code> FiniteField::square_root(Code x) const {
    if (sqrt_[x] < 0) return std::nullopt;
    return static_cast<Code>(sqrt_[x]);
}

std::vector<unsigned> FiniteField::digits(Code x) const {
    std::vector<unsigned> d(m_);
    for (unsigned i = 0; i < m_; ++i) {
        d[i] = x % p_;
        x /= p_;
    }
    return d;
}

Code FiniteField::from_digits(const std::vector<unsigned>& digits) const {
    Code code = 0;
    for (std::size_t i = digits.size(); i-- > 0;) code = code * p_ + digits[i] % p_;
    return code;
}

std::string FiniteField::modulus_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = modulus_.size(); i-- > 0;) {
        const unsigned c = modulus_[i];
        if (c == 0) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0 || c != 1) os << c;
        if (i > 0) os << "x";
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

FieldElement::FieldElement(std::shared_ptr<const FiniteField> field, Code code)
    : field_(std::move(field)), code_(code) {
    if (code_ >= field_->order()) {
        throw InvalidArgument("field element code " + std::to_string(code) + " out of range");
    }
}

void FieldElement::check_same(const FieldElement& o) const {
    if (!(*field_ == *o.field_)) {
        throw InvalidArgument("field mismatch");
    }
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    a.check_same(b);
    return {a.field_, a.field_->add(a.code_, b.code_)};
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    a.check_same(b);
    return {a.field_, a.field_->sub(a.code_, b.code_)};
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    a.check_same(b);
    return {a.field_, a.field_->mul(a.code_, b.code_)};
}

FieldElement FieldElement::operator-() const { return {field_, field_->neg(code_)}; }
FieldElement FieldElement::inverse() const { return {field_, field_->inv(code_)}; }
FieldElement FieldElement::pow(std::uint64_t k) const { return {field_, field_->pow(code_, k)}; }
FieldElement FieldElement::frobenius(unsigned k) const { return {field_, field_->frobenius(code_, k)}; }

std::optional<FieldElement> FieldElement::square_root() const {
    const auto r = field_->square_root(code_);
    if (!r) return std::nullopt;
    return FieldElement(field_, *r);
}

Code suzuki_theta(const FiniteField& f, Code x) {
    if (f.characteristic() != 2 || f.degree() % 2 == 0) {
        throw InvalidArgument("theta needs GF(2^(2n+1))");
    }
    return f.frobenius(x, (f.degree() - 1) / 2 + 1);
}

Code suzuki_theta_inverse(const FiniteField& f, Code x) {
    if (f.characteristic() != 2 || f.degree() % 2 == 0) {
        throw InvalidArgument("theta needs GF(2^(2n+1))");
    }
    return f.frobenius(x, (f.degree() - 1) / 2);
}

}  // namespace hopfcert
