#include "hopfcert/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "hopfcert/error.hpp"

namespace hopfcert {

namespace {

using Poly = std::vector<Rational>;

void trim(Poly& p) {
    while (!p.empty() && p.back().is_zero()) {
        p.pop_back();
    }
}

// Quotient and remainder of a by b over Q; b must be non-zero.
std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
    trim(a);
    const std::size_t db = b.size() - 1;
    if (a.size() < b.size()) {
        return {Poly{}, a};
    }
    Poly quot(a.size() - db, Rational(0));
    const Rational lead_inv = b.back().inverse();
    for (std::size_t k = a.size(); k-- > db;) {
        if (a[k].is_zero()) continue;
        const Rational c = a[k] * lead_inv;
        quot[k - db] = c;
        for (std::size_t i = 0; i <= db; ++i) {
            a[k - db + i] -= c * b[i];
        }
    }
    a.resize(db);
    trim(a);
    trim(quot);
    return {quot, a};
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

Poly poly_sub(Poly a, const Poly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

std::shared_ptr<const std::vector<Integer>> modulus_for(unsigned n) {
    static std::mutex mu;
    static std::map<unsigned, std::shared_ptr<const std::vector<Integer>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) {
        it = cache.emplace(n, std::make_shared<const std::vector<Integer>>(cyclotomic_polynomial(n))).first;
    }
    return it->second;
}

}  // namespace

std::vector<Integer> cyclotomic_polynomial(unsigned n) {
    if (n == 0) {
        throw InvalidArgument("cyclotomic order must be positive");
    }
    // x^n - 1
    std::vector<Integer> p(n + 1, Integer(0));
    p[0] = -1;
    p[n] = 1;
    for (unsigned d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        const std::vector<Integer> phi_d = cyclotomic_polynomial(d);
        // exact division by a monic integer polynomial
        const std::size_t dd = phi_d.size() - 1;
        std::vector<Integer> quot(p.size() - dd, Integer(0));
        for (std::size_t k = p.size(); k-- > dd;) {
            const Integer c = p[k];
            quot[k - dd] = c;
            if (c == 0) continue;
            for (std::size_t i = 0; i <= dd; ++i) {
                p[k - dd + i] -= c * phi_d[i];
            }
        }
        for (std::size_t i = 0; i < dd; ++i) {
            if (p[i] != 0) {
                throw InvariantViolation("cyclotomic division left a remainder");
            }
        }
        p = std::move(quot);
    }
    return p;
}

unsigned euler_phi(unsigned n) {
    unsigned result = n;
    unsigned m = n;
    for (unsigned f = 2; f * f <= m; ++f) {
        if (m % f == 0) {
            while (m % f == 0) m /= f;
            result -= result / f;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

Cyclotomic::Cyclotomic(unsigned n, std::shared_ptr<const std::vector<Integer>> modulus)
    : order_(n), modulus_(std::move(modulus)), coeffs_(modulus_->size() - 1, Rational(0)) {}

Cyclotomic Cyclotomic::zero(unsigned n) { return Cyclotomic(n, modulus_for(n)); }

Cyclotomic Cyclotomic::one(unsigned n) { return from_rational(n, Rational(1)); }

Cyclotomic Cyclotomic::from_rational(unsigned n, const Rational& r) {
    Cyclotomic c = zero(n);
    c.coeffs_[0] = r;
    return c;
}

Cyclotomic Cyclotomic::zeta(unsigned n, long k) {
    Cyclotomic c = zero(n);
    const long e = ((k % static_cast<long>(n)) + static_cast<long>(n)) % static_cast<long>(n);
    // reduce x^e modulo Phi_n
    Poly p(static_cast<std::size_t>(e) + 1, Rational(0));
    p[static_cast<std::size_t>(e)] = Rational(1);
    Poly mod;
    for (const auto& z : *c.modulus_) mod.emplace_back(z);
    auto [q, r] = divmod(std::move(p), mod);
    for (std::size_t i = 0; i < r.size(); ++i) c.coeffs_[i] = r[i];
    return c;
}

bool Cyclotomic::is_zero() const {
    for (const auto& c : coeffs_) {
        if (!c.is_zero()) return false;
    }
    return true;
}

bool Cyclotomic::is_rational() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i) {
        if (!coeffs_[i].is_zero()) return false;
    }
    return true;
}

void Cyclotomic::check_order(const Cyclotomic& o) const {
    if (order_ != o.order_) {
        throw InvalidArgument("cyclotomic order mismatch: " + std::to_string(order_) + " vs " +
                              std::to_string(o.order_));
    }
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
    check_order(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) {
    check_order(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Rational& r) {
    for (auto& c : coeffs_) c *= r;
    return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
    check_order(o);
    const std::size_t deg = coeffs_.size();
    Poly prod(2 * deg - 1, Rational(0));
    for (std::size_t i = 0; i < deg; ++i) {
        if (coeffs_[i].is_zero()) continue;
        for (std::size_t j = 0; j < deg; ++j) {
            if (o.coeffs_[j].is_zero()) continue;
            prod[i + j] += coeffs_[i] * o.coeffs_[j];
        }
    }
    const auto& mod = *modulus_;
    for (std::size_t k = prod.size(); k-- > deg;) {
        if (prod[k].is_zero()) continue;
        const Rational c = prod[k];
        for (std::size_t i = 0; i <= deg; ++i) {
            prod[k - deg + i] -= c * Rational(mod[i]);
        }
    }
    for (std::size_t i = 0; i < deg; ++i) coeffs_[i] = std::move(prod[i]);
    return *this;
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

Cyclotomic Cyclotomic::inverse() const {
    if (is_zero()) {
        throw InvalidArgument("inversion of zero in Q(zeta_" + std::to_string(order_) + ")");
    }
    Poly r0;
    for (const auto& z : *modulus_) r0.emplace_back(z);
    Poly r1 = coeffs_;
    trim(r1);
    Poly s0;
    Poly s1{Rational(1)};
    // invariant: s_i * a == r_i (mod Phi_n)
    while (r1.size() > 1) {
        auto [q, r] = divmod(r0, r1);
        Poly s = poly_sub(s0, poly_mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
        if (r1.empty()) {
            throw InvariantViolation("non-trivial gcd with the cyclotomic polynomial");
        }
    }
    Cyclotomic inv = zero(order_);
    const Rational scale = r1[0].inverse();
    Poly mod;
    for (const auto& z : *modulus_) mod.emplace_back(z);
    auto reduced = divmod(s1, mod).second;
    for (std::size_t i = 0; i < reduced.size(); ++i) inv.coeffs_[i] = reduced[i] * scale;
    return inv;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    return a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
}

std::string Cyclotomic::str() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << coeffs_[i] << ")";
        if (i > 0) os << "*z" << order_ << "^" << i;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace hopfcert
