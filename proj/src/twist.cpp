#include "hopfcert/twist.hpp"

#include <algorithm>
#include <numeric>

#include "hopfcert/catalog.hpp"
#include "hopfcert/error.hpp"

namespace hopfcert {

namespace {

constexpr std::size_t kMaxTwistOrder = 16;

long mod(long a, long n) { return ((a % n) + n) % n; }

// sum_k counts[k] zeta_n^k, divided by `scale`.
Cyclotomic from_counts(unsigned n, const std::vector<long>& counts, long scale) {
    Cyclotomic out = Cyclotomic::zero(n);
    for (std::size_t k = 0; k < counts.size(); ++k) {
        if (counts[k] != 0) out += Cyclotomic::zeta(n, static_cast<long>(k)) * Rational(counts[k]);
    }
    return out * Rational(1, scale);
}

// Dense KM^{(x)3} index.
std::size_t at3(std::size_t n, std::size_t a, std::size_t b, std::size_t c) { return (a * n + b) * n + c; }

}  // namespace

long Twist::pairing_exponent(std::size_t c, std::size_t v) const {
    long e = 0;
    for (std::size_t j = 0; j < gen_orders_.size(); ++j) {
        e += static_cast<long>(order_ / gen_orders_[j]) * chars_[c][j] * coords_[v][j];
    }
    return mod(e, order_);
}

long Twist::omega_exponent(std::size_t phi, std::size_t psi) const {
    long e = 0;
    for (std::size_t j = 0; j + 1 < gen_orders_.size(); j += 2) {
        const long scale = order_ / gen_orders_[j];
        const auto& f = chars_[phi];
        const auto& g = chars_[psi];
        switch (pairing_) {
            case Pairing::Standard: e += scale * f[j + 1] * g[j]; break;
            case Pairing::Alternate: e += scale * f[j] * g[j + 1]; break;
            case Pairing::Trivial: break;
        }
    }
    return mod(e, order_);
}

Cyclotomic Twist::character_value(std::size_t c, std::size_t v) const {
    return Cyclotomic::zeta(order_, pairing_exponent(c, v));
}

Cyclotomic Twist::omega(std::size_t phi, std::size_t psi) const {
    Cyclotomic z = Cyclotomic::zeta(order_, omega_exponent(phi, psi));
    if (negated_ == std::make_pair(phi, psi)) z = -z;
    return z;
}

std::vector<Cyclotomic> Twist::idempotent(std::size_t phi) const {
    std::vector<Cyclotomic> e;
    e.reserve(n_);
    for (std::size_t v = 0; v < n_; ++v) {
        e.push_back(Cyclotomic::zeta(order_, -pairing_exponent(phi, v)) * Rational(1, static_cast<long>(n_)));
    }
    return e;
}

Twist build_twist(const Subgroup& m, Pairing pairing, std::optional<std::pair<std::size_t, std::size_t>> negate) {
    if (m.order() > kMaxTwistOrder) throw BoundExceeded("the twist verifier handles |M| <= 16 only");
    const auto basis = paired_basis(m);
    const FiniteGroup& g = m.parent();
    const auto& mem = m.members();

    Twist t(m);
    t.n_ = mem.size();
    t.pairing_ = pairing;
    t.negated_ = negate;
    std::vector<Index> gens;
    for (const auto& [a, b] : basis) {
        gens.push_back(a);
        gens.push_back(b);
    }
    unsigned exponent = 1;
    for (Index x : gens) {
        const auto e = static_cast<unsigned>(g.element_order(x));
        t.gen_orders_.push_back(e);
        exponent = std::lcm(exponent, e);
    }
    t.order_ = exponent;

    auto pos = [&](Index x) {
        return static_cast<std::size_t>(std::lower_bound(mem.begin(), mem.end(), x) - mem.begin());
    };
    // Mixed-radix enumeration of exponent vectors; the same vectors index
    // members (through the generators) and characters.
    std::vector<std::vector<unsigned>> vectors(1);
    for (unsigned e : t.gen_orders_) {
        std::vector<std::vector<unsigned>> next;
        for (const auto& v : vectors) {
            for (unsigned k = 0; k < e; ++k) {
                next.push_back(v);
                next.back().push_back(k);
            }
        }
        vectors = std::move(next);
    }
    if (vectors.size() != t.n_) throw InvalidArgument("generator orders do not multiply to |M|");
    t.chars_ = vectors;
    t.coords_.assign(t.n_, {});
    std::vector<bool> seen(t.n_, false);
    for (const auto& v : vectors) {
        Index x = g.identity();
        for (std::size_t j = 0; j < gens.size(); ++j) x = g.mul(x, g.pow(gens[j], v[j]));
        const std::size_t p = pos(x);
        if (p >= t.n_ || mem[p] != x || seen[p]) throw InvalidArgument("generators do not decompose M as a direct product");
        seen[p] = true;
        t.coords_[p] = v;
    }
    t.one_ = pos(g.identity());
    t.mul_.resize(t.n_ * t.n_);
    t.inv_.resize(t.n_);
    for (std::size_t a = 0; a < t.n_; ++a) {
        for (std::size_t b = 0; b < t.n_; ++b) t.mul_[a * t.n_ + b] = pos(g.mul(mem[a], mem[b]));
        t.inv_[a] = pos(g.inv(mem[a]));
    }

    // Omega(v, w) = |M|^-2 sum omega(phi, psi) phi(v^-1) psi(w^-1), collected as
    // integer multiplicities of each power of zeta.
    const long n = static_cast<long>(t.n_);
    const unsigned z = t.order_;
    t.omega_.assign(t.n_ * t.n_, Cyclotomic::zero(z));
    t.omega_inv_.assign(t.n_ * t.n_, Cyclotomic::zero(z));
    for (std::size_t v = 0; v < t.n_; ++v) {
        for (std::size_t w = 0; w < t.n_; ++w) {
            std::vector<long> fwd(z, 0), bwd(z, 0);
            for (std::size_t phi = 0; phi < t.n_; ++phi) {
                const long pv = t.pairing_exponent(phi, v);
                for (std::size_t psi = 0; psi < t.n_; ++psi) {
                    const long base = -pv - t.pairing_exponent(psi, w);
                    const long om = t.omega_exponent(phi, psi);
                    const long sign = negate == std::make_pair(phi, psi) ? -1 : 1;
                    fwd[mod(base + om, z)] += sign;
                    bwd[mod(base - om, z)] += sign;
                }
            }
            t.omega_[v * t.n_ + w] = from_counts(z, fwd, n * n);
            t.omega_inv_[v * t.n_ + w] = from_counts(z, bwd, n * n);
        }
    }
    return t;
}

IdempotentCheck verify_idempotents(const Twist& t) {
    const std::size_t n = t.size();
    const unsigned z = t.cyclotomic_order();
    std::vector<std::vector<Cyclotomic>> e;
    for (std::size_t phi = 0; phi < n; ++phi) e.push_back(t.idempotent(phi));

    IdempotentCheck out;
    std::vector<Cyclotomic> sum(n, Cyclotomic::zero(z));
    for (const auto& ep : e) {
        for (std::size_t v = 0; v < n; ++v) sum[v] += ep[v];
    }
    out.sum_is_one = true;
    for (std::size_t v = 0; v < n; ++v) {
        out.sum_is_one = out.sum_is_one && sum[v] == (v == t.identity() ? Cyclotomic::one(z) : Cyclotomic::zero(z));
    }
    out.orthogonal = true;
    for (std::size_t a = 0; a < n && out.orthogonal; ++a) {
        for (std::size_t b = 0; b < n && out.orthogonal; ++b) {
            std::vector<Cyclotomic> prod(n, Cyclotomic::zero(z));
            for (std::size_t v = 0; v < n; ++v) {
                for (std::size_t w = 0; w < n; ++w) prod[t.mul(v, w)] += e[a][v] * e[b][w];
            }
            for (std::size_t v = 0; v < n; ++v) {
                const Cyclotomic expected = a == b ? e[a][v] : Cyclotomic::zero(z);
                if (!(prod[v] == expected)) out.orthogonal = false;
            }
        }
    }
    return out;
}

TwistAxiomCheck verify_twist_axioms(const Twist& t) {
    const std::size_t n = t.size();
    const unsigned z = t.cyclotomic_order();
    const auto& om = t.omega_tensor();
    std::vector<std::pair<std::size_t, std::size_t>> nz;
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t w = 0; w < n; ++w) {
            if (!om[v * n + w].is_zero()) nz.emplace_back(v, w);
        }
    }

    TwistAxiomCheck out;
    // lhs = sum Omega(v,w) Omega(a,b) v (x) a w (x) b w
    // rhs = sum Omega(a,b) Omega(v,w) a v (x) b v (x) w
    std::vector<Cyclotomic> lhs(n * n * n, Cyclotomic::zero(z)), rhs(n * n * n, Cyclotomic::zero(z));
    for (const auto& [v, w] : nz) {
        for (const auto& [a, b] : nz) {
            const Cyclotomic c = om[v * n + w] * om[a * n + b];
            lhs[at3(n, v, t.mul(a, w), t.mul(b, w))] += c;
            rhs[at3(n, t.mul(a, v), t.mul(b, v), w)] += c;
        }
    }
    out.cocycle = lhs == rhs;

    out.counit_left = out.counit_right = true;
    for (std::size_t x = 0; x < n; ++x) {
        Cyclotomic left = Cyclotomic::zero(z), right = Cyclotomic::zero(z);
        for (std::size_t y = 0; y < n; ++y) {
            left += om[y * n + x];
            right += om[x * n + y];
        }
        const Cyclotomic expected = x == t.identity() ? Cyclotomic::one(z) : Cyclotomic::zero(z);
        out.counit_left = out.counit_left && left == expected;
        out.counit_right = out.counit_right && right == expected;
    }

    const auto& inv = t.omega_inverse_tensor();
    std::vector<Cyclotomic> prod(n * n, Cyclotomic::zero(z));
    for (const auto& [v, w] : nz) {
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                if (inv[a * n + b].is_zero()) continue;
                prod[t.mul(v, a) * n + t.mul(w, b)] += om[v * n + w] * inv[a * n + b];
            }
        }
    }
    out.inverse = true;
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t w = 0; w < n; ++w) {
            const bool unit = v == t.identity() && w == t.identity();
            out.inverse = out.inverse && prod[v * n + w] == (unit ? Cyclotomic::one(z) : Cyclotomic::zero(z));
        }
    }
    return out;
}

namespace {

void accumulate(TensorVector& out, std::pair<Index, Index> key, const Cyclotomic& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = out.try_emplace(key, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) out.erase(it);
}

}  // namespace

TensorVector twisted_coproduct_of_c_tau(const Twist& t, Index tau) {
    const Subgroup& m = t.subgroup();
    const FiniteGroup& g = m.parent();
    const auto& mem = m.members();
    const std::size_t n = t.size();
    const unsigned z = t.cyclotomic_order();
    const auto coset = double_coset(m, tau);
    const Cyclotomic coeff = Cyclotomic::from_rational(z, Rational(1, static_cast<long>(n)));

    // Omega Delta(c_tau)
    TensorVector left;
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t w = 0; w < n; ++w) {
            const Cyclotomic& o = t.omega_tensor()[v * n + w];
            if (o.is_zero()) continue;
            const Cyclotomic c = o * coeff;
            for (Index h : coset) accumulate(left, {g.mul(mem[v], h), g.mul(mem[w], h)}, c);
        }
    }
    // ... times Omega^-1
    TensorVector out;
    for (const auto& [key, c] : left) {
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                const Cyclotomic& o = t.omega_inverse_tensor()[a * n + b];
                if (o.is_zero()) continue;
                accumulate(out, {g.mul(key.first, mem[a]), g.mul(key.second, mem[b])}, c * o);
            }
        }
    }
    return out;
}

PropKeyCheck verify_prop_key(const Twist& t, Index tau, const ClassFunction& chi) {
    const Subgroup& m = t.subgroup();
    const std::size_t n = t.size();
    const unsigned z = t.cyclotomic_order();
    const auto coset = double_coset(m, tau);
    PropKeyCheck out;

    const TensorVector delta = twisted_coproduct_of_c_tau(t, tau);

    // eps(c_tau) = |M tau M| / |M|; the twisted coproduct must keep it.
    const Rational eps_c(static_cast<long>(coset.size()), static_cast<long>(n));
    Cyclotomic eps_delta = Cyclotomic::zero(z);
    for (const auto& [key, c] : delta) eps_delta += c;
    out.counit = eps_c == Rational(static_cast<long>(n)) && eps_delta == Cyclotomic::from_rational(z, eps_c);

    out.support = true;
    for (const auto& [key, c] : delta) {
        out.support = out.support && std::binary_search(coset.begin(), coset.end(), key.first) &&
                      std::binary_search(coset.begin(), coset.end(), key.second);
    }

    for (const auto& [key, c] : delta) {
        const Cyclotomic term = c * chi(key.first);
        if (term.is_zero()) continue;
        auto [it, inserted] = out.image.try_emplace(key.second, term);
        if (!inserted) {
            it->second += term;
            if (it->second.is_zero()) out.image.erase(it);
        }
    }

    // y = |M|^-1 sum_{g in M tau M} chi(g) g, written out independently here
    CyclotomicVector y;
    for (Index h : coset) {
        const Rational c = chi(h) * Rational(1, static_cast<long>(n));
        if (!c.is_zero()) y.emplace(h, Cyclotomic::from_rational(z, c));
    }
    out.image_matches_y = out.image == y;
    return out;
}

}  // namespace hopfcert
