#include "hopfcert/obstruction.hpp"

#include <algorithm>

#include "hopfcert/error.hpp"
#include "hopfcert/parallel.hpp"

namespace hopfcert {

namespace {

// Local multiplication table of M and the products tau * m, indexed by the
// position of m in M's sorted member list.
struct LocalTables {
    std::size_t n = 0;
    std::vector<std::size_t> mul;  // n x n
    std::vector<Index> tau_m;
    std::vector<std::size_t> inv;
};

LocalTables local_tables(const Subgroup& m, Index tau) {
    const FiniteGroup& g = m.parent();
    const auto& mem = m.members();
    LocalTables t;
    t.n = mem.size();
    auto pos = [&](Index x) {
        auto it = std::lower_bound(mem.begin(), mem.end(), x);
        if (it == mem.end() || *it != x) throw InvariantViolation("product left the subgroup");
        return static_cast<std::size_t>(it - mem.begin());
    };
    t.mul.resize(t.n * t.n);
    t.inv.resize(t.n);
    t.tau_m.resize(t.n);
    for (std::size_t a = 0; a < t.n; ++a) {
        for (std::size_t b = 0; b < t.n; ++b) t.mul[a * t.n + b] = pos(g.mul(mem[a], mem[b]));
        t.inv[a] = pos(g.inv(mem[a]));
        t.tau_m[a] = g.mul(tau, mem[a]);
    }
    return t;
}

void require_trivial_intersection(const Subgroup& m, Index tau) {
    if (m.intersection_with_conjugate(tau).size() != 1) {
        throw InvalidArgument("M and tau M tau^-1 intersect nontrivially");
    }
}

}  // namespace

Rational GroupAlgebraVector::coefficient(Index g) const {
    auto it = coeffs_.find(g);
    return it == coeffs_.end() ? Rational(0) : it->second;
}

void GroupAlgebraVector::add(Index g, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = coeffs_.try_emplace(g, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) coeffs_.erase(it);
}

GroupAlgebraVector GroupAlgebraVector::operator*(const GroupAlgebraVector& o) const {
    if (group_ != o.group_) throw InvalidArgument("group algebra vectors live in different groups");
    GroupAlgebraVector out(group_);
    for (const auto& [a, ca] : coeffs_) {
        for (const auto& [b, cb] : o.coeffs_) out.add(group_->mul(a, b), ca * cb);
    }
    return out;
}

Rational GroupAlgebraVector::evaluate(const ClassFunction& chi) const {
    Rational s;
    for (const auto& [g, c] : coeffs_) s += c * chi(g);
    return s;
}

GroupAlgebraVector compute_y(const ClassFunction& chi, const Subgroup& m, Index tau) {
    require_trivial_intersection(m, tau);
    const auto coset = double_coset(m, tau);
    if (coset.size() != m.order() * m.order()) throw InvariantViolation("|M tau M| differs from |M|^2");
    const Rational scale = Rational(1, static_cast<long>(m.order()));
    GroupAlgebraVector y(m.parent_ptr());
    for (Index g : coset) y.add(g, chi(g) * scale);
    return y;
}

Rational chi_y2_direct(const ClassFunction& chi, const GroupAlgebraVector& y) { return (y * y).evaluate(chi); }

Rational chi_y2_quadloop(const ClassFunction& chi, const Subgroup& m, Index tau, std::uint64_t bound) {
    const std::uint64_t n = m.order();
    if (n > 0 && n * n * n * n > bound) {
        throw BoundExceeded("quadruple loop needs " + std::to_string(n * n * n * n) +
                            " iterations, above the bound " + std::to_string(bound));
    }
    require_trivial_intersection(m, tau);
    const FiniteGroup& g = m.parent();
    const LocalTables t = local_tables(m, tau);
    // chi(tau m_a tau m_b) for every pair; the inner term only needs this
    std::vector<Rational> pair_value(n * n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) pair_value[a * n + b] = chi(g.mul(t.tau_m[a], t.tau_m[b]));
    }
    std::vector<Rational> chi_tau(n);
    for (std::size_t a = 0; a < n; ++a) chi_tau[a] = chi(t.tau_m[a]);

    std::vector<Rational> partial(parallel::chunk_count(n * n));
    parallel::for_chunks(n * n, [&](std::size_t begin, std::size_t end, unsigned k) {
        Rational s;
        for (std::size_t i = begin; i < end; ++i) {
            const std::size_t u = i / n, u1 = i % n;
            const Rational& first = chi_tau[t.mul[u1 * n + u]];
            if (first.is_zero()) continue;
            Rational inner;
            for (std::size_t v = 0; v < n; ++v) {
                const std::size_t u1v = t.mul[u1 * n + v];
                for (std::size_t v1 = 0; v1 < n; ++v1) {
                    const Rational& second = chi_tau[t.mul[v1 * n + v]];
                    if (second.is_zero()) continue;
                    const Rational& third = pair_value[u1v * n + t.mul[v1 * n + u]];
                    if (third.is_zero()) continue;
                    inner += second * third;
                }
            }
            s += first * inner;
        }
        partial[k] = std::move(s);
    });
    Rational total;
    for (const auto& s : partial) total += s;
    const Rational nn(static_cast<long>(n));
    return total / (nn * nn);
}

Rational chi_y2_fiber(const ClassFunction& chi, const Subgroup& m, Index tau) {
    require_trivial_intersection(m, tau);
    if (!m.is_abelian()) throw InvalidArgument("the fiber procedure needs abelian M");
    const FiniteGroup& g = m.parent();
    const auto& mem = m.members();
    const LocalTables t = local_tables(m, tau);
    const std::size_t n = t.n;

    // Step 1: the level sets C of chi and M_C = {v : tau v in C}.
    struct Level {
        Rational value;
        std::vector<std::size_t> mc;  // positions in M
    };
    std::vector<Level> levels;
    for (const Fiber& c : fibers(chi).fibers) {
        std::vector<std::size_t> mc;
        for (Index v : m_c_set(m, tau, c.elements)) {
            mc.push_back(static_cast<std::size_t>(std::lower_bound(mem.begin(), mem.end(), v) - mem.begin()));
        }
        if (!mc.empty()) levels.push_back({c.value, std::move(mc)});
    }

    // Step 2: v tau v^-1 for every v, reused across all (x, x').
    std::vector<Index> v_tau_vinv(n);
    for (std::size_t v = 0; v < n; ++v) v_tau_vinv[v] = g.mul(g.mul(mem[v], tau), mem[t.inv[v]]);

    // Step 3: chi(tau x x' v tau v^-1) summed, weighted by chi(C) chi(C').
    Rational total;
    for (const Level& c : levels) {
        for (const Level& c1 : levels) {
            Rational inner;
            for (std::size_t x : c.mc) {
                for (std::size_t x1 : c1.mc) {
                    const Index txx1 = t.tau_m[t.mul[x * n + x1]];
                    for (std::size_t v = 0; v < n; ++v) inner += chi(g.mul(txx1, v_tau_vinv[v]));
                }
            }
            total += c.value * c1.value * inner;
        }
    }
    return total / Rational(static_cast<long>(n));
}

std::optional<Rational> closed_form_value(const ObstructionSetup& s) {
    if (s.flags.tau_override) return std::nullopt;
    const FiniteGroup& g = *s.group;
    const Integer q = static_cast<unsigned long>(g.q());
    const unsigned p = g.field().characteristic();
    const Integer m = static_cast<unsigned long>(s.M.order());
    const Integer q1 = q - 1;
    const Integer q1_3 = q1 * q1 * q1;
    auto n_of = [](const Integer& qq) { return qq % 4 == 1 ? Integer((qq + 1) / 2) : Integer((qq - 1) / 2); };
    switch (s.setup_case) {
        case SetupCase::SL2Additive:
        case SetupCase::PSL2Additive:
            if (p == 2) return Rational(Integer(q1_3 * (q + 1)), m);
            if (s.setup_case == SetupCase::SL2Additive) return Rational(q1_3, m);
            if (!s.flags.sqrt_minus4_in_E) return std::nullopt;
            return Rational(Integer(q1_3 * (q + (*s.flags.sqrt_minus4_in_E ? 6 : 4))), Integer(4 * m));
        case SetupCase::SL3Lp: {
            const Integer base = q1_3 * q1_3;
            return Rational(p == 2 ? Integer(base * (2 * q + 1)) : base, Integer(q * q));
        }
        case SetupCase::SL3L1:
            if (p == 2) return std::nullopt;
            return Rational(Integer((2 * q + 1) * (2 * q + 1) * q1_3 * q1_3 * (4 * q - 1)), Integer(q * q));
        case SetupCase::SL3Other: return std::nullopt;
        case SetupCase::SzCenter: return Rational(Integer(q1_3 * (q * q + 1)), m);
        case SetupCase::KleinP3:
        case SetupCase::KleinLarge: {
            const Integer n = n_of(q);
            return Rational(Integer(n * n * n), Integer(4));
        }
        case SetupCase::KleinP5:
            if (s.flags.xy_pair == std::make_pair(Code{2}, Code{0})) return Rational(15, 4);
            return std::nullopt;
        case SetupCase::KleinP7:
            if (s.flags.xy_pair == std::make_pair(Code{2}, Code{3})) return Rational(1, 4);
            return std::nullopt;
        case SetupCase::KleinLargeAxis: {
            // gamma = psi((tau v)^2) summed over v != 1 is forced to (1 - p^2)/2
            // when some tau v is an involution, and vanishes otherwise.
            bool involution = false;
            for (Index v : s.M.members()) {
                if (v == g.identity()) continue;
                const Index tv = g.mul(s.tau, v);
                involution = involution || g.mul(tv, tv) == g.identity();
            }
            const Integer p1 = p + 1;
            if (involution) return Rational(Integer(p1 * p1 * p1 * (2 - Integer(p))), Integer(32));
            return Rational(Integer(p1 * p1 * p1), Integer(64));
        }
    }
    return std::nullopt;
}

std::string to_string(Conclusion c) { return c == Conclusion::Obstructed ? "obstructed" : "inconclusive"; }

Conclusion conclude(const Rational& value, std::uint64_t m_order, bool methods_agree) {
    const Integer d = gcd(value.denominator(), Integer(static_cast<unsigned long>(m_order)));
    return methods_agree && d > 1 ? Conclusion::Obstructed : Conclusion::Inconclusive;
}

ObstructionCertificate certify(const ObstructionSetup& s, std::uint64_t quadloop_bound) {
    const ClassFunction chi = setup_character(s);
    const GroupAlgebraVector y = compute_y(chi, s.M, s.tau);
    ObstructionCertificate c;
    c.family = to_string(s.group->family());
    c.q = s.group->q();
    c.m_label = s.M.label();
    c.m_order = s.M.order();
    c.tau = s.group->matrix(s.tau).codes();
    c.character = to_string(s.character_kind);
    c.setup_case = to_string(s.setup_case);
    c.methods.direct = chi_y2_direct(chi, y);
    c.methods.quadloop = chi_y2_quadloop(chi, s.M, s.tau, quadloop_bound);
    c.methods.fiber = chi_y2_fiber(chi, s.M, s.tau);
    c.methods_agree = c.methods.direct == c.methods.quadloop && c.methods.direct == c.methods.fiber;
    if (!c.methods_agree) {
        throw InvariantViolation("methods disagree: direct " + c.methods.direct.str() + ", quadloop " +
                                 c.methods.quadloop.str() + ", fiber " + c.methods.fiber.str());
    }
    c.value = c.methods.direct;
    c.reduced_denominator = c.value.denominator();
    c.gcd_with_M = gcd(c.reduced_denominator, Integer(static_cast<unsigned long>(c.m_order)));
    c.closed_form = closed_form_value(s);
    c.conclusion = conclude(c.value, c.m_order, c.methods_agree);
    return c;
}

bool square_is_central(const FiniteGroup& g, Index tau) {
    const Index t2 = g.mul(tau, tau);
    for (Index x = 0; x < g.order(); ++x) {
        if (g.mul(t2, x) != g.mul(x, t2)) return false;
    }
    return true;
}

bool identity_criterion_holds(const Subgroup& m, Index tau) {
    const FiniteGroup& g = m.parent();
    const LocalTables t = local_tables(m, tau);
    const std::size_t n = t.n;
    const bool involutive = g.mul(tau, tau) == g.identity();
    const std::size_t one = static_cast<std::size_t>(
        std::lower_bound(m.members().begin(), m.members().end(), g.identity()) - m.members().begin());
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t u1 = 0; u1 < n; ++u1) {
            for (std::size_t v = 0; v < n; ++v) {
                const std::size_t u1v = t.mul[u1 * n + v];
                for (std::size_t v1 = 0; v1 < n; ++v1) {
                    const std::size_t v1u = t.mul[v1 * n + u];
                    const bool is_one = g.mul(t.tau_m[u1v], t.tau_m[v1u]) == g.identity();
                    const bool predicted = u1v == one && v1u == one && involutive;
                    if (is_one != predicted) return false;
                }
            }
        }
    }
    return true;
}

}  // namespace hopfcert
