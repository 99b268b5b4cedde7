#include "hopfcert/character.hpp"

#include <atomic>
#include <map>

#include "hopfcert/error.hpp"
#include "hopfcert/parallel.hpp"

namespace hopfcert {

namespace {
Rational ri(const Integer& v) { return Rational(v); }
}  // namespace

ClassFunction::ClassFunction(GroupPtr group, std::vector<Rational> values, CharacterKind kind)
    : group_(std::move(group)), values_(std::move(values)), kind_(kind) {
    if (values_.size() != group_->order()) throw InvalidArgument("class function needs one value per element");
}

ClassFunction induced_character(const Subgroup& u) {
    const FiniteGroup& g = u.parent();
    std::vector<std::atomic<std::uint32_t>> count(g.order());
    for (auto& c : count) c.store(0, std::memory_order_relaxed);
    // every pair (h, w) in G x U contributes to x = h^-1 w h, i.e. h x h^-1 = w in U
    parallel::for_chunks(g.order(), [&](std::size_t begin, std::size_t end, unsigned) {
        for (std::size_t h = begin; h < end; ++h) {
            const Index hinv = g.inv(static_cast<Index>(h));
            for (Index w : u.members()) count[g.conj(hinv, w)].fetch_add(1, std::memory_order_relaxed);
        }
    });
    std::vector<Rational> values(g.order());
    const std::uint32_t n = static_cast<std::uint32_t>(u.order());
    for (Index x = 0; x < g.order(); ++x) {
        const std::uint32_t c = count[x].load();
        if (c % n != 0) throw InvariantViolation("conjugation count not divisible by |U|");
        values[x] = Rational(static_cast<long>(c / n));
    }
    return ClassFunction(u.parent_ptr(), std::move(values), CharacterKind::InducedSylow);
}

Rational CharacterTable::at(const FiniteGroup& g, Index x) const {
    if (x == g.identity()) return identity;
    if (!g.in_P(x)) return Rational(0);
    if (g.family() == Family::SL3) {
        const std::string key = to_string(g.jordan_type(x));
        for (const auto& [name, value] : nontrivial) {
            if (name == key) return value;
        }
        throw InvariantViolation("no tabulated value for Jordan type " + key);
    }
    return nontrivial.front().second;
}

CharacterTable closed_form_character(Family family, std::uint64_t q) {
    closed_form_order(family, q);  // validates q for the family
    const Integer Q(static_cast<unsigned long>(q));
    CharacterTable t;
    switch (family) {
        case Family::SL2:
            t.identity = ri(Q * Q - 1);
            t.nontrivial = {{"unipotent", ri(Q - 1)}};
            break;
        case Family::PSL2: {
            const long d = q % 2 == 1 ? 2 : 1;
            t.identity = Rational(Integer(Q * Q - 1), Integer(d));
            t.nontrivial = {{"unipotent", Rational(Integer(Q - 1), Integer(d))}};
            break;
        }
        case Family::SL3:
            t.identity = ri((Q * Q * Q - 1) * (Q * Q - 1));
            t.nontrivial = {{"(2,1)", ri((2 * Q + 1) * (Q - 1) * (Q - 1))}, {"(3)", ri((Q - 1) * (Q - 1))}};
            break;
        case Family::Sz:
            t.identity = ri((Q - 1) * (Q * Q + 1));
            t.nontrivial = {{"unipotent", ri(Q - 1)}};
            break;
    }
    return t;
}

ClassFunction special_character(CharacterKind kind, const GroupPtr& g) {
    const std::uint64_t q = g->q();
    const auto incompatible = [&](const std::string& need) {
        return InvalidArgument(to_string(kind) + " needs " + need + ", got " + to_string(g->family()) + "(" +
                               std::to_string(q) + ")");
    };
    if (g->family() != Family::PSL2) throw incompatible("PSL2");
    std::map<std::uint64_t, Rational> by_order;
    switch (kind) {
        case CharacterKind::InducedSylow: throw InvalidArgument("the induced character is not a special character");
        case CharacterKind::PhiQ1: {
            if (q % 4 != 1) throw incompatible("q = 1 mod 4");
            const long lq = static_cast<long>(q);
            std::vector<Rational> values(g->order(), Rational(0));
            const std::uint64_t p = g->field().characteristic();
            for (Index x = 0; x < g->order(); ++x) {
                if (x == g->identity()) {
                    values[x] = Rational(1 - lq * lq, 2);
                } else if (g->element_order(x) == p) {
                    values[x] = Rational(lq + 1, 2);
                }
            }
            return ClassFunction(g, std::move(values), kind);
        }
        case CharacterKind::Phi5:
            if (q != 5) throw incompatible("PSL2(5)");
            by_order = {{1, Rational(15)}, {5, Rational(0)}, {2, Rational(-1)}, {3, Rational(0)}};
            break;
        case CharacterKind::Phi7:
            if (q != 7) throw incompatible("PSL2(7)");
            by_order = {{1, Rational(14)}, {7, Rational(0)}, {3, Rational(-1)}, {4, Rational(0)}, {2, Rational(2)}};
            break;
    }
    std::vector<Rational> values(g->order());
    for (Index x = 0; x < g->order(); ++x) {
        const auto it = by_order.find(g->element_order(x));
        if (it == by_order.end()) throw InvariantViolation("element order missing from the character table");
        values[x] = it->second;
    }
    return ClassFunction(g, std::move(values), kind);
}

ClassFunction setup_character(const ObstructionSetup& setup) {
    if (setup.character_kind == CharacterKind::InducedSylow) return induced_character(sylow_subgroup(setup.group));
    return special_character(setup.character_kind, setup.group);
}

FiberDecomposition fibers(const ClassFunction& chi) {
    const FiniteGroup& g = chi.group();
    FiberDecomposition out;
    out.fibers.push_back(Fiber{chi(g.identity()), {g.identity()}});
    std::map<Rational, std::vector<Index>> level;
    for (Index x = 0; x < g.order(); ++x) {
        if (x == g.identity() || chi.is_zero_at(x)) continue;
        level[chi(x)].push_back(x);
    }
    for (auto& [value, elements] : level) out.fibers.push_back(Fiber{value, std::move(elements)});
    return out;
}

std::vector<Index> m_c_set(const Subgroup& m, Index tau, const std::vector<Index>& c) {
    std::vector<Index> out;
    for (Index v : m.members()) {
        if (std::binary_search(c.begin(), c.end(), m.parent().mul(tau, v))) out.push_back(v);
    }
    return out;
}

}  // namespace hopfcert
