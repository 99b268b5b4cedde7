#include "hopfcert/catalog.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "hopfcert/error.hpp"
#include "hopfcert/parallel.hpp"

namespace hopfcert {

namespace {

std::vector<std::uint64_t> primes_of(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::size_t count_killed_by(const Subgroup& m, std::uint64_t n) {
    const FiniteGroup& g = m.parent();
    std::size_t c = 0;
    for (Index x : m.members()) c += g.pow(x, n) == g.identity() ? 1 : 0;
    return c;
}

Matrix mat2(const FiniteField& f, long a, long b, long c, long d) {
    return Matrix::from_codes(2, {f.from_int(a), f.from_int(b), f.from_int(c), f.from_int(d)});
}

Index require_trivial_intersection(const Subgroup& m, Index tau, bool user_supplied) {
    if (m.intersection_with_conjugate(tau).size() != 1) {
        const std::string msg = "M and tau M tau^-1 intersect nontrivially for the chosen tau";
        if (user_supplied) throw InvalidArgument(msg);
        throw InvariantViolation(msg);
    }
    return tau;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

unsigned parse_unsigned(const std::string& s, const std::string& what) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }) || s.size() > 9) {
        throw InvalidArgument("bad " + what + " '" + s + "'");
    }
    return static_cast<unsigned>(std::stoul(s));
}

}  // namespace

CentralTypeWitness is_central_type(const Subgroup& m) {
    const FiniteGroup& g = m.parent();
    for (Index a : m.generators()) {
        for (Index b : m.generators()) {
            if (g.mul(a, b) != g.mul(b, a)) throw InvalidArgument("is_central_type needs an abelian subgroup");
        }
    }
    // r[l][k-1] = number of cyclic l-primary factors of order >= l^k
    std::map<std::uint64_t, std::vector<unsigned>> ranks;
    std::size_t factor_count = 0;
    for (std::uint64_t l : primes_of(m.order())) {
        std::uint64_t sylow = 1;
        for (std::uint64_t n = m.order(); n % l == 0; n /= l) sylow *= l;
        std::vector<unsigned> r;
        std::size_t prev = 1;
        std::uint64_t power = 1;
        while (prev < sylow) {
            power *= l;
            const std::size_t now = count_killed_by(m, power);
            unsigned rank = 0;
            for (std::size_t ratio = now / prev; ratio > 1; ratio /= l) ++rank;
            r.push_back(rank);
            prev = now;
        }
        factor_count = std::max<std::size_t>(factor_count, r.empty() ? 0 : r.front());
        ranks[l] = std::move(r);
    }
    CentralTypeWitness w;
    for (std::size_t i = 1; i <= factor_count; ++i) {
        std::uint64_t d = 1;
        for (const auto& [l, r] : ranks) {
            for (unsigned rk : r) {
                if (rk >= i) d *= l;
            }
        }
        w.invariant_factors.push_back(d);
    }
    std::sort(w.invariant_factors.begin(), w.invariant_factors.end());
    w.paired = w.invariant_factors.size() % 2 == 0;
    for (std::size_t i = 0; w.paired && i < w.invariant_factors.size(); i += 2) {
        w.paired = w.invariant_factors[i] == w.invariant_factors[i + 1];
    }
    return w;
}

std::vector<std::pair<Index, Index>> paired_basis(const Subgroup& m) {
    if (m.order() > 256) throw BoundExceeded("paired_basis searches subgroups of order <= 256 only");
    const auto w = is_central_type(m);
    if (!w.paired) throw InvalidArgument("subgroup is not of the form E x E");
    const FiniteGroup& g = m.parent();
    std::vector<std::uint64_t> targets(w.invariant_factors.rbegin(), w.invariant_factors.rend());
    std::map<Index, std::uint64_t> order_of;
    for (Index x : m.members()) order_of[x] = g.element_order(x);

    auto span_size = [&](const std::vector<Index>& gens) {
        return Subgroup::generate(m.parent_ptr(), gens).order();
    };
    std::vector<Index> chosen;
    std::function<bool(std::size_t, std::size_t)> search = [&](std::size_t depth, std::size_t size) {
        if (depth == targets.size()) return size == m.order();
        for (Index x : m.members()) {
            if (order_of[x] != targets[depth]) continue;
            chosen.push_back(x);
            const std::size_t s = span_size(chosen);
            if (s == size * targets[depth] && search(depth + 1, s)) return true;
            chosen.pop_back();
        }
        return false;
    };
    if (!search(0, 1)) throw InvariantViolation("no paired generating set found for a paired subgroup");
    std::vector<std::pair<Index, Index>> out;
    for (std::size_t i = 0; i < chosen.size(); i += 2) out.emplace_back(chosen[i], chosen[i + 1]);
    return out;
}

Subgroup sylow_subgroup(const GroupPtr& g) {
    const FiniteField& f = g->field();
    const Code q = f.order();
    std::vector<Index> members;
    switch (g->family()) {
        case Family::SL2:
        case Family::PSL2:
            for (Code a = 0; a < q; ++a) members.push_back(g->index_of(Matrix::from_codes(2, {1, a, 0, 1})));
            break;
        case Family::SL3:
            for (Code a = 0; a < q; ++a) {
                for (Code b = 0; b < q; ++b) {
                    for (Code c = 0; c < q; ++c) {
                        members.push_back(g->index_of(Matrix::from_codes(3, {1, a, b, 0, 1, c, 0, 0, 1})));
                    }
                }
            }
            break;
        case Family::Sz:
            for (Code a = 0; a < q; ++a) {
                for (Code b = 0; b < q; ++b) members.push_back(g->index_of(suzuki::u(f, a, b)));
            }
            break;
    }
    return Subgroup::from_members(g, std::move(members), "U");
}

std::string to_string(CharacterKind k) {
    switch (k) {
        case CharacterKind::InducedSylow: return "induced_sylow";
        case CharacterKind::PhiQ1: return "phi_q1";
        case CharacterKind::Phi5: return "phi_5";
        case CharacterKind::Phi7: return "phi_7";
    }
    return "?";
}

std::string to_string(SetupCase c) {
    switch (c) {
        case SetupCase::SL2Additive: return "sl2_additive";
        case SetupCase::PSL2Additive: return "psl2_additive";
        case SetupCase::SL3Lp: return "sl3_Lp";
        case SetupCase::SL3L1: return "sl3_L1";
        case SetupCase::SL3Other: return "sl3_Lj";
        case SetupCase::SzCenter: return "sz_center";
        case SetupCase::KleinP3: return "klein_p3";
        case SetupCase::KleinP5: return "klein_p5";
        case SetupCase::KleinP7: return "klein_p7";
        case SetupCase::KleinLarge: return "klein_large_p";
        case SetupCase::KleinLargeAxis: return "klein_large_p_axis";
    }
    return "?";
}

MSpec parse_m_spec(const std::string& text) {
    MSpec spec;
    spec.text = text;
    std::string rest = text;
    const auto colon = rest.find(':');
    if (colon != std::string::npos) {
        const std::string head = rest.substr(0, colon);
        if (head != "klein") {
            spec.family = parse_family(head);
            rest = rest.substr(colon + 1);
        }
    }
    if (rest.rfind("E=", 0) == 0) {
        spec.kind = MSpec::Kind::Additive;
        const std::string body = rest.substr(2);
        if (body == "F") {
            spec.whole_field = true;
        } else {
            spec.basis = split(body, ',');
            if (spec.basis.empty()) throw InvalidArgument("empty E basis in '" + text + "'");
        }
    } else if (rest == "M1" || rest == "M2" || (rest.size() >= 2 && rest[0] == 'L')) {
        spec.kind = MSpec::Kind::SL3L;
        if (rest == "M2") {
            spec.l_index = 1;
        } else if (rest != "M1" && rest != "Lp") {
            spec.l_index = parse_unsigned(rest.substr(1), "L index");
        }
    } else if (rest.size() >= 2 && rest[0] == 'Z' && rest[1] == '2') {
        spec.kind = MSpec::Kind::SzCenter;
        if (rest.rfind("Z2^", 0) == 0) {
            spec.rank = parse_unsigned(rest.substr(3), "rank");
        } else {
            const auto parts = split(rest.substr(1), 'x');
            for (const auto& p : parts) {
                if (p != "2") throw InvalidArgument("bad center spec '" + text + "'");
            }
            spec.rank = static_cast<unsigned>(parts.size());
        }
    } else if (rest.rfind("klein:", 0) == 0) {
        spec.kind = MSpec::Kind::Klein;
        bool have_x = false, have_y = false;
        for (const auto& kv : split(rest.substr(6), ',')) {
            if (kv.rfind("x=", 0) == 0) {
                spec.x = parse_unsigned(kv.substr(2), "x");
                have_x = true;
            } else if (kv.rfind("y=", 0) == 0) {
                spec.y = parse_unsigned(kv.substr(2), "y");
                have_y = true;
            } else {
                throw InvalidArgument("bad klein parameter '" + kv + "'");
            }
        }
        if (!have_x || !have_y) throw InvalidArgument("klein spec needs x= and y=");
    } else {
        throw InvalidArgument("unrecognized subgroup spec '" + text + "'");
    }
    return spec;
}

std::vector<Code> additive_span(const FiniteField& f, const std::vector<std::string>& basis, bool whole_field) {
    std::vector<Code> span;
    if (whole_field) {
        span.resize(f.order());
        std::iota(span.begin(), span.end(), Code{0});
        return span;
    }
    std::set<Code> s{0};
    for (const auto& token : basis) {
        Code b = 0;
        if (token == "g") {
            b = f.generator();
        } else if (token.rfind("g^", 0) == 0) {
            b = f.pow(f.generator(), parse_unsigned(token.substr(2), "exponent"));
        } else {
            b = parse_unsigned(token, "field code");
            if (b >= f.order()) throw InvalidArgument("field code " + token + " out of range");
        }
        std::set<Code> next;
        for (Code x : s) {
            for (unsigned c = 0; c < f.characteristic(); ++c) next.insert(f.add(x, f.mul(f.from_int(c), b)));
        }
        s = std::move(next);
    }
    if (!s.count(1)) throw InvalidArgument("E must contain 1");
    return {s.begin(), s.end()};
}

Matrix heisenberg_g(unsigned which) {
    Matrix m = Matrix::identity(3);
    switch (which) {
        case 1: m.set(0, 1, 1); break;
        case 2: m.set(0, 2, 1); break;
        case 3: m.set(1, 2, 1); break;
        default: throw InvalidArgument("Heisenberg generators are g1, g2, g3");
    }
    return m;
}

Subgroup named_M(const GroupPtr& g, const std::string& spec) { return named_M(g, parse_m_spec(spec)); }

Subgroup named_M(const GroupPtr& g, const MSpec& spec) {
    const FiniteField& f = g->field();
    if (spec.family && *spec.family != g->family()) {
        throw InvalidArgument("subgroup spec '" + spec.text + "' is for " + to_string(*spec.family) + ", group is " +
                              to_string(g->family()));
    }
    auto need = [&](bool ok, const std::string& what) {
        if (!ok) throw InvalidArgument("subgroup spec '" + spec.text + "': " + what);
    };
    switch (spec.kind) {
        case MSpec::Kind::Additive: {
            need(g->family() == Family::SL2 || g->family() == Family::PSL2, "E= specs live in SL2 or PSL2");
            const auto span = additive_span(f, spec.basis, spec.whole_field);
            unsigned dim = 0;
            for (std::size_t n = span.size(); n > 1; n /= f.characteristic()) ++dim;
            need(dim % 2 == 0, "E has odd dimension " + std::to_string(dim) + ", so M is not of central type");
            std::vector<Index> members;
            for (Code a : span) members.push_back(g->index_of(Matrix::from_codes(2, {1, a, 0, 1})));
            return Subgroup::from_members(g, std::move(members), spec.text);
        }
        case MSpec::Kind::SL3L: {
            need(g->family() == Family::SL3, "L specs live in SL3");
            const unsigned p = f.characteristic();
            need(f.degree() == 1, "SL3 subgroups are cataloged for prime q only");
            const unsigned j = spec.l_index.value_or(p);
            need(j <= p, "L index must lie in 0..p");
            need(p != 2 || j == 0 || j == 2, "for p = 2 only L0 and L2 are of central type");
            const Index g1 = g->index_of(heisenberg_g(1));
            const Index g2 = g->index_of(heisenberg_g(2));
            const Index g3 = g->index_of(heisenberg_g(3));
            const Index second = j == p ? g1 : g->mul(g3, g->pow(g1, j));
            auto m = Subgroup::generate(g, {g2, second}, "L" + std::to_string(j));
            if (m.order() != static_cast<std::size_t>(p) * p) throw InvariantViolation("L_j has the wrong order");
            return m;
        }
        case MSpec::Kind::SzCenter: {
            need(g->family() == Family::Sz, "center specs live in Sz");
            need(spec.rank >= 2 && spec.rank % 2 == 0, "rank must be even and at least 2");
            need(spec.rank <= f.degree(), "rank exceeds the rank of Z(U)");
            std::vector<Index> members;
            for (Code b = 0; b < (Code{1} << spec.rank); ++b) members.push_back(g->index_of(suzuki::u(f, 0, b)));
            return Subgroup::from_members(g, std::move(members), spec.text);
        }
        case MSpec::Kind::Klein: {
            need(g->family() == Family::PSL2 && f.characteristic() != 2, "klein specs live in PSL2(q), q odd");
            need(spec.x < f.order() && spec.y < f.order(), "x, y out of range");
            need(f.add(f.mul(spec.x, spec.x), f.mul(spec.y, spec.y)) == f.neg(1), "x^2 + y^2 must equal -1");
            const Index r = g->index_of(mat2(f, 0, 1, -1, 0));
            const Index s = g->index_of(Matrix::from_codes(2, {spec.x, spec.y, spec.y, f.neg(spec.x)}));
            auto m = Subgroup::generate(g, {r, s}, spec.text);
            if (m.order() != 4) throw InvariantViolation("<r, s> is not a Klein four-group");
            return m;
        }
    }
    throw InvalidArgument("unhandled subgroup spec");
}

Code pick_lambda(const FiniteField& f, Code x, Code y) {
    if (f.degree() != 1 || f.characteristic() <= 7) throw InvalidArgument("pick_lambda needs a prime field with p > 7");
    if (f.add(f.mul(x, x), f.mul(y, y)) != f.neg(1)) throw InvalidArgument("x^2 + y^2 must equal -1");
    const Code two = f.from_int(2);
    const Code minus_two = f.neg(two);
    auto bad = [&](Code v) { return v == two || v == minus_two; };
    for (Code l = 1; l < f.order(); ++l) {
        if (!bad(l) && !bad(f.mul(l, x)) && !bad(f.mul(l, y))) return l;
    }
    throw InvariantViolation("no admissible lambda found");
}

std::vector<std::pair<Code, Code>> solve_circle(const FiniteField& f) {
    if (f.characteristic() == 2) throw InvalidArgument("solve_circle needs odd characteristic");
    std::vector<std::pair<Code, Code>> out;
    const Code m1 = f.neg(1);
    for (Code x = 0; x < f.order(); ++x) {
        for (Code y = 0; y < f.order(); ++y) {
            if (f.add(f.mul(x, x), f.mul(y, y)) == m1) out.emplace_back(x, y);
        }
    }
    const std::size_t expected = f.order() % 4 == 3 ? f.order() + 1 : f.order() - 1;
    if (out.size() != expected) throw InvariantViolation("circle solution count disagrees with q +- 1");
    return out;
}

Index choose_tau(const GroupPtr& g, const Subgroup& m, SetupCase c, SetupFlags& flags) {
    const FiniteField& f = g->field();
    Matrix tau;
    switch (c) {
        case SetupCase::SL2Additive:
        case SetupCase::PSL2Additive: tau = mat2(f, 0, -1, 1, 0); break;
        case SetupCase::SL3Lp: tau = Matrix::from_codes(3, {0, 1, 0, 0, 0, 1, 1, 0, 0}); break;
        case SetupCase::SL3L1:
        case SetupCase::SL3Other: tau = Matrix::from_codes(3, {0, 0, f.neg(1), 0, 1, 0, 1, 0, 0}); break;
        case SetupCase::SzCenter: tau = suzuki::tau(); break;
        case SetupCase::KleinP3:
            if (f.degree() < 2) throw InvalidArgument("the Klein case for p = 3 needs q = 3^m with m > 1");
            flags.lambda = f.characteristic();  // least code outside F_3
            tau = Matrix::from_codes(2, {1, 0, *flags.lambda, 1});
            break;
        case SetupCase::KleinP5:
        case SetupCase::KleinP7:
            flags.lambda = 1;
            tau = Matrix::from_codes(2, {1, 0, 1, 1});
            break;
        case SetupCase::KleinLarge:
        case SetupCase::KleinLargeAxis:
            if (!flags.xy_pair) throw InvalidArgument("the Klein case needs (x, y)");
            flags.lambda = pick_lambda(f, flags.xy_pair->first, flags.xy_pair->second);
            tau = Matrix::from_codes(2, {1, 0, *flags.lambda, 1});
            break;
    }
    return require_trivial_intersection(m, g->index_of(tau), false);
}

ObstructionSetup make_setup(const GroupPtr& g, const std::string& text, const std::optional<Matrix>& tau_override) {
    const MSpec spec = parse_m_spec(text);
    Subgroup m = named_M(g, spec);
    const FiniteField& f = g->field();
    const unsigned p = f.characteristic();
    const Code q = f.order();
    SetupFlags flags;
    SetupCase c = SetupCase::SL2Additive;
    CharacterKind kind = CharacterKind::InducedSylow;
    switch (spec.kind) {
        case MSpec::Kind::Additive: {
            c = g->family() == Family::SL2 ? SetupCase::SL2Additive : SetupCase::PSL2Additive;
            if (p != 2) {
                const Code minus4 = f.from_int(-4);
                bool found = false;
                for (Code e : additive_span(f, spec.basis, spec.whole_field)) found = found || f.mul(e, e) == minus4;
                flags.sqrt_minus4_in_E = found;
            }
            break;
        }
        case MSpec::Kind::SL3L: {
            const unsigned j = spec.l_index.value_or(p);
            flags.sl3_index = j;
            c = j == p ? SetupCase::SL3Lp : (j == 1 ? SetupCase::SL3L1 : SetupCase::SL3Other);
            break;
        }
        case MSpec::Kind::SzCenter:
            c = SetupCase::SzCenter;
            flags.sz_rank = spec.rank;
            break;
        case MSpec::Kind::Klein: {
            flags.xy_pair = std::make_pair(spec.x, spec.y);
            const CharacterKind psi = q % 4 == 1 ? CharacterKind::PhiQ1 : CharacterKind::InducedSylow;
            if (p == 3) {
                c = SetupCase::KleinP3;
                kind = psi;
            } else if (p == 5 || p == 7) {
                if (q != p) {
                    throw InvalidArgument("Klein subgroups of PSL2(" + std::to_string(q) +
                                          ") are not covered: the p = 5, 7 cases are tabulated for q = p only");
                }
                c = p == 5 ? SetupCase::KleinP5 : SetupCase::KleinP7;
                kind = p == 5 ? CharacterKind::Phi5 : CharacterKind::Phi7;
            } else {
                if (q != p) {
                    throw InvalidArgument("Klein subgroups of PSL2(" + std::to_string(q) +
                                          ") are not covered: for p > 7 the case is tabulated for q = p only");
                }
                c = (spec.x == 0 || spec.y == 0) ? SetupCase::KleinLargeAxis : SetupCase::KleinLarge;
                kind = psi;
            }
            break;
        }
    }
    Index tau = 0;
    if (tau_override) {
        const auto t = g->find(*tau_override);
        if (!t) throw InvalidArgument("tau override is not an element of the group");
        flags.tau_override = true;
        tau = require_trivial_intersection(m, *t, true);
    } else {
        tau = choose_tau(g, m, c, flags);
    }
    return ObstructionSetup{g, std::move(m), tau, kind, c, flags};
}

KleinClassification classify_klein(const GroupPtr& g) {
    if (g->family() != Family::PSL2 || g->q() % 2 == 0) throw InvalidArgument("classify_klein needs PSL2(q) with q odd");
    std::vector<Index> involutions;
    for (Index x = 0; x < g->order(); ++x) {
        if (x != g->identity() && g->mul(x, x) == g->identity()) involutions.push_back(x);
    }
    std::vector<std::vector<std::vector<Index>>> partial(parallel::chunk_count(involutions.size()));
    parallel::for_chunks(involutions.size(), [&](std::size_t begin, std::size_t end, unsigned k) {
        for (std::size_t i = begin; i < end; ++i) {
            const Index a = involutions[i];
            for (std::size_t j = i + 1; j < involutions.size(); ++j) {
                const Index b = involutions[j];
                const Index ab = g->mul(a, b);
                if (ab != g->mul(b, a)) continue;
                std::vector<Index> k4{g->identity(), a, b, ab};
                std::sort(k4.begin(), k4.end());
                partial[k].push_back(std::move(k4));
            }
        }
    });
    std::vector<std::vector<Index>> all;
    for (auto& v : partial) all.insert(all.end(), v.begin(), v.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());

    KleinClassification out;
    out.total = all.size();
    const Index h = g->index_of(mat2(g->field(), 0, 1, -1, 0));
    for (const auto& k : all) out.containing_h += std::binary_search(k.begin(), k.end(), h) ? 1 : 0;
    std::vector<char> assigned(all.size(), 0);
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (assigned[i]) continue;
        auto rep = Subgroup::from_members(g, all[i], "klein");
        const auto orbit = conjugate_subgroup_orbit(rep);
        for (const auto& c : orbit.conjugates) {
            const auto it = std::lower_bound(all.begin(), all.end(), c);
            if (it == all.end() || *it != c) throw InvariantViolation("conjugate of a Klein subgroup was not enumerated");
            assigned[static_cast<std::size_t>(it - all.begin())] = 1;
        }
        out.orbit_sizes.push_back(orbit.conjugates.size());
        out.representatives.push_back(std::move(rep));
    }
    out.class_count = out.representatives.size();
    return out;
}

std::vector<std::vector<Code>> central_type_additive_bases(const FiniteField& f) {
    const unsigned p = f.characteristic();
    const unsigned m = f.degree();
    std::vector<std::vector<Code>> out;
    // E = <1> + W, with W in reduced echelon form on digit positions 1..m-1
    for (unsigned d = 2; d <= m; d += 2) {
        const unsigned rows = d - 1;
        std::vector<unsigned> pivots(rows);
        std::function<void(unsigned, unsigned)> choose = [&](unsigned i, unsigned from) {
            if (i == rows) {
                std::vector<std::pair<unsigned, unsigned>> free_slots;  // (row, column)
                for (unsigned r = 0; r < rows; ++r) {
                    for (unsigned col = pivots[r] + 1; col < m; ++col) {
                        if (std::find(pivots.begin(), pivots.end(), col) == pivots.end()) free_slots.emplace_back(r, col);
                    }
                }
                std::vector<unsigned> values(free_slots.size(), 0);
                while (true) {
                    std::vector<std::vector<unsigned>> digits(rows, std::vector<unsigned>(m, 0));
                    for (unsigned r = 0; r < rows; ++r) digits[r][pivots[r]] = 1;
                    for (std::size_t s = 0; s < free_slots.size(); ++s) {
                        digits[free_slots[s].first][free_slots[s].second] = values[s];
                    }
                    std::vector<Code> basis{1};
                    for (const auto& dg : digits) basis.push_back(f.from_digits(dg));
                    out.push_back(std::move(basis));
                    std::size_t s = 0;
                    while (s < values.size() && ++values[s] == p) values[s++] = 0;
                    if (s == values.size()) break;
                }
                return;
            }
            for (unsigned col = from; col < m; ++col) {
                pivots[i] = col;
                choose(i + 1, col + 1);
            }
        };
        choose(0, 1);
    }
    return out;
}

}  // namespace hopfcert
