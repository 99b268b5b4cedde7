#include <map>
#include <set>

#include "doctest.h"
#include "hopfcert/catalog.hpp"
#include "hopfcert/error.hpp"

using namespace hopfcert;

namespace {

GroupPtr group(Family f, std::uint64_t q) {
    static std::map<std::pair<int, std::uint64_t>, GroupPtr> cache;
    auto& slot = cache[{static_cast<int>(f), q}];
    if (!slot) slot = FiniteGroup::build(f, q);
    return slot;
}

Index idx(const GroupPtr& g, std::vector<Code> codes) { return g->index_of(Matrix::from_codes(g->dim(), codes)); }

std::set<Index> as_set(const std::vector<Index>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("sylow subgroups") {
    CHECK(sylow_subgroup(group(Family::SL2, 4)).order() == 4);
    CHECK(sylow_subgroup(group(Family::PSL2, 7)).order() == 7);
    CHECK(sylow_subgroup(group(Family::SL3, 3)).order() == 27);
    CHECK(sylow_subgroup(group(Family::Sz, 8)).order() == 64);
}

TEST_CASE("central type witness") {
    const auto p5 = group(Family::PSL2, 5);
    const auto klein = named_M(p5, "klein:x=2,y=0");
    auto w = is_central_type(klein);
    CHECK(w.invariant_factors == std::vector<std::uint64_t>{2, 2});
    CHECK(w.paired);

    const auto s5 = group(Family::SL2, 5);
    const auto c4 = Subgroup::generate(s5, {idx(s5, {0, 4, 1, 0})});
    w = is_central_type(c4);
    CHECK(w.invariant_factors == std::vector<std::uint64_t>{4});
    CHECK_FALSE(w.paired);

    const auto u9 = sylow_subgroup(group(Family::SL2, 9));
    w = is_central_type(u9);
    CHECK(w.invariant_factors == std::vector<std::uint64_t>{3, 3});
    CHECK(w.paired);

    // C4 x C2 inside the diagonal-free part of SL2(5) x ... use U of SL3(2) center-free pieces instead:
    const auto sl3 = group(Family::SL3, 3);
    CHECK_THROWS_AS(is_central_type(sylow_subgroup(sl3)), InvalidArgument);

    // trivial group pairs vacuously; C6 factors as {6}
    const auto s7 = group(Family::SL2, 7);
    CHECK(is_central_type(Subgroup::generate(s7, {})).paired);
    const auto c6 = Subgroup::generate(s7, {idx(s7, {3, 0, 0, 5})});
    CHECK(is_central_type(c6).invariant_factors == std::vector<std::uint64_t>{6});
}

TEST_CASE("paired bases") {
    const auto klein = named_M(group(Family::PSL2, 7), "klein:x=2,y=3");
    const auto basis = paired_basis(klein);
    REQUIRE(basis.size() == 1);
    CHECK(Subgroup::generate(klein.parent_ptr(), {basis[0].first, basis[0].second}).order() == 4);

    const auto u9 = sylow_subgroup(group(Family::SL2, 9));
    const auto b9 = paired_basis(u9);
    REQUIRE(b9.size() == 1);
    CHECK(u9.parent().element_order(b9[0].first) == 3);

    const auto z4 = named_M(group(Family::SL2, 16), "E=F");
    const auto b16 = paired_basis(z4);
    CHECK(b16.size() == 2);
    std::vector<Index> gens;
    for (auto [a, b] : b16) {
        gens.push_back(a);
        gens.push_back(b);
    }
    CHECK(Subgroup::generate(z4.parent_ptr(), gens).order() == 16);
}

TEST_CASE("subgroup spec parsing") {
    auto s = parse_m_spec("sl2:E=1,g");
    CHECK(s.family == Family::SL2);
    CHECK(s.kind == MSpec::Kind::Additive);
    CHECK(s.basis == std::vector<std::string>{"1", "g"});
    s = parse_m_spec("L3");
    CHECK(s.kind == MSpec::Kind::SL3L);
    CHECK(s.l_index == 3u);
    CHECK_FALSE(parse_m_spec("M1").l_index.has_value());
    CHECK(parse_m_spec("sz:Z2x2").rank == 2);
    CHECK(parse_m_spec("Z2^4").rank == 4);
    s = parse_m_spec("psl2:klein:x=2,y=0");
    CHECK(s.kind == MSpec::Kind::Klein);
    CHECK(s.x == 2);
    CHECK(s.y == 0);
    CHECK_THROWS_AS(parse_m_spec("klein:x=2"), InvalidArgument);
    CHECK_THROWS_AS(parse_m_spec("foo"), InvalidArgument);
    CHECK_THROWS_AS(parse_m_spec("gl9:L1"), InvalidArgument);
    CHECK_THROWS_AS(parse_m_spec("Z2x3"), InvalidArgument);
}

TEST_CASE("named subgroups") {
    const auto p5 = group(Family::PSL2, 5);
    const auto k = named_M(p5, "psl2:klein:x=2,y=0");
    CHECK(k.order() == 4);
    CHECK(is_central_type(k).paired);
    CHECK_THROWS_AS(named_M(p5, "klein:x=1,y=1"), InvalidArgument);

    const auto sl3 = group(Family::SL3, 3);
    const auto m2 = named_M(sl3, "sl3:L1");
    CHECK(m2.order() == 9);
    const Index g1 = sl3->index_of(heisenberg_g(1));
    const Index g2 = sl3->index_of(heisenberg_g(2));
    const Index g3 = sl3->index_of(heisenberg_g(3));
    CHECK(m2.contains(g2));
    CHECK(m2.contains(sl3->mul(g3, g1)));
    // Heisenberg relation g3 g1 = g1 g3 g2^(p-1)
    CHECK(sl3->mul(g3, g1) == sl3->mul(sl3->mul(g1, g3), sl3->pow(g2, 2)));
    for (unsigned j = 0; j <= 3; ++j) CHECK(is_central_type(named_M(sl3, "L" + std::to_string(j))).paired);
    CHECK_THROWS_AS(named_M(sl3, "L4"), InvalidArgument);
    CHECK_THROWS_AS(named_M(group(Family::SL3, 2), "L1"), InvalidArgument);
    CHECK_THROWS_AS(named_M(group(Family::SL3, 4), "L1"), InvalidArgument);

    const auto sz = group(Family::Sz, 8);
    const auto z = named_M(sz, "sz:Z2x2");
    CHECK(z.order() == 4);
    CHECK(is_central_type(z).invariant_factors == std::vector<std::uint64_t>{2, 2});
    for (Index x : z.members()) CHECK(sz->matrix(x).at(1, 0) == 0);  // a = 0, so inside Z(U)
    CHECK_THROWS_AS(named_M(sz, "Z2x2x2"), InvalidArgument);
    CHECK_THROWS_AS(named_M(sz, "Z2x2x2x2"), InvalidArgument);

    CHECK_THROWS_AS(named_M(group(Family::SL2, 8), "E=g,g^2"), InvalidArgument);  // 1 missing
    CHECK_THROWS_AS(named_M(group(Family::SL2, 8), "E=1"), InvalidArgument);      // odd dimension
    CHECK(named_M(group(Family::SL2, 8), "E=1,g").order() == 4);
    CHECK_THROWS_AS(named_M(group(Family::SL2, 8), "sl3:L1"), InvalidArgument);
    CHECK_THROWS_AS(named_M(group(Family::SL2, 8), "psl2:E=F"), InvalidArgument);
}

TEST_CASE("p-subgroups of PSL2 contain pi(1 1; 0 1)") {
    for (std::uint64_t q : {4, 9, 16, 25, 27}) {
        const auto g = group(Family::PSL2, q);
        const Index t = idx(g, {1, 1, 0, 1});
        for (const auto& basis : central_type_additive_bases(g->field())) {
            std::string spec = "E=";
            for (Code c : basis) spec += std::to_string(c) + ",";
            spec.pop_back();
            const auto m = named_M(g, spec);
            CHECK(m.contains(t));
            CHECK(is_central_type(m).paired);
        }
    }
}

TEST_CASE("additive bases enumerate every even subspace containing 1") {
    for (std::uint64_t q : {9, 25, 27, 81, 16, 64}) {
        const auto f = FiniteField::of_order(q);
        std::set<std::vector<Code>> spans;
        for (const auto& b : central_type_additive_bases(*f)) {
            std::vector<std::string> tokens;
            for (Code c : b) tokens.push_back(std::to_string(c));
            spans.insert(additive_span(*f, tokens, false));
        }
        CHECK(spans.size() == central_type_additive_bases(*f).size());
        // oracle: spans of {1, b} and {1, b, c, d}
        std::set<std::vector<Code>> oracle;
        const auto m = f->degree();
        auto add_span = [&](std::vector<std::string> tokens) {
            const bool whole = tokens.size() == 1 && tokens[0] == "F";
            auto s = additive_span(*f, whole ? std::vector<std::string>{} : tokens, whole);
            std::size_t dim = 0;
            for (std::size_t n = s.size(); n > 1; n /= f->characteristic()) ++dim;
            if (dim % 2 == 0) oracle.insert(s);
        };
        for (Code b = 0; b < q; ++b) add_span({"1", std::to_string(b)});
        if (m >= 4) {
            for (Code b = 0; b < q; ++b) {
                for (Code c = b; c < q; ++c) {
                    for (Code d = c; d < q; ++d) {
                        add_span({"1", std::to_string(b), std::to_string(c), std::to_string(d)});
                    }
                }
            }
        }
        if (m == 6) add_span({"F"});
        CHECK(spans == oracle);
    }
}

TEST_CASE("pick_lambda") {
    const auto f13 = FiniteField::of_order(13);
    CHECK(pick_lambda(*f13, 4, 3) == 1);
    const auto f11 = FiniteField::of_order(11);
    CHECK(pick_lambda(*f11, 3, 1) == 1);
    CHECK_THROWS_AS(pick_lambda(*FiniteField::of_order(7), 2, 3), InvalidArgument);
    CHECK_THROWS_AS(pick_lambda(*f13, 1, 1), InvalidArgument);
    for (std::uint64_t p : {11, 13, 17, 19, 23, 29, 31}) {
        const auto f = FiniteField::of_order(p);
        const Code two = 2, m2 = static_cast<Code>(p - 2);
        for (auto [x, y] : solve_circle(*f)) {
            const Code l = pick_lambda(*f, x, y);
            for (Code v : {l, f->mul(l, x), f->mul(l, y)}) CHECK((v != two && v != m2));
            for (Code smaller = 1; smaller < l; ++smaller) {
                bool ok = true;
                for (Code v : {smaller, f->mul(smaller, x), f->mul(smaller, y)}) ok = ok && v != two && v != m2;
                CHECK_FALSE(ok);
            }
        }
    }
}

TEST_CASE("circle solutions") {
    const auto s5 = solve_circle(*FiniteField::of_order(5));
    CHECK(s5 == std::vector<std::pair<Code, Code>>{{0, 2}, {0, 3}, {2, 0}, {3, 0}});
    CHECK(solve_circle(*FiniteField::of_order(7)).size() == 8);
    const auto s13 = solve_circle(*FiniteField::of_order(13));
    CHECK(s13.size() == 12);
    CHECK(std::find(s13.begin(), s13.end(), std::make_pair(Code{4}, Code{3})) != s13.end());
    CHECK(solve_circle(*FiniteField::of_order(9)).size() == 8);
    CHECK_THROWS_AS(solve_circle(*FiniteField::of_order(8)), InvalidArgument);
}

TEST_CASE("klein classification") {
    const std::map<std::uint64_t, std::size_t> expected{{5, 1}, {7, 2}, {11, 1}, {13, 1}, {17, 2}};
    for (auto [q, classes] : expected) {
        const auto k = classify_klein(group(Family::PSL2, q));
        CHECK(k.class_count == classes);
        std::size_t sum = 0;
        for (std::size_t s : k.orbit_sizes) sum += s;
        CHECK(sum == k.total);
        for (const auto& rep : k.representatives) CHECK(is_central_type(rep).paired);
        if (q % 4 == 3) CHECK(k.containing_h == (q + 1) / 4);
    }
    // the Klein subgroups through h split across both classes for q = 7
    const auto g7 = group(Family::PSL2, 7);
    const auto k7 = classify_klein(g7);
    const Index h = idx(g7, {0, 1, 6, 0});
    std::set<std::size_t> classes_hit;
    for (std::size_t c = 0; c < k7.representatives.size(); ++c) {
        for (const auto& conj : conjugate_subgroup_orbit(k7.representatives[c]).conjugates) {
            if (std::binary_search(conj.begin(), conj.end(), h)) classes_hit.insert(c);
        }
    }
    CHECK(classes_hit.size() == 2);
    CHECK_THROWS_AS(classify_klein(group(Family::PSL2, 8)), InvalidArgument);
}

TEST_CASE("conjugating M_(x,y) by the non-split torus") {
    for (std::uint64_t q : {7, 11, 19, 23}) {
        const auto g = group(Family::PSL2, q);
        const auto& f = g->field();
        const auto circle = solve_circle(f);
        for (Code a = 0; a < q; ++a) {
            for (Code b = 0; b < q; ++b) {
                if (f.add(f.mul(a, a), f.mul(b, b)) != 1) continue;
                const Index d = idx(g, {a, b, f.neg(b), a});
                const Code c1 = f.sub(f.mul(a, a), f.mul(b, b));
                const Code c2 = f.mul(f.from_int(2), f.mul(a, b));
                for (std::size_t i = 0; i < circle.size(); i += 3) {
                    const auto [x, y] = circle[i];
                    const auto m = named_M(g, "klein:x=" + std::to_string(x) + ",y=" + std::to_string(y));
                    const Code nx = f.add(f.mul(c1, x), f.mul(c2, y));
                    const Code ny = f.sub(f.mul(c1, y), f.mul(c2, x));
                    const auto target = named_M(g, "klein:x=" + std::to_string(nx) + ",y=" + std::to_string(ny));
                    REQUIRE(m.conjugate_members(d) == target.members());
                }
            }
        }
    }
}

TEST_CASE("the transpose-inverse automorphism maps L_p onto L_0") {
    for (std::uint64_t p : {2, 3}) {
        const auto g = group(Family::SL3, p);
        const auto& f = g->field();
        const Matrix j = Matrix::from_codes(3, {0, 0, 1, 0, 1, 0, 1, 0, 0});  // J = J^-1
        auto theta = [&](Index a) {
            const Matrix t = mat::transpose(mat::inverse_det1(f, g->matrix(a)));
            return g->index_of(mat::mul(f, mat::mul(f, j, t), j));
        };
        for (Index a = 0; a < g->order(); a += (p == 2 ? 1 : 7)) {
            for (Index b = 0; b < g->order(); b += (p == 2 ? 1 : 13)) {
                REQUIRE(theta(g->mul(a, b)) == g->mul(theta(a), theta(b)));
            }
        }
        const auto lp = named_M(g, "L" + std::to_string(p));
        const auto l0 = named_M(g, "L0");
        std::set<Index> image;
        for (Index x : lp.members()) image.insert(theta(x));
        CHECK(image == as_set(l0.members()));
    }
}

TEST_CASE("central-type 2-subgroups of Sz(8) are conjugate into Z(U)") {
    const auto g = group(Family::Sz, 8);
    const auto& f = g->field();
    std::vector<Index> two_elements;
    for (Index x = 0; x < g->order(); ++x) {
        if (x != g->identity() && g->in_P(x)) two_elements.push_back(x);
    }
    // Z(U) has 7 involutions, so no C2^4 fits in a Sylow 2-subgroup; central-type
    // candidates are therefore 2-generated (E cyclic).
    std::set<std::vector<Index>> found;
    for (std::size_t i = 0; i < two_elements.size(); ++i) {
        for (std::size_t k = i + 1; k < two_elements.size(); ++k) {
            const Index a = two_elements[i], b = two_elements[k];
            if (g->mul(a, b) != g->mul(b, a)) continue;
            const auto m = Subgroup::generate(g, {a, b});
            if (m.order() == 1 || !is_central_type(m).paired) continue;
            found.insert(m.members());
        }
    }
    REQUIRE_FALSE(found.empty());
    std::set<std::vector<Index>> conj_of_center_kleins;
    std::vector<Index> zu;
    for (Code b = 0; b < 8; ++b) zu.push_back(g->index_of(suzuki::u(f, 0, b)));
    for (Code b1 = 1; b1 < 8; ++b1) {
        for (Code b2 = b1 + 1; b2 < 8; ++b2) {
            const auto k = Subgroup::generate(g, {g->index_of(suzuki::u(f, 0, b1)), g->index_of(suzuki::u(f, 0, b2))});
            for (auto& c : conjugate_subgroup_orbit(k).conjugates) conj_of_center_kleins.insert(c);
        }
    }
    for (const auto& m : found) {
        for (Index x : m) CHECK(g->mul(x, x) == g->identity());
        CHECK(conj_of_center_kleins.count(m) == 1);
    }
    CHECK(found.size() == conj_of_center_kleins.size());
}

TEST_CASE("setups pick the case tau") {
    const auto s4 = group(Family::SL2, 4);
    auto s = make_setup(s4, "E=F");
    CHECK(s.tau == idx(s4, {0, 1, 1, 0}));  // -1 = 1 in characteristic 2
    CHECK(s.character_kind == CharacterKind::InducedSylow);
    CHECK(s.M.intersection_with_conjugate(s.tau).size() == 1);

    const auto p5 = group(Family::PSL2, 5);
    s = make_setup(p5, "klein:x=2,y=0");
    CHECK(s.tau == idx(p5, {1, 0, 1, 1}));
    CHECK(s.character_kind == CharacterKind::Phi5);
    CHECK(s.setup_case == SetupCase::KleinP5);

    const auto sl3 = group(Family::SL3, 3);
    s = make_setup(sl3, "M2");
    CHECK(s.tau == idx(sl3, {0, 0, 2, 0, 1, 0, 1, 0, 0}));
    CHECK(s.setup_case == SetupCase::SL3L1);
    s = make_setup(sl3, "L3");
    CHECK(s.setup_case == SetupCase::SL3Lp);

    const auto p9 = group(Family::PSL2, 9);
    s = make_setup(p9, "klein:x=1,y=1");
    CHECK(s.setup_case == SetupCase::KleinP3);
    CHECK(s.flags.lambda == Code{3});
    CHECK(s.character_kind == CharacterKind::PhiQ1);
    s = make_setup(p9, "E=F");
    CHECK(s.flags.sqrt_minus4_in_E == true);

    const auto p13 = group(Family::PSL2, 13);
    s = make_setup(p13, "klein:x=4,y=3");
    CHECK(s.setup_case == SetupCase::KleinLarge);
    CHECK(s.flags.lambda == Code{1});
    CHECK(make_setup(p13, "klein:x=0,y=5").setup_case == SetupCase::KleinLargeAxis);

    CHECK_THROWS_AS(make_setup(group(Family::PSL2, 25), "klein:x=2,y=0"), InvalidArgument);
    CHECK_THROWS_AS(make_setup(s4, "E=F", Matrix::from_codes(2, {1, 1, 0, 1})), InvalidArgument);
    CHECK(make_setup(s4, "E=F", Matrix::from_codes(2, {1, 0, 1, 1})).flags.tau_override);
}
