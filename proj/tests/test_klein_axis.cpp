// Klein subgroups of PSL2(p), p = 1 mod 4, from circle solutions with x y = 0.

#include <string>

#include "doctest.h"
#include "hopfcert/obstruction.hpp"

using namespace hopfcert;

namespace {

Rational involution_branch(long p) { return Rational((p + 1) * (p + 1) * (p + 1) * (2 - p), 32); }
Rational generic_branch(long p) { return Rational((p + 1) * (p + 1) * (p + 1), 64); }

}  // namespace

TEST_CASE("p > 7 axis solutions: computed value matches the involution branch") {
    for (std::uint64_t p : {13ULL, 17ULL}) {
        const auto g = FiniteGroup::build(Family::PSL2, p);
        for (const auto& [x, y] : solve_circle(g->field())) {
            if (x != 0 && y != 0) continue;
            CAPTURE(p);
            CAPTURE(x);
            const auto s = make_setup(g, "klein:x=" + std::to_string(x) + ",y=" + std::to_string(y));
            CHECK(s.setup_case == SetupCase::KleinLargeAxis);
            const auto cert = certify(s);
            CHECK(cert.value == involution_branch(static_cast<long>(p)));
            REQUIRE(cert.closed_form.has_value());
            CHECK(*cert.closed_form == cert.value);
            CHECK(cert.conclusion == Conclusion::Obstructed);
        }
    }
}

TEST_CASE("p = 5 with (x, y) = (2, 0): value is one of the two branches") {
    // No lambda in F_5 avoids {2, -2} for lambda and 2 lambda, so every
    // tau = pi(1 0; lambda 1) is tried with psi = phi_q1.
    const auto g = FiniteGroup::build(Family::PSL2, 5);
    const auto m = named_M(g, "klein:x=2,y=0");
    const auto psi = special_character(CharacterKind::PhiQ1, g);
    for (Code lambda = 1; lambda < 5; ++lambda) {
        CAPTURE(lambda);
        const Index tau = g->index_of(Matrix::from_codes(2, {1, 0, lambda, 1}));
        const Rational v = chi_y2_quadloop(psi, m, tau);
        CHECK((v == generic_branch(5) || v == involution_branch(5)));
    }
}
