#include <set>

#include "doctest.h"
#include "hopfcert/error.hpp"
#include "hopfcert/finite_field.hpp"

using namespace hopfcert;

TEST_CASE("canonical moduli") {
    CHECK(FiniteField::create(2, 2)->modulus() == std::vector<unsigned>{1, 1, 1});
    CHECK(FiniteField::create(3, 2)->modulus() == std::vector<unsigned>{1, 0, 1});
    CHECK(FiniteField::create(13, 1)->modulus() == std::vector<unsigned>{0, 1});
    // constant-term-first lexicographic order picks x^3+x^2+1 over x^3+x+1
    CHECK(FiniteField::create(2, 3)->modulus() == std::vector<unsigned>{1, 0, 1, 1});
    CHECK(FiniteField::create(2, 5)->modulus() == std::vector<unsigned>{1, 0, 0, 1, 0, 1});
    CHECK(FiniteField::create(5, 2)->modulus() == std::vector<unsigned>{1, 1, 1});
}

TEST_CASE("field creation errors") {
    CHECK_THROWS_AS(FiniteField::create(4, 1), InvalidArgument);
    CHECK_THROWS_AS(FiniteField::create(2, 0), InvalidArgument);
    CHECK_THROWS_AS(FiniteField::create(2, 11), BoundExceeded);
    CHECK_THROWS_AS(FiniteField::of_order(12), InvalidArgument);
}

TEST_CASE("field arithmetic examples") {
    const auto f4 = FiniteField::create(2, 2);
    CHECK(f4->mul(2, 2) == 3);
    const auto f13 = FiniteField::create(13, 1);
    CHECK(f13->inv(4) == 10);
    CHECK_THROWS_AS(f13->inv(0), InvalidArgument);
    for (std::uint64_t q : {4, 8, 9, 13, 25, 27, 32}) {
        const auto f = FiniteField::of_order(q);
        for (Code x = 1; x < f->order(); ++x) CHECK(f->pow(x, f->order() - 1) == 1);
    }
}

TEST_CASE("field element wrapper checks the field") {
    const auto f9 = FiniteField::create(3, 2);
    const auto f7 = FiniteField::create(7, 1);
    const FieldElement a(f9, 4);
    const FieldElement b(f7, 4);
    CHECK_THROWS_AS(a + b, InvalidArgument);
    CHECK((a * a.inverse()).code() == 1);
    CHECK_THROWS_AS(FieldElement(f7, 7), InvalidArgument);
}

TEST_CASE("field axioms exhaustively for small fields") {
    for (std::uint64_t q : {2, 3, 4, 5, 8, 9}) {
        const auto f = FiniteField::of_order(q);
        const Code n = f->order();
        for (Code a = 0; a < n; ++a) {
            CHECK(f->add(a, f->neg(a)) == 0);
            if (a != 0) CHECK(f->mul(a, f->inv(a)) == 1);
            for (Code b = 0; b < n; ++b) {
                CHECK(f->add(a, b) == f->add(b, a));
                CHECK(f->mul(a, b) == f->mul(b, a));
                for (Code c = 0; c < n; ++c) {
                    CHECK(f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c)));
                    CHECK(f->mul(f->mul(a, b), c) == f->mul(a, f->mul(b, c)));
                }
            }
        }
    }
}

TEST_CASE("frobenius") {
    const auto f8 = FiniteField::create(2, 3);
    for (Code x = 0; x < 8; ++x) {
        CHECK(f8->frobenius(x, 0) == x);
        CHECK(f8->frobenius(x, 3) == x);
    }
    for (std::uint64_t q : {4, 8, 9, 16, 25, 27, 32}) {
        const auto f = FiniteField::of_order(q);
        for (Code a = 0; a < f->order(); ++a) {
            for (Code b = 0; b < f->order(); ++b) {
                CHECK(f->frobenius(f->add(a, b), 1) == f->add(f->frobenius(a, 1), f->frobenius(b, 1)));
                CHECK(f->frobenius(f->mul(a, b), 1) == f->mul(f->frobenius(a, 1), f->frobenius(b, 1)));
            }
        }
    }
}

TEST_CASE("suzuki theta") {
    for (std::uint64_t q : {8, 32, 128}) {
        const auto f = FiniteField::of_order(q);
        std::set<Code> images;
        for (Code a = 0; a < f->order(); ++a) {
            const Code t = suzuki_theta(*f, a);
            CHECK(suzuki_theta(*f, t) == f->mul(a, a));
            CHECK(suzuki_theta_inverse(*f, t) == a);
            if (a != 0) {
                const Code phi = f->mul(a, t);
                images.insert(phi);
                if (phi == 1) CHECK(a == 1);
            }
        }
        CHECK(images.size() == f->order() - 1);
        CHECK(images.count(0) == 0);
    }
    CHECK_THROWS_AS(suzuki_theta(*FiniteField::create(2, 2), 1), InvalidArgument);
}

TEST_CASE("square roots") {
    const auto f9 = FiniteField::create(3, 2);
    const auto r = f9->square_root(f9->neg(1));
    REQUIRE(r.has_value());
    CHECK(f9->mul(*r, *r) == f9->neg(1));
    const auto f7 = FiniteField::create(7, 1);
    CHECK_FALSE(f7->square_root(f7->neg(1)).has_value());
    CHECK(f7->square_root(0) == Code{0});
    for (std::uint64_t q = 2; q <= 49; ++q) {
        if (!prime_power(q)) continue;
        const auto f = FiniteField::of_order(q);
        for (Code x = 0; x < f->order(); ++x) {
            const auto s = f->square_root(f->mul(x, x));
            REQUIRE(s.has_value());
            CHECK((*s == x || *s == f->neg(x)));
            CHECK(*s <= f->neg(*s));
        }
    }
}
