#include <random>

#include "doctest.h"
#include "hopfcert/cyclotomic.hpp"
#include "hopfcert/error.hpp"
#include "hopfcert/rational.hpp"

using namespace hopfcert;

TEST_CASE("rational normalization and arithmetic") {
    CHECK(Rational(6, 4) + Rational(0) == Rational(3, 2));
    CHECK((Rational(6, 4) + Rational(0)).str() == "3/2");
    CHECK((Rational(343) / Rational(4)).str() == "343/4");
    CHECK(Rational(512, 9) * Rational(9, 512) == Rational(1));
    CHECK((Rational(512, 9) * Rational(9, 512)).str() == "1");
    CHECK(Rational(3, -6).str() == "-1/2");
    CHECK(Rational(0, -5).denominator() == 1);
    CHECK(Rational::parse("22295/4") == Rational(22295, 4));
    CHECK(Rational::parse("-7") == Rational(-7));
}

TEST_CASE("rational division by zero is an error") {
    CHECK_THROWS_AS(Rational(1) / Rational(0), InvalidArgument);
    CHECK_THROWS_AS(Rational(1, 0), InvalidArgument);
    CHECK_THROWS_AS(Rational(0).inverse(), InvalidArgument);
}

TEST_CASE("rational field axioms on random small values") {
    std::mt19937_64 rng(0);
    std::uniform_int_distribution<long> num(-30, 30);
    std::uniform_int_distribution<long> den(1, 12);
    auto draw = [&] { return Rational(num(rng), den(rng)); };
    for (int i = 0; i < 500; ++i) {
        const Rational a = draw(), b = draw(), c = draw();
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + (-a) == Rational(0));
        if (!a.is_zero()) CHECK(a * a.inverse() == Rational(1));
        const Rational s = a * b;
        CHECK(gcd(s.numerator(), s.denominator()) == 1);
        CHECK(s.denominator() > 0);
    }
}

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic_polynomial(1) == std::vector<Integer>{-1, 1});
    CHECK(cyclotomic_polynomial(4) == std::vector<Integer>{1, 0, 1});
    CHECK(cyclotomic_polynomial(8) == std::vector<Integer>{1, 0, 0, 0, 1});
    CHECK(cyclotomic_polynomial(6) == std::vector<Integer>{1, -1, 1});
    CHECK(cyclotomic_polynomial(12).size() == euler_phi(12) + 1);
}

TEST_CASE("cyclotomic examples") {
    const Cyclotomic i = Cyclotomic::zeta(4, 1);
    CHECK(i * i == Cyclotomic::from_rational(4, Rational(-1)));
    const Cyclotomic z3 = Cyclotomic::zeta(3, 1);
    CHECK((Cyclotomic::one(3) + z3 + z3 * z3).is_zero());
    for (unsigned n : {2U, 3U, 5U, 7U, 8U, 12U}) {
        CHECK(Cyclotomic::zeta(n, 1).inverse() == Cyclotomic::zeta(n, static_cast<long>(n) - 1));
    }
}

TEST_CASE("cyclotomic errors") {
    CHECK_THROWS_AS(Cyclotomic::zeta(3, 1) + Cyclotomic::zeta(4, 1), InvalidArgument);
    CHECK_THROWS_AS(Cyclotomic::zero(5).inverse(), InvalidArgument);
}

TEST_CASE("roots of unity: zeta^n = 1 and the full sum vanishes") {
    for (unsigned n : {2U, 3U, 4U, 5U, 8U}) {
        const Cyclotomic z = Cyclotomic::zeta(n, 1);
        Cyclotomic power = Cyclotomic::one(n);
        Cyclotomic sum = Cyclotomic::zero(n);
        for (unsigned k = 0; k < n; ++k) {
            sum += power;
            power *= z;
        }
        CHECK(power == Cyclotomic::one(n));
        CHECK(sum.is_zero());
    }
}

TEST_CASE("cyclotomic round trip a*b*inv(b) = a") {
    std::mt19937_64 rng(0);
    std::uniform_int_distribution<long> coef(-4, 4);
    for (unsigned n : {3U, 4U, 5U, 8U, 9U}) {
        for (int trial = 0; trial < 30; ++trial) {
            Cyclotomic a = Cyclotomic::zero(n);
            Cyclotomic b = Cyclotomic::zero(n);
            for (unsigned k = 0; k < n; ++k) {
                a += Cyclotomic::zeta(n, k) * Rational(coef(rng), 1 + trial % 3);
                b += Cyclotomic::zeta(n, k) * Rational(coef(rng));
            }
            if (b.is_zero()) continue;
            CHECK(a * b * b.inverse() == a);
            CHECK(b * b.inverse() == Cyclotomic::one(n));
        }
    }
}
