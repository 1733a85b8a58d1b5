#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "shapo/scalar.hpp"
#include "shapo/util.hpp"

using namespace shapo;

namespace {

Scalar q() { return q_pow(AffineExponent(1)); }
Scalar z(int i) {
    AffineExponent x;
    x.lambda[i - 1] = 1;
    return q_pow(x);
}

// Small random rational functions for the field-axiom properties.
struct Gen {
    std::mt19937_64 rng;
    explicit Gen(std::uint64_t seed) : rng(seed) {}

    MultiPoly poly() {
        std::uniform_int_distribution<int> nterms(1, 4), expo(0, 3), coeff(-5, 5);
        MultiPoly p;
        for (int t = 0; t < nterms(rng); ++t) {
            Mono m;
            m.e[0] = expo(rng);
            m.e[1] = expo(rng);
            int c = coeff(rng);
            if (c == 0) c = 1;
            p = p + MultiPoly::monomial(m, c);
        }
        return p;
    }
    Scalar scalar() {
        MultiPoly d;
        do {
            d = poly();
        } while (d.is_zero());
        return Scalar(poly(), d);
    }
};

} // namespace

TEST_CASE("field ops: cancellation and canonical form") {
    CHECK((q() - q()).is_zero());
    CHECK((q() * z(1)) / z(1) == q());
    // (z1^2 - 1)/(z1 - 1) = z1 + 1, checked against multiplication
    Scalar lhs = (z(1) * z(1) - Scalar(1)) / (z(1) - Scalar(1));
    Scalar rhs = z(1) + Scalar(1);
    CHECK(lhs == rhs);
    CHECK((rhs * (z(1) - Scalar(1))) == z(1) * z(1) - Scalar(1));
    CHECK_THROWS_AS(Scalar(1) / Scalar(), math_error);
}

TEST_CASE("q-integers") {
    CHECK(q_int(2) == q() + q().inverse());
    CHECK(q_int(0).is_zero());
    AffineExponent la1;
    la1.lambda[0] = 1;
    Scalar expected = (z(1) - z(1).inverse()) / (q() - q().inverse());
    CHECK(q_int(la1) == expected);
    // [-x] = -[x]
    AffineExponent x(3);
    x.lambda[1] = -2;
    CHECK(q_int(-x) == -q_int(x));
}

TEST_CASE("phi") {
    CHECK(phi(AffineExponent(1)) == q().inverse());
    CHECK(phi(AffineExponent(2)) == q().inverse() * q().inverse() / (q() + q().inverse()));
    AffineExponent la1;
    la1.lambda[0] = 1;
    Scalar expected = z(1).inverse() * (q() - q().inverse()) / (z(1) - z(1).inverse());
    CHECK(phi(la1) == expected);
    CHECK_THROWS_AS(phi(AffineExponent(0)), math_error);
    // q^{-x} = phi(x) * [x]_q
    AffineExponent x(1);
    x.lambda[0] = 2;
    CHECK(q_pow(-x) == phi(x) * q_int(x));
}

TEST_CASE("specialize") {
    std::array<Rat, kNumVars - 1> zs{};
    CHECK(specialize(q() + q().inverse(), 2, zs) == Rat(5, 2));
    zs[0] = 8;
    CHECK(specialize(z(1), 3, zs) == 8);
    zs[0] = 4;
    AffineExponent la1;
    la1.lambda[0] = 1;
    CHECK(specialize(q_int(la1), 2, zs) == Rat(5, 2)); // (4 - 1/4)/(2 - 1/2)
    CHECK_THROWS_AS(specialize(q(), 1, zs), std::invalid_argument);
    // pole: denominator z1 - 1 vanishes at z1 = 1
    zs[0] = 1;
    CHECK_THROWS_AS(specialize(Scalar(1) / (z(1) - Scalar(1)), 2, zs), math_error);
}

TEST_CASE("field axioms on random elements") {
    Gen gen(20240817);
    for (int it = 0; it < 40; ++it) {
        Scalar a = gen.scalar(), b = gen.scalar(), c = gen.scalar();
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK(a - a == Scalar());
        if (!b.is_zero()) CHECK((a / b) * b == a);
    }
}

TEST_CASE("specialize is a homomorphism") {
    Gen gen(7);
    std::array<Rat, kNumVars - 1> zs{};
    zs[0] = Rat(3, 2);
    zs[1] = Rat(5, 7);
    Rat q0(7, 3);
    for (int it = 0; it < 25; ++it) {
        Scalar a = gen.scalar(), b = gen.scalar();
        try {
            Rat va = specialize(a, q0, zs), vb = specialize(b, q0, zs);
            CHECK(specialize(a * b, q0, zs) == va * vb);
            CHECK(specialize(a + b, q0, zs) == va + vb);
        } catch (const math_error&) {
            // random pole; skip the pair
        }
    }
}

TEST_CASE("substitute weight z -> q^k") {
    std::array<int, kNumVars - 1> k{};
    k[0] = 3;
    AffineExponent la1;
    la1.lambda[0] = 1;
    // [z]_q with z -> q^3 becomes [3]_q
    CHECK(substitute_weight(q_int(la1), k) == q_int(3));
    k[0] = -2;
    CHECK(substitute_weight(z(1), k) == q().inverse() * q().inverse());
}
