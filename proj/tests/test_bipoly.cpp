#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "catmod/bipoly.hpp"

using namespace catmod;

namespace {

BiPoly random_poly(u64 p, unsigned max_deg, std::mt19937& rng) {
    std::uniform_int_distribution<unsigned> deg(0, max_deg - 1);
    std::uniform_int_distribution<u64> coeff(0, p - 1);
    std::uniform_int_distribution<int> n_terms(0, 12);
    BiPoly f(p);
    int k = n_terms(rng);
    for (int i = 0; i < k; ++i) f.add_term(deg(rng), deg(rng), coeff(rng));
    return f;
}

BiPoly pow_by_mul(const BiPoly& q, u64 e, u64 p) {
    BiPoly r = BiPoly::constant(p, 1);
    for (u64 i = 0; i < e; ++i) r = r * q;
    return r;
}

}  // namespace

TEST_CASE("ring operations") {
    PrimeContext p5(5);
    BiPoly y_plus_1(5);
    y_plus_1.add_term(0, 1, 1);
    y_plus_1.add_term(0, 0, 1);

    BiPoly sq = y_plus_1 * y_plus_1;
    BiPoly expected(5);
    expected.add_term(0, 2, 1);
    expected.add_term(0, 1, 2);
    expected.add_term(0, 0, 1);
    CHECK(sq == expected);

    CHECK(y_plus_1 + BiPoly::zero(5) == y_plus_1);
    CHECK(scale(0, y_plus_1).is_zero());

    // Cancelling coefficients never linger in the term map.
    BiPoly diff = y_plus_1 + scale(4, y_plus_1);
    CHECK(diff.is_zero());

    BiPoly other(7);
    CHECK_THROWS_AS(y_plus_1 + other, std::invalid_argument);
    CHECK_THROWS_AS(y_plus_1 * other, std::invalid_argument);
}

TEST_CASE("eval00") {
    PrimeContext ctx(7);
    BiPoly minus_y_plus_1(7);  // -(y+1)
    minus_y_plus_1.add_term(0, 1, 6);
    minus_y_plus_1.add_term(0, 0, 6);
    CHECK(minus_y_plus_1.eval00() == 6);
    CHECK(initial_poly(ctx).eval00() == 0);  // y(1-2xy-2xy^2) has no constant term
    CHECK(BiPoly::constant(7, 3).eval00() == 3);
    CHECK(BiPoly::zero(7).eval00() == 0);
}

TEST_CASE("cartier definition") {
    for (u64 p : {5, 7}) {
        PrimeContext ctx(p);
        BiPoly f = BiPoly::monomial(p, static_cast<unsigned>(p), static_cast<unsigned>(p), 1);
        CHECK(cartier(f, 0, 0, ctx) == BiPoly::monomial(p, 1, 1, 1));

        BiPoly g = BiPoly::monomial(p, 1, 1, 1) + BiPoly::monomial(p, 2, 2, 1);
        CHECK(cartier(g, 1, 1, ctx) == BiPoly::constant(p, 1));

        CHECK_THROWS_AS(cartier(f, static_cast<unsigned>(p), 0, ctx), std::invalid_argument);
    }
    for (u64 p : {5, 7, 11}) {
        PrimeContext ctx(p);
        CHECK(cartier(q_power(ctx), 0, 0, ctx) == BiPoly::constant(p, 1));
    }
}

TEST_CASE("q_power closed form") {
    PrimeContext p2(2);
    BiPoly expected(2);  // x y^2 + x + 1 (mod 2)
    expected.add_term(1, 2, 1);
    expected.add_term(1, 0, 1);
    expected.add_term(0, 0, 1);
    CHECK(q_power(p2) == expected);

    for (u64 p : {5, 7, 11, 13}) {
        PrimeContext ctx(p);
        CHECK(q_power(ctx).coeff(static_cast<unsigned>(p - 1),
                                 static_cast<unsigned>(2 * p - 2)) == 1);
    }
}

TEST_CASE("q_power equals iterated multiplication of Q") {
    for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31}) {
        PrimeContext ctx(p);
        CHECK(q_power(ctx) == pow_by_mul(q_poly(ctx), p - 1, p));
    }
}

TEST_CASE("step examples") {
    for (u64 p : {5, 7, 11}) {
        PrimeContext ctx(p);
        BiPoly qp = q_power(ctx);

        for (unsigned d = 0; d < p; ++d) {
            CHECK(step(BiPoly::constant(p, 1), d, qp, ctx) ==
                  BiPoly::constant(p, ctx.binom_small(2LL * d, d)));
        }

        BiPoly y = BiPoly::monomial(p, 0, 1, 1);
        CHECK(step(y, 0, qp, ctx).is_zero());
        BiPoly y_plus_1(p);
        y_plus_1.add_term(0, 1, 1);
        y_plus_1.add_term(0, 0, 1);
        CHECK(step(y, static_cast<unsigned>(p - 1), qp, ctx) == y_plus_1);

        BiPoly xy3 = BiPoly::monomial(p, 1, 3, 1);
        BiPoly expected(p);  // -2xy - 2xy^2
        expected.add_term(1, 1, ctx.neg(2));
        expected.add_term(1, 2, ctx.neg(2));
        CHECK(step(xy3, 0, qp, ctx) == expected);
    }
}

TEST_CASE("table1 closed forms") {
    PrimeContext p7(7);
    for (unsigned d = 0; d + 1 < 7; ++d) {
        CHECK(table1_closed_form(Basis::Y, d, p7) ==
              BiPoly::constant(7, p7.binom_small(2LL * d, static_cast<long long>(d) - 1)));
    }
    BiPoly xy_y1(7);  // xy(y+1)
    xy_y1.add_term(1, 1, 1);
    xy_y1.add_term(1, 2, 1);
    CHECK(table1_closed_form(Basis::XY2, 0, p7) == xy_y1);
    CHECK(table1_closed_form(Basis::XY3, 2, p7).is_zero());

    PrimeContext p3(3);
    CHECK_THROWS_AS(table1_closed_form(Basis::One, 0, p3), std::invalid_argument);
}

TEST_CASE("table1 conformance against the generic step") {
    for (u64 p : {5, 7, 11, 13}) {
        PrimeContext ctx(p);
        BiPoly qp = q_power(ctx);
        for (Basis b : {Basis::One, Basis::Y, Basis::XY, Basis::XY2, Basis::XY3}) {
            for (unsigned d = 0; d < p; ++d) {
                CHECK(step(basis_poly(b, p), d, qp, ctx) == table1_closed_form(b, d, ctx));
            }
        }
    }
}

TEST_CASE("cartier is linear") {
    std::mt19937 rng(20250823);
    for (u64 p : {3, 7, 13}) {
        PrimeContext ctx(p);
        std::uniform_int_distribution<u64> coeff(0, p - 1);
        std::uniform_int_distribution<unsigned> digit(0, static_cast<unsigned>(p - 1));
        for (int i = 0; i < 100; ++i) {
            BiPoly f = random_poly(p, static_cast<unsigned>(p * p), rng);
            BiPoly g = random_poly(p, static_cast<unsigned>(p * p), rng);
            u64 a = coeff(rng), b = coeff(rng);
            unsigned d1 = digit(rng), d2 = digit(rng);
            BiPoly lhs = cartier(scale(a, f) + scale(b, g), d1, d2, ctx);
            BiPoly rhs = scale(a, cartier(f, d1, d2, ctx)) + scale(b, cartier(g, d1, d2, ctx));
            REQUIRE(lhs == rhs);
        }
    }
}

TEST_CASE("cartier slices reassemble the polynomial") {
    std::mt19937 rng(42);
    for (u64 p : {2, 5, 11}) {
        PrimeContext ctx(p);
        for (int i = 0; i < 100; ++i) {
            BiPoly f = random_poly(p, static_cast<unsigned>(p * p), rng);
            BiPoly rebuilt(p);
            for (unsigned d1 = 0; d1 < p; ++d1) {
                for (unsigned d2 = 0; d2 < p; ++d2) {
                    BiPoly slice = cartier(f, d1, d2, ctx);
                    for (const auto& [k, c] : slice.terms()) {
                        rebuilt.add_term(static_cast<unsigned>(k.first * p + d1),
                                         static_cast<unsigned>(k.second * p + d2), c);
                    }
                }
            }
            REQUIRE(rebuilt == f);
        }
    }
}
