#include <catch2/catch_amalgamated.hpp>

#include "catmod/analysis.hpp"

using namespace catmod;

TEST_CASE("residue census, one digit, p=5") {
    Automaton a = build(PrimeContext(5));
    ResidueCensus c = residue_census(a, 1);
    // C_0..C_4 = 1,1,2,5,14 mod 5 -> residues 1,1,2,0,4.
    CHECK(c.counts[0] == 1);
    CHECK(c.counts[1] == 2);
    CHECK(c.counts[2] == 1);
    CHECK(c.counts[3] == 0);
    CHECK(c.counts[4] == 1);
    CHECK(c.total() == 5);
}

TEST_CASE("census totals partition p^k") {
    for (u64 p : {2, 5, 7}) {
        Automaton a = build(PrimeContext(p));
        mpz_class pk = 1;
        for (unsigned k = 1; k <= 10; ++k) {
            pk *= p;
            CHECK(residue_census(a, k).total() == pk);
        }
    }
}

TEST_CASE("census agrees with a full oracle sweep") {
    PrimeContext ctx(5);
    Automaton a = build(ctx);
    ResidueCensus c = residue_census(a, 6);
    std::vector<mpz_class> sweep(5, 0);
    for (u64 n = 0; n < 15625; ++n) {  // 5^6
        sweep[catalan_lucas_oracle(mpz_class(static_cast<unsigned long>(n)), ctx)] += 1;
    }
    CHECK(c.counts == sweep);
}

TEST_CASE("zero density curve") {
    Automaton a = build(PrimeContext(5));
    auto curve = zero_density_curve(a, 8);
    REQUIRE(curve.size() == 8);
    mpq_class survival(1);  // (4/5)^{k-1} bound on the nonzero fraction
    for (std::size_t i = 0; i < curve.size(); ++i) {
        CHECK(curve[i] >= 0);
        CHECK(curve[i] <= 1);
        if (i > 0) {
            CHECK(curve[i] >= curve[i - 1]);
            survival *= mpq_class(4, 5);
        }
        CHECK(1 - curve[i] <= survival);
    }
}

TEST_CASE("forced zero digit set") {
    CHECK(forced_zero_digit_set(PrimeContext(5)).digits == std::vector<unsigned>{3});
    CHECK(forced_zero_digit_set(PrimeContext(7)).digits == std::vector<unsigned>{4, 5});
    CHECK(forced_zero_digit_set(PrimeContext(13)).digits ==
          std::vector<unsigned>{7, 8, 9, 10, 11});
    for (u64 p : {5, 7, 13}) {
        CHECK(forced_zero_digit_set(PrimeContext(p)).digits.size() == (p - 3) / 2);
    }
    ForcedZeroSet small = forced_zero_digit_set(PrimeContext(3));
    CHECK(small.digits.empty());
    CHECK(small.empty_for_small_p);
}

TEST_CASE("forced zero residues check") {
    for (u64 p : {5, 7}) {
        Report r = forced_zero_residues_check(PrimeContext(p), 10000);
        CHECK(r.verified);
        CHECK(!r.counterexample.has_value());
        CHECK(r.to_json()["status"] == "verified");
    }
}

TEST_CASE("p^k - 1 check up to k = 20") {
    for (u64 p : {5, 7}) {
        Report r = pk_minus_1_check(PrimeContext(p), 20);
        CHECK(r.verified);
    }
}

TEST_CASE("generator check") {
    GeneratorCheck g5 = generator_check(PrimeContext(5));
    CHECK(g5.full_group);
    CHECK(g5.closure == std::vector<u64>{1, 2, 3, 4});
    CHECK(g5.matches_automaton_constants);

    // p=7: central binomials {1, 2, 6, 20 mod 7 = 6}; closure of {2, 6}
    // reaches 4, 1, 5, 3 as well.
    GeneratorCheck g7 = generator_check(PrimeContext(7));
    CHECK(g7.full_group);
    CHECK(g7.closure.size() == 6);
    CHECK(g7.matches_automaton_constants);

    for (u64 p : {11, 13}) {
        GeneratorCheck g = generator_check(PrimeContext(p));
        CHECK(std::count(g.closure.begin(), g.closure.end(), 1) == 1);
        CHECK(g.matches_automaton_constants);
    }

    CHECK_THROWS_AS(generator_check(PrimeContext(3)), std::invalid_argument);
}

TEST_CASE("mod 2 characterization") {
    Report r = mod2_characterization_check(12);
    CHECK(r.verified);
    CHECK_THROWS_AS(mod2_characterization_check(21), std::invalid_argument);
}

TEST_CASE("report serialization") {
    Report r{"sample claim", 7, {{"n_max", 10}}, false, "n=3"};
    auto j = r.to_json();
    CHECK(j["claim"] == "sample claim");
    CHECK(j["p"] == 7);
    CHECK(j["status"] == "failed");
    CHECK(j["counterexample"] == "n=3");
    CHECK(r.to_text().find("FAIL") != std::string::npos);
}
