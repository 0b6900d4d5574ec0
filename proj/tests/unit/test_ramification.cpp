#include <doctest.h>

#include "gstower/ramification.hpp"

using namespace gstower;
using ram::DegreeExpr;
using ram::Locus;

TEST_SUITE_BEGIN("ramification");

TEST_CASE("path different values") {
    CHECK(ram::path_different(3, 4, Locus::KminusStarOrInfty) == 52);
    CHECK(ram::path_different(3, 5, Locus::Zero) == 16);
    CHECK(ram::path_different(3, 4, Locus::Zero) == 4);

    // the two-part grouping (1+...+p^(n-4))*2(p-1) + 2p^(n-3)(p^2-1)
    for (std::int64_t p : {3, 5, 7}) {
        for (int n = 4; n <= 12; ++n) {
            mpz_class geom = 0, pk = 1;
            for (int k = 0; k <= n - 4; ++k) {
                geom += pk;
                pk *= p;
            }
            mpz_class pn3 = 1;
            for (int k = 0; k < n - 3; ++k) pn3 *= p;
            mpz_class grouped = geom * 2 * (p - 1) + 2 * pn3 * (p * p - 1);
            CHECK(ram::path_different(p, n, Locus::KminusStarOrInfty) == grouped);
        }
    }
}

TEST_CASE("closed forms match the step-by-step transitivity sums") {
    for (std::int64_t p : {3, 5, 7}) {
        for (int n = 4; n <= 20; ++n)
            CHECK(ram::path_different(p, n, Locus::Zero) ==
                  ram::path_different_closed_form(p, n, Locus::Zero));
        for (int n = 2; n <= 20; ++n)
            CHECK(ram::path_different(p, n, Locus::KminusStarOrInfty) ==
                  ram::path_different_closed_form(p, n, Locus::KminusStarOrInfty));
    }
}

TEST_CASE("path structure") {
    auto steps = ram::ram_path(3, 5, Locus::Zero);
    REQUIRE(steps.size() == 4);
    CHECK(steps[0].e == 1);
    CHECK(steps[0].d == 0);
    CHECK(steps[1].e == 1);
    CHECK(steps[2].e == 3);
    CHECK(steps[2].d == 4);
    CHECK(steps[3].e == 3);

    auto other = ram::ram_path(3, 3, Locus::KminusStarOrInfty);
    REQUIRE(other.size() == 2);
    for (const auto& s : other) {
        CHECK(s.e == 3);
        CHECK(s.d == 4);
    }

    CHECK_THROWS_AS(ram::ram_path(3, 3, Locus::Zero), LevelTooSmall);
    CHECK_THROWS_AS(ram::ram_path(3, 1, Locus::KminusStarOrInfty), LevelTooSmall);
}

TEST_CASE("divisor degree coefficients") {
    CHECK(ram::deg_D(3, 5) == DegreeExpr{mpq_class(16, 9), 0});
    CHECK(ram::deg_D(3, 4) == DegreeExpr{mpq_class(4, 3), 0});
    CHECK_THROWS_AS(ram::deg_D(3, 3), LevelTooSmall);

    CHECK(ram::deg_L(3, 5) == DegreeExpr{mpq_class(160, 27), 0});
    CHECK(ram::deg_L(3, 6) == DegreeExpr{mpq_class(484, 81), 0});
    CHECK_THROWS_AS(ram::deg_L(3, 4), LevelTooSmall);

    // strictly increasing in n, bounded by 2 and 2p
    for (std::int64_t p : {3, 5, 7}) {
        mpq_class prev_d(-1), prev_l(-1);
        for (int n = 5; n <= 25; ++n) {
            mpq_class cd = ram::deg_D(p, n).a;
            mpq_class cl = ram::deg_L(p, n).a;
            CHECK(cd > prev_d);
            CHECK(cl > prev_l);
            CHECK(cd < 2);
            CHECK(cl < 2 * p);
            // the defect against the limit is exactly 2*p^(3-n) resp. 2*p^(2-n)
            mpz_class pn3 = 1, pn2 = 1;
            for (int k = 0; k < n - 3; ++k) pn3 *= p;
            for (int k = 0; k < n - 2; ++k) pn2 *= p;
            CHECK(mpq_class(2) - cd == mpq_class(2) / pn3);
            CHECK(mpq_class(2 * p) - cl == mpq_class(2) / pn2);
            prev_d = cd;
            prev_l = cl;
        }
    }
}

TEST_CASE("genus formula") {
    CHECK(ram::genus_closure(3, 5) == DegreeExpr{mpq_class(77, 27), 1});
    CHECK_THROWS_AS(ram::genus_closure(3, 4), LevelTooSmall);
    // independent rational evaluation: 5 - 1/125 - 1/625 = 3119/625
    mpq_class oracle = mpq_class(5) - mpq_class(1, 125) - mpq_class(1, 625);
    oracle.canonicalize();
    CHECK(ram::genus_closure(5, 6) == DegreeExpr{oracle, 1});
}

TEST_CASE("hurwitz consistency in the formal degree") {
    for (std::int64_t p : {3, 5, 7})
        for (int n = 5; n <= 12; ++n) CHECK(ram::hurwitz_check(p, n));
    CHECK(ram::hurwitz_check(5, 7));
    // spot value: (16/9 + 160/27)/2 - 1 = 77/27
    mpq_class lhs = (mpq_class(16, 9) + mpq_class(160, 27)) / 2 - 1;
    lhs.canonicalize();
    CHECK(lhs == mpq_class(77, 27));
}

TEST_CASE("ratio bounds") {
    CHECK(ram::ratio_at(3, 5, 81) == mpq_class(243, 116));
    CHECK(ram::ratio_at(3, 6, 243) == mpq_class(729, 359));
    CHECK_THROWS_AS(ram::ratio_at(3, 5, 2), DegreeTooSmall);
    CHECK_THROWS_AS(ram::ratio_at(3, 4, 100), LevelTooSmall);

    for (std::int64_t p : {3, 5, 7}) {
        mpq_class prev(-1);
        for (int n = 5; n <= 14; ++n) {
            mpz_class floor = ram::degree_floor(p, n);
            mpq_class at_floor = ram::ratio_at(p, n, floor);
            CHECK(at_floor >= p - 1);
            // larger admissible degrees keep the bound
            CHECK(ram::ratio_at(p, n, floor * 7 + 1) >= p - 1);
            // the deg -> oo limit decreases towards p-1
            mpq_class lim = ram::ratio_limit(p, n);
            CHECK(lim > p - 1);
            if (prev > 0) CHECK(lim < prev);
            prev = lim;
        }
        // far out the limit is within 1/p^6 of p-1
        mpq_class tail = ram::ratio_limit(p, 12) - (p - 1);
        mpz_class p6 = 1;
        for (int k = 0; k < 6; ++k) p6 *= p;
        CHECK(tail > 0);
        CHECK(tail < mpq_class(1) / p6);
    }
}

TEST_CASE("degree expression arithmetic stays exact") {
    DegreeExpr a{mpq_class(1, 3), mpq_class(2)};
    DegreeExpr b{mpq_class(1, 6), mpq_class(-1, 2)};
    CHECK((a + b) == DegreeExpr{mpq_class(1, 2), mpq_class(3, 2)});
    CHECK((a - b) == DegreeExpr{mpq_class(1, 6), mpq_class(5, 2)});
    CHECK(a.scaled(mpq_class(3)) == DegreeExpr{mpq_class(1), mpq_class(6)});
    CHECK(a.at(9) == mpq_class(5));
    CHECK(ram::deg_D(3, 5).str() == "16/9*deg");
    CHECK(ram::genus_closure(3, 5).str() == "77/27*deg+1");
}

TEST_SUITE_END();
