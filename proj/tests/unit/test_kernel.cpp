#include <doctest.h>

#include <random>

#include "gstower/symbolic.hpp"

using namespace gstower;
using gf::FieldElement;
using sym::RelationSystem;
using sym::SymbolicElement;
using tower::GenId;

namespace {

// random polynomial with generator exponents up to 2p-1, built with the raw
// term-level product so no reduction happens on the way
sym::MPoly random_raw(const RelationSystem& rs, std::mt19937& rng) {
    auto ctx = rs.fctx();
    const int p = static_cast<int>(ctx->p());
    sym::MPoly acc = rs.zero().num;
    int terms = 1 + static_cast<int>(rng() % 3);
    for (int t = 0; t < terms; ++t) {
        std::int64_t ci = 1 + static_cast<std::int64_t>(rng() % (ctx->q() - 1));
        sym::MPoly mono = rs.constant(ctx->from_index(ci)).num;
        mono = mono * rs.x1(static_cast<int>(rng() % 3)).num;
        for (int j = 0; j < rs.gen_count(); ++j) {
            int e = static_cast<int>(rng() % static_cast<unsigned>(2 * p));
            for (int rep = 0; rep < e; ++rep) mono = mono * rs.gen(j).num;
        }
        acc = acc + mono;
    }
    return acc;
}

} // namespace

TEST_SUITE_BEGIN("kernel");

TEST_CASE("chain relations take the expected shape") {
    auto spec = tower::gs_tower(3, 3);
    auto rs = RelationSystem::build(spec);
    REQUIRE(rs->gen_count() == 2);

    auto x2 = rs->generator(GenId::x(2));
    auto x3 = rs->generator(GenId::x(3));
    CHECK(rs->equals(rs->wp_apply(x2), rs->g_apply(rs->x1())));
    CHECK(rs->equals(rs->wp_apply(x3), rs->g_apply(x2)));
    CHECK(rs->equals(rs->wp_apply(x2), rs->parse("x1^4/(x1^3+x1)")));

    // single-generator system has no relations
    auto line = RelationSystem::build(tower::gs_tower(3, 1));
    CHECK(line->gen_count() == 0);
}

TEST_CASE("closure relations reference the shifted parent") {
    auto F9 = gf::make_field(3, 2);
    auto t = F9->gen();
    auto spec = tower::closure_tower(3, 3, t, false);
    auto rs = RelationSystem::build(spec);
    auto ut = rs->generator(GenId::u({t}));
    CHECK(rs->equals(rs->wp_apply(ut), rs->g_apply(rs->parse("x2+t"))));
}

TEST_CASE("normalize applies the defining relation once") {
    auto rs = RelationSystem::build(tower::gs_tower(3, 2));
    auto x2 = rs->generator(GenId::x(2));
    // x2^3 = g(x1) - x2
    CHECK(rs->equals(rs->pow(x2, 3), rs->sub(rs->g_apply(rs->x1()), x2)));
    // wp(x2)*wp(x1) - x1^4 = 0
    auto expr = rs->sub(rs->mul(rs->wp_apply(x2), rs->wp_apply(rs->x1())), rs->pow(rs->x1(), 4));
    CHECK(rs->is_zero(expr));
}

TEST_CASE("normalize is idempotent") {
    auto rs = RelationSystem::build(tower::gs_tower(3, 3));
    std::mt19937 rng(0xA11CE);
    for (int it = 0; it < 25; ++it) {
        sym::MPoly n = random_raw(*rs, rng);
        sym::MPoly d = random_raw(*rs, rng);
        SymbolicElement e;
        try {
            e = rs->make_fraction(n, d);
        } catch (const ZeroDivisor&) {
            continue;
        }
        SymbolicElement again = rs->normalize(e);
        CHECK(again.num == e.num);
        CHECK(again.den == e.den);
    }
}

TEST_CASE("ring operations") {
    auto rs = RelationSystem::build(tower::gs_tower(3, 2));
    auto x2 = rs->generator(GenId::x(2));
    auto a = rs->add(rs->mul(x2, rs->x1()), rs->constant(rs->fctx()->gen()));
    CHECK(rs->equals(rs->add(a, rs->zero()), a));
    // (a/b) * b = a with a polynomial b
    auto b = rs->parse("x2+t");
    CHECK(rs->equals(rs->mul(rs->divide_simple(a, b), b), a));
    // (x2+t)(x2-t) = x2^2+1 over GF(9)
    CHECK(rs->equals(rs->mul(rs->parse("x2+t"), rs->parse("x2-t")), rs->parse("x2^2+1")));
}

TEST_CASE("divide_simple guards") {
    auto rs = RelationSystem::build(tower::gs_tower(3, 2));
    auto t = rs->fctx()->gen();
    auto a2 = rs->constant(t * t);
    // dividing by x1 and multiplying back returns the constant
    CHECK(rs->equals(rs->mul(rs->divide_simple(a2, rs->x1()), rs->x1()), a2));
    // wp(x2) has nonzero normal form, division succeeds
    CHECK_NOTHROW(rs->divide_simple(a2, rs->wp_apply(rs->generator(GenId::x(2)))));
    // the defining relation reduces to zero: x2^3 + x2 - g(x1)
    auto x2 = rs->generator(GenId::x(2));
    auto rel = rs->sub(rs->add(rs->pow(x2, 3), x2), rs->g_apply(rs->x1()));
    CHECK(rs->is_zero(rel));
    CHECK_THROWS_AS(rs->divide_simple(a2, rel), ZeroDivisor);
}

TEST_CASE("wp_apply is additive and GF(p)-linear") {
    auto rs = RelationSystem::build(tower::gs_tower(3, 3));
    auto ctx = rs->fctx();
    std::mt19937 rng(0xB0B);
    for (int it = 0; it < 10; ++it) {
        SymbolicElement a = rs->make_fraction(random_raw(*rs, rng), rs->one().den);
        SymbolicElement b = rs->make_fraction(random_raw(*rs, rng), rs->one().den);
        CHECK(rs->equals(rs->wp_apply(rs->add(a, b)),
                         rs->add(rs->wp_apply(a), rs->wp_apply(b))));
        for (std::int64_t c = 0; c < ctx->p(); ++c) {
            auto cc = rs->constant(ctx->from_int(c));
            CHECK(rs->equals(rs->wp_apply(rs->mul(cc, a)), rs->mul(cc, rs->wp_apply(a))));
        }
    }
    // kernel elements map to zero
    for (const auto& alpha : gf::trace_zero_set(gf::make_field(3, 2)).elements)
        CHECK(rs->is_zero(rs->wp_apply(rs->constant(alpha))));
}

TEST_CASE("h agrees with its x-scaled form") {
    auto rs = RelationSystem::build(tower::gs_tower(3, 1));
    auto h = rs->h_apply(rs->x1());
    auto alt = rs->parse("(x1^3-x1)/(x1^3+x1)");
    CHECK(rs->equals(h, alt));
}

TEST_CASE("equality is a congruence for the rewrite") {
    auto rs = RelationSystem::build(tower::gs_tower(3, 2));
    auto x2 = rs->generator(GenId::x(2));
    auto a = rs->pow(x2, 3);
    auto a_rewritten = rs->sub(rs->g_apply(rs->x1()), x2);
    REQUIRE(rs->equals(a, a_rewritten));
    std::mt19937 rng(0xC0DE);
    for (int it = 0; it < 10; ++it) {
        SymbolicElement e = rs->make_fraction(random_raw(*rs, rng), rs->one().den);
        CHECK(rs->equals(rs->mul(a, e), rs->mul(a_rewritten, e)));
        CHECK(rs->equals(rs->add(a, e), rs->add(a_rewritten, e)));
    }
}

TEST_CASE("reduced and raw forms agree under evaluation") {
    auto spec = tower::gs_tower(3, 3);
    auto rs = RelationSystem::build(spec);
    auto ctx = spec.field();

    // a split point of the chain: x1=1, x2 and x3 solved along the relations
    FieldElement x1v = ctx->one();
    FieldElement x2v = gf::artin_schreier_solve(gf::eval_g(x1v))[0];
    FieldElement x3v = gf::artin_schreier_solve(gf::eval_g(x2v))[0];
    std::vector<FieldElement> gv = {x2v, x3v};

    std::mt19937 rng(0xFEED);
    for (int it = 0; it < 20; ++it) {
        sym::MPoly raw = random_raw(*rs, rng);
        FieldElement direct = raw.eval(x1v, gv);
        SymbolicElement red = rs->make_fraction(raw, rs->one().den);
        FieldElement via_reduced = rs->eval(red, x1v, gv);
        CHECK(direct == via_reduced);
    }
}

TEST_CASE("rewrites terminate within the step budget") {
    auto rs = RelationSystem::build(tower::gs_tower(3, 3));
    std::mt19937 rng(0xDEAD);
    rs->reset_reduce_steps();
    sym::MPoly raw = random_raw(*rs, rng);
    (void)rs->make_fraction(raw, rs->one().den);
    auto steps = rs->reduce_steps();
    CHECK(steps > 0);
    CHECK(steps < 10000);
}

TEST_CASE("expression parser round-trips") {
    auto rs = RelationSystem::build(tower::gs_tower(3, 2));
    CHECK(rs->equals(rs->parse("wp(x2)"), rs->g_apply(rs->x1())));
    CHECK(rs->equals(rs->parse("g(x1)"), rs->parse("x1^4/wp(x1)")));
    CHECK(rs->is_zero(rs->parse("(x2+t)*(x2-t) - x2^2 - 1")));

    std::mt19937 rng(0x7007);
    for (int it = 0; it < 10; ++it) {
        SymbolicElement e = rs->make_fraction(random_raw(*rs, rng), rs->one().den);
        SymbolicElement back = rs->parse(e.str());
        CHECK(rs->equals(e, back));
    }
    CHECK_THROWS_AS(rs->parse("x2 +"), gstower::ParseError);
    CHECK_THROWS_AS(rs->parse("q(x1)"), gstower::ParseError);

    auto F9 = gf::make_field(3, 2);
    auto closure = RelationSystem::build(tower::closure_tower(3, 3, F9->gen(), false));
    auto e = closure->parse("u[t] - u[0] + t^2/x1");
    CHECK(closure->equals(e, closure->parse("u[t]-u[0]+2/x1")));
}

TEST_SUITE_END();
