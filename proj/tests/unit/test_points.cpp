#include <doctest.h>

#include <algorithm>

#include "gstower/points.hpp"

using namespace gstower;
using tower::GenId;

TEST_SUITE_BEGIN("points");

TEST_CASE("next coordinate") {
    auto F9 = gf::make_field(3, 2);
    auto roots = points::next_coordinate(F9->one());
    REQUIRE(roots.size() == 3);
    CHECK(roots[0] == F9->parse("1"));
    CHECK(roots[1] == F9->parse("1+t"));
    CHECK(roots[2] == F9->parse("1+2t"));
    CHECK_THROWS_AS(points::next_coordinate(F9->gen()), PoleAtInput);
    auto roots2 = points::next_coordinate(F9->parse("1+t"));
    REQUIRE(roots2.size() == 3);
    CHECK(roots2[0] == F9->parse("2"));
    CHECK(roots2[1] == F9->parse("2+t"));
    CHECK(roots2[2] == F9->parse("2+2t"));
}

TEST_CASE("fibers of the chain") {
    auto F9 = gf::make_field(3, 2);
    auto spec = tower::gs_tower(3, 2);
    auto rep = points::enumerate_fiber(spec, F9->one(), true);
    CHECK(rep.count == 3);
    CHECK(rep.split);
    CHECK(rep.all_outside_kminus);
    REQUIRE(rep.points.size() == 3);
    // every point satisfies the relation exactly
    for (const auto& pt : rep.points) {
        auto x1v = pt.value_of(spec, GenId::x(1));
        auto x2v = pt.value_of(spec, GenId::x(2));
        CHECK(gf::wp(x2v) == gf::eval_g(x1v));
    }
    auto dead = points::enumerate_fiber(spec, F9->gen(), true);
    CHECK(dead.count == 0);
    CHECK_FALSE(dead.split);
}

TEST_CASE("chain census values") {
    CHECK(points::count_split_points(tower::gs_tower(3, 2)).total == 18);
    CHECK(points::count_split_points(tower::gs_tower(3, 3)).total == 54);
    // every base outside K_- carries p^(n-1) points
    for (int n = 2; n <= 5; ++n) {
        auto census = points::count_split_points(tower::gs_tower(3, n));
        std::uint64_t expect = 1;
        for (int i = 1; i < n; ++i) expect *= 3;
        CHECK(census.rows.size() == 6);
        CHECK(census.all_split);
        for (const auto& row : census.rows) {
            CHECK(row.fiber_size == expect);
            CHECK(row.values_outside_kminus);
        }
        CHECK(census.total == 6 * expect);
    }
}

TEST_CASE("bases inside K_- carry no affine points") {
    auto F9 = gf::make_field(3, 2);
    for (const auto& spec :
         {tower::gs_tower(3, 3), tower::closure_tower(3, 3, F9->gen(), false)}) {
        for (const auto& alpha : gf::trace_zero_set(F9).elements) {
            auto rep = points::enumerate_fiber(spec, alpha, false);
            CHECK(rep.count == 0);
            CHECK_FALSE(rep.split);
        }
    }
}

TEST_CASE("x2 trace equals the base norm/trace ratio at split points") {
    auto F9 = gf::make_field(3, 2);
    auto spec = tower::gs_tower(3, 2);
    for (std::int64_t i = 0; i < 9; ++i) {
        auto base = F9->from_index(i);
        if (gf::in_trace_zero(base)) continue;
        auto rep = points::enumerate_fiber(spec, base, true);
        for (const auto& pt : rep.points) {
            auto x2v = pt.value_of(spec, GenId::x(2));
            CHECK(gf::wp(x2v) == gf::eval_g(base));
            CHECK_FALSE(gf::wp(x2v).is_zero());
        }
    }
}

TEST_CASE("closure censuses") {
    auto F9 = gf::make_field(3, 2);
    auto red = tower::closure_tower(3, 3, F9->gen(), true);
    auto rep = points::enumerate_fiber(red, F9->one(), true);
    CHECK(rep.count == 27);
    CHECK(rep.split);
    CHECK(rep.all_outside_kminus);
    auto census = points::count_split_points(red);
    CHECK(census.total == 162);
    for (const auto& row : census.rows) CHECK(row.fiber_size == 27);

    auto F25 = gf::make_field(5, 2);
    auto red5 = tower::closure_tower(5, 3, F25->gen(), true);
    auto census5 = points::count_split_points(red5);
    CHECK(census5.total == 2500);
    for (const auto& row : census5.rows) CHECK(row.fiber_size == 125);
}

TEST_CASE("parallel census matches the serial one") {
    auto F9 = gf::make_field(3, 2);
    auto spec = tower::closure_tower(3, 3, F9->gen(), false);
    auto serial = points::count_split_points(spec, false);
    auto parallel = points::count_split_points(spec, true);
    CHECK(serial.total == parallel.total);
    REQUIRE(serial.rows.size() == parallel.rows.size());
    for (size_t i = 0; i < serial.rows.size(); ++i) {
        CHECK(serial.rows[i].base == parallel.rows[i].base);
        CHECK(serial.rows[i].fiber_size == parallel.rows[i].fiber_size);
    }
}

TEST_CASE("degrees from fibers") {
    auto F9 = gf::make_field(3, 2);
    auto d1 = points::degree_via_fiber(tower::gs_tower(3, 4));
    CHECK(d1.exact);
    CHECK(d1.value == 27);
    auto d2 = points::degree_via_fiber(tower::closure_tower(3, 3, F9->gen(), true));
    CHECK(d2.exact);
    CHECK(d2.value == 27);
    auto d3 = points::degree_via_fiber(tower::closure_tower(3, 3, F9->gen(), false));
    CHECK_FALSE(d3.exact); // dependent generators inflate the naive count
    CHECK(d3.value == 81);
}

TEST_CASE("split values of the closure models") {
    auto F9 = gf::make_field(3, 2);
    auto sv3 = points::verify_split_values(tower::closure_tower(3, 3, F9->gen(), false));
    CHECK(sv3.passed);
    CHECK(sv3.points == 6 * 81);
    auto sv4 = points::verify_split_values(tower::closure_tower(3, 4, F9->gen(), false));
    CHECK(sv4.passed);
    auto F25 = gf::make_field(5, 2);
    auto sv5 = points::verify_split_values(tower::closure_tower(5, 3, F25->gen(), false));
    CHECK(sv5.passed);
    CHECK_THROWS_AS(points::verify_split_values(tower::gs_tower(3, 3)), Error);
}

TEST_CASE("enumeration is deterministic and canonically ordered") {
    auto F9 = gf::make_field(3, 2);
    auto spec = tower::closure_tower(3, 3, F9->gen(), true);
    auto a = points::enumerate_fiber(spec, F9->one(), true);
    auto b = points::enumerate_fiber(spec, F9->one(), true);
    REQUIRE(a.points.size() == b.points.size());
    std::vector<std::vector<std::int64_t>> keys;
    for (size_t i = 0; i < a.points.size(); ++i) {
        REQUIRE(a.points[i].values.size() == b.points[i].values.size());
        std::vector<std::int64_t> key;
        for (size_t j = 0; j < a.points[i].values.size(); ++j) {
            CHECK(a.points[i].values[j] == b.points[i].values[j]);
            key.push_back(a.points[i].values[j].index());
        }
        keys.push_back(std::move(key));
    }
    // depth-first emission with canonically ordered roots is sorted
    CHECK(std::is_sorted(keys.begin(), keys.end()));
}

TEST_SUITE_END();
