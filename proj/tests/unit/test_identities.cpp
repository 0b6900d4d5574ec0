#include <doctest.h>

#include "gstower/identities.hpp"

using namespace gstower;

TEST_SUITE_BEGIN("identities");

TEST_CASE("g-shift expansion") {
    auto r3 = checks::verify_g_shift(3);
    CHECK(r3.passed);
    CHECK(r3.instances == 3);
    CHECK(r3.negative_control_ok);
    CHECK(r3.numeric_points >= 10);

    auto r5 = checks::verify_g_shift(5);
    CHECK(r5.passed);
    CHECK(r5.instances == 5);
    CHECK(r5.negative_control_ok);
}

TEST_CASE("relation lemma items") {
    auto reports = checks::verify_lemma_relations(3, 3);
    REQUIRE(reports.size() == 3);
    CHECK(reports[0].statement_id == "lemma-relation-1");
    CHECK(reports[0].passed);
    CHECK(reports[0].instances == 2);
    CHECK(reports[0].negative_control_ok);

    CHECK(reports[1].statement_id == "lemma-relation-2");
    CHECK(reports[1].passed);
    CHECK(reports[1].instances == 6);
    CHECK(reports[1].negative_control_ok);

    CHECK(reports[2].statement_id == "lemma-relation-3");
    CHECK(reports[2].passed);
    CHECK(reports[2].instances == 27);
    CHECK(reports[2].negative_control_ok);
    for (const auto& r : reports) CHECK(r.numeric_points >= 10 * r.instances);
}

TEST_CASE("delta correction") {
    auto F9 = gf::make_field(3, 2);
    auto t = F9->parse("t");
    auto t2 = F9->parse("2t");
    auto kappa = checks::solve_delta(3, t, t2);
    CHECK(gf::in_trace_zero(kappa));
    CHECK_THROWS_AS(checks::solve_delta(3, t, t), Error);
    CHECK_THROWS_AS(checks::solve_delta(3, F9->zero(), t), Error);
    CHECK_THROWS_AS(checks::solve_delta(3, F9->one(), t2), Error);

    auto suite = checks::delta_suite(3);
    CHECK(suite.passed);
    CHECK(suite.instances == 2); // ordered pairs of distinct nonzero K_- elements
    CHECK(suite.negative_control_ok);
}

TEST_CASE("eta correction") {
    auto F9 = gf::make_field(3, 2);
    auto t = F9->parse("t");
    auto t2 = F9->parse("2t");
    CHECK(gf::in_trace_zero(checks::solve_eta(3, {t}, t, t2)));
    CHECK(gf::in_trace_zero(checks::solve_eta(3, {F9->zero()}, t2, t)));
    // length-2 prefix
    CHECK(gf::in_trace_zero(checks::solve_eta(3, {t, F9->zero()}, t, t2)));
    CHECK_THROWS_AS(checks::solve_eta(3, {t}, t, t), Error);
    CHECK_THROWS_AS(checks::solve_eta(3, {t, t, t}, t, t2), Error);

    auto suite = checks::eta_suite(3);
    CHECK(suite.passed);
    CHECK(suite.instances == 6); // 3 prefixes x 2 ordered pairs
    CHECK(suite.negative_control_ok);

    auto F25 = gf::make_field(5, 2);
    CHECK(gf::in_trace_zero(
        checks::solve_eta(5, {F25->parse("t")}, F25->parse("t"), F25->parse("2t"))));
}

TEST_CASE("reduced generation at the fiber level") {
    auto r3 = checks::verify_reduced_generation(3);
    CHECK(r3.passed);
    CHECK(r3.negative_control_ok);
    CHECK(r3.instances == 486); // one check per dependent value per full point

    auto r5 = checks::verify_reduced_generation(5);
    CHECK(r5.passed);
    CHECK(r5.negative_control_ok);
}

TEST_CASE("split suite") {
    auto reports = checks::split_suite(3);
    REQUIRE(reports.size() == 3); // n=3, n=4, chain census
    for (const auto& r : reports) CHECK(r.passed);
}

TEST_CASE("suite driver composes and filters") {
    auto only_gshift = checks::run_suites(3, 3, {"gshift"});
    REQUIRE(only_gshift.size() == 1);
    CHECK(only_gshift[0].statement_id == "g-shift");
    CHECK(checks::all_passed(only_gshift));

    auto all = checks::run_suites(3, 3, {"all"});
    CHECK(all.size() >= 8);
    CHECK(checks::all_passed(all));
}

TEST_SUITE_END();
