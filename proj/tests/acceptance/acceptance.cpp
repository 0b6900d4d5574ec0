// Acceptance suite: exact small-case enumeration plus exact-arithmetic
// formula identities, one criterion per numbered block.  Prints one line per
// criterion and exits with the number of failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "cli.hpp"
#include "gstower/field.hpp"
#include "gstower/identities.hpp"
#include "gstower/points.hpp"
#include "gstower/ramification.hpp"
#include "gstower/tower.hpp"

using namespace gstower;
using Clock = std::chrono::steady_clock;

namespace {

struct Criterion {
    std::string name;
    double budget_s;
    std::function<bool(std::string&)> body;
};

bool run_criterion(int number, const Criterion& c) {
    std::string detail;
    bool ok = false;
    auto t0 = Clock::now();
    try {
        ok = c.body(detail);
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    double elapsed = std::chrono::duration<double>(Clock::now() - t0).count();
    if (elapsed > c.budget_s) {
        ok = false;
        detail += (detail.empty() ? "" : "; ");
        detail += "time budget exceeded";
    }
    std::printf("[%s] criterion %d: %s (%.2f s%s%s)\n", ok ? "PASS" : "FAIL", number,
                c.name.c_str(), elapsed, detail.empty() ? "" : " - ", detail.c_str());
    std::fflush(stdout);
    return ok;
}

mpz_class pow_z(std::int64_t p, int e) {
    mpz_class r = 1;
    for (int i = 0; i < e; ++i) r *= p;
    return r;
}

} // namespace

int main() {
    std::vector<Criterion> criteria;

    // 1. norm/trace census over GF(p^2) minus K_-
    criteria.push_back({"norm/trace identity census, p in {3,5,7}", 1.0, [](std::string& d) {
        for (std::int64_t p : {3, 5, 7}) {
            auto rep = gf::check_norm_trace_identity(gf::make_field(p, 2));
            if (!rep.passed || rep.checked != p * p - p) {
                d = "failed at p=" + std::to_string(p);
                return false;
            }
        }
        return true;
    }});

    // 2. complete splitting: chain fibers n <= 6 and closure-full n in {3,4}
    criteria.push_back({"complete splitting, chain n<=6 and closure-full n in {3,4} at p=3",
                        30.0, [](std::string& d) {
        for (int n = 1; n <= 6; ++n) {
            auto census = points::count_split_points(tower::gs_tower(3, n));
            std::uint64_t fiber = 1;
            for (int i = 1; i < n; ++i) fiber *= 3;
            if (census.rows.size() != 6 || !census.all_split ||
                census.total != 6 * fiber) {
                d = "chain census wrong at n=" + std::to_string(n);
                return false;
            }
            for (const auto& row : census.rows)
                if (row.fiber_size != fiber || !row.values_outside_kminus) {
                    d = "fiber size wrong at n=" + std::to_string(n);
                    return false;
                }
        }
        auto F9 = gf::make_field(3, 2);
        for (int n : {3, 4}) {
            auto sv = points::verify_split_values(tower::closure_tower(3, n, F9->gen(), false));
            if (!sv.passed) {
                d = "split values failed at n=" + std::to_string(n) + ": " + sv.counterexample;
                return false;
            }
        }
        return true;
    }});

    // 3. closure degree at n=3 through reduced fibers
    criteria.push_back({"closure degree via reduced fibers, p=3 and p=5", 11.0,
                        [](std::string& d) {
        auto t0 = Clock::now();
        auto F9 = gf::make_field(3, 2);
        auto red3 = tower::closure_tower(3, 3, F9->gen(), true);
        auto c3 = points::count_split_points(red3);
        if (c3.total != 162) {
            d = "p=3 total " + std::to_string(c3.total);
            return false;
        }
        for (const auto& row : c3.rows)
            if (row.fiber_size != 27) {
                d = "p=3 fiber " + std::to_string(row.fiber_size);
                return false;
            }
        double p3_time = std::chrono::duration<double>(Clock::now() - t0).count();
        if (p3_time > 1.0) {
            d = "p=3 run exceeded 1 s";
            return false;
        }
        auto F25 = gf::make_field(5, 2);
        auto red5 = tower::closure_tower(5, 3, F25->gen(), true);
        auto c5 = points::count_split_points(red5);
        if (c5.total != 2500) {
            d = "p=5 total " + std::to_string(c5.total);
            return false;
        }
        for (const auto& row : c5.rows)
            if (row.fiber_size != 125) {
                d = "p=5 fiber " + std::to_string(row.fiber_size);
                return false;
            }
        return true;
    }});

    // 4. identity suite at p=3: symbolic + sampled numeric + negative controls
    criteria.push_back({"identity suite at p=3 (g-shift, lemma 1-3, delta, eta, "
                        "reduced generation)", 120.0, [](std::string& d) {
        auto reports = checks::run_suites(3, 3, {"gshift", "lemma", "delta", "eta"});
        bool found[6] = {false, false, false, false, false, false};
        for (const auto& r : reports) {
            if (!r.passed || !r.negative_control_ok) {
                d = r.statement_id + " failed" +
                    (r.counterexample.empty() ? "" : ": " + r.counterexample);
                return false;
            }
            if (r.statement_id == "g-shift") found[0] = true;
            if (r.statement_id == "lemma-relation-1") found[1] = true;
            if (r.statement_id == "lemma-relation-2") found[2] = true;
            if (r.statement_id == "lemma-relation-3") found[3] = true;
            if (r.statement_id == "delta") found[4] = true;
            if (r.statement_id == "eta") found[5] = true;
            if (r.statement_id == "lemma-relation-3" && r.instances != 27) {
                d = "item 3 instance count " + std::to_string(r.instances);
                return false;
            }
            if (r.numeric_points < 10) {
                d = r.statement_id + " sampled fewer than 10 points";
                return false;
            }
        }
        for (bool f : found)
            if (!f) {
                d = "a statement is missing from the suite";
                return false;
            }
        auto rg = checks::verify_reduced_generation(3);
        if (!rg.passed || !rg.negative_control_ok) {
            d = "reduced generation failed";
            return false;
        }
        return true;
    }});

    // 5. ramification arithmetic: 52 and the closed forms vs transitivity
    criteria.push_back({"path different exponents and closed forms, p in {3,5,7}, n<=20",
                        1.0, [](std::string& d) {
        using ram::Locus;
        if (ram::path_different(3, 4, Locus::KminusStarOrInfty) != 52) {
            d = "path_different(3,4,other) != 52";
            return false;
        }
        for (std::int64_t p : {3, 5, 7}) {
            for (int n = 4; n <= 20; ++n) {
                // grouped form (1+...+p^(n-4))*2(p-1) + 2p^(n-3)(p^2-1)
                mpz_class geom = 0;
                for (int k = 0; k <= n - 4; ++k) geom += pow_z(p, k);
                mpz_class grouped = geom * 2 * (p - 1) + 2 * pow_z(p, n - 3) * (p * p - 1);
                if (ram::path_different(p, n, Locus::KminusStarOrInfty) != grouped) {
                    d = "grouped form mismatch";
                    return false;
                }
                if (ram::path_different(p, n, Locus::Zero) !=
                    2 * (pow_z(p, n - 3) - 1)) {
                    d = "zero-locus closed form mismatch";
                    return false;
                }
            }
            for (int n = 2; n <= 20; ++n)
                if (ram::path_different(p, n, Locus::KminusStarOrInfty) !=
                    2 * (pow_z(p, n - 1) - 1)) {
                    d = "other-locus closed form mismatch";
                    return false;
                }
        }
        return true;
    }});

    // 6. hurwitz consistency as an identity in the formal degree
    criteria.push_back({"hurwitz consistency, p in {3,5,7}, n = 5..12", 1.0,
                        [](std::string& d) {
        for (std::int64_t p : {3, 5, 7})
            for (int n = 5; n <= 12; ++n)
                if (!ram::hurwitz_check(p, n)) {
                    d = "failed at p=" + std::to_string(p) + ", n=" + std::to_string(n);
                    return false;
                }
        return true;
    }});

    // 7. optimality squeeze: ratio >= p-1, decreasing, limit p-1 exactly
    criteria.push_back({"point/genus ratio squeeze and its limit", 1.0, [](std::string& d) {
        if (ram::ratio_at(3, 5, 81) != mpq_class(243, 116) ||
            ram::ratio_at(3, 6, 243) != mpq_class(729, 359)) {
            d = "spot ratios wrong";
            return false;
        }
        for (std::int64_t p : {3, 5, 7}) {
            mpq_class prev_at_floor(-1), prev_limit(-1);
            for (int n = 5; n <= 12; ++n) {
                mpz_class floor = ram::degree_floor(p, n);
                mpq_class at_floor = ram::ratio_at(p, n, floor);
                if (at_floor < p - 1) {
                    d = "ratio below p-1 at the floor degree";
                    return false;
                }
                for (int extra = 1; extra <= 3; ++extra)
                    if (ram::ratio_at(p, n, floor + extra * 97) < p - 1) {
                        d = "ratio below p-1 above the floor";
                        return false;
                    }
                if (prev_at_floor > 0 && at_floor >= prev_at_floor) {
                    d = "floor ratios are not decreasing";
                    return false;
                }
                prev_at_floor = at_floor;
                mpq_class lim = ram::ratio_limit(p, n);
                if (lim <= p - 1 || (prev_limit > 0 && lim >= prev_limit)) {
                    d = "symbolic limits are not squeezing";
                    return false;
                }
                prev_limit = lim;
            }
            // dropping the vanishing terms leaves (p^2-p)/p = p-1 exactly
            mpq_class exact_limit = mpq_class(static_cast<long>(p) * (p - 1)) /
                                    mpq_class(static_cast<long>(p));
            exact_limit.canonicalize();
            if (exact_limit != p - 1) {
                d = "algebraic limit differs from p-1";
                return false;
            }
            // and the finite values approach it: within 2/p^7 by n = 12
            mpq_class tail = ram::ratio_limit(p, 12) - (p - 1);
            if (tail <= 0 || tail > mpq_class(2) / pow_z(p, 7)) {
                d = "limit tail too large";
                return false;
            }
        }
        return true;
    }});

    // 8. byte-identical census output across runs
    criteria.push_back({"deterministic census output", 60.0, [](std::string& d) {
        std::vector<std::string> args = {"count", "--p",     "3",      "--n", "4",
                                         "--tower", "closure", "--model", "full"};
        std::ostringstream out1, err1, out2, err2;
        int c1 = cli::run(args, out1, err1);
        int c2 = cli::run(args, out2, err2);
        if (c1 != 0 || c2 != 0) {
            d = "count exited nonzero";
            return false;
        }
        if (out1.str() != out2.str()) {
            d = "outputs differ between runs";
            return false;
        }
        if (out1.str().find("base,fiber_size,split,values_outside_Kminus\n") != 0) {
            d = "missing CSV header";
            return false;
        }
        return true;
    }});

    int failures = 0;
    for (size_t i = 0; i < criteria.size(); ++i)
        if (!run_criterion(static_cast<int>(i) + 1, criteria[i])) ++failures;

    if (failures == 0)
        std::printf("all %zu acceptance criteria passed\n", criteria.size());
    else
        std::printf("%d acceptance criteria FAILED\n", failures);
    return failures;
}
