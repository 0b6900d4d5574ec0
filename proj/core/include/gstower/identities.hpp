#ifndef GSTOWER_IDENTITIES_HPP
#define GSTOWER_IDENTITIES_HPP

// Machine verification of the function-field identities behind the closure
// construction: the shift expansion of g, the three relation-lemma items,
// the linear-combination relations with their correction constants delta
// and eta, and the fiber-level consequence of the reduced generating set.
//
// Every check is two-sided: the symbolic side asserts a zero normal form in
// the appropriate relation system, the numeric side re-evaluates the same
// expression at sampled rational points of the model.  Each statement also
// carries a negative control (the identity perturbed by t), which must fail.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "gstower/field.hpp"
#include "gstower/points.hpp"
#include "gstower/symbolic.hpp"
#include "gstower/tower.hpp"

namespace gstower::checks {

using gf::FieldElement;

struct Report {
    std::string statement_id;
    std::string identity; // printable statement of what is checked
    std::int64_t instances = 0;
    std::int64_t numeric_points = 0;
    bool passed = false;
    bool negative_control_ok = false; // perturbed statement failed, as it must
    std::string counterexample;       // empty when passed
};

// g(x+a) - g(x) - a*h(x) + a^2/wp(x) = 0 for every a in K_-
Report verify_g_shift(std::int64_t p);

// the three relation-lemma items; item 3 runs over index length k = 3..kmax
std::vector<Report> verify_lemma_relations(std::int64_t p, int kmax = 3);

// Correction constant of c*u_b - b*u_c = (c-b)*u_0 + (b*c^2-b^2*c)/x1 + b*k:
// checks that the defect E is fixed by Frobenius (so it is F_p-valued on
// every branch of the full model) and that k = E/b is trace-zero, then
// returns k evaluated at the canonical split point.
FieldElement solve_delta(std::int64_t p, const FieldElement& b, const FieldElement& c);
Report delta_suite(std::int64_t p);

// Same one level higher: a*u_{c',beta} - beta*u_{c',a} = (a-beta)*u_{c',0}
// + (beta*a^2 - a*beta^2)/parent(c') + beta*k.
FieldElement solve_eta(std::int64_t p, const std::vector<FieldElement>& c_prime,
                       const FieldElement& alpha, const FieldElement& beta);
Report eta_suite(std::int64_t p);

// Fiber-level consequence of the reduced generating set: reconstructing the
// dependent u_c values from the reduced coordinates through the delta
// relation reproduces exactly the full-model fibers.
Report verify_reduced_generation(std::int64_t p);

// complete-splitting checks of the closure models (closure-full n = 3, and
// n = 4 when p = 3), plus the chain census
std::vector<Report> split_suite(std::int64_t p);

// Suite driver used by the command-line front end.  Known suite names:
// gshift, lemma, delta, eta, split, all.
std::vector<Report> run_suites(std::int64_t p, int kmax, const std::set<std::string>& suites);

bool all_passed(const std::vector<Report>& reports);

} // namespace gstower::checks

#endif
