#ifndef GSTOWER_RAMIFICATION_HPP
#define GSTOWER_RAMIFICATION_HPP

// Exact evaluation of the ramification, different, genus and point/genus
// ratio formulas of the closure tower.  The cover degree deg = [T~_n : T_1]
// is treated as a formal parameter; every coefficient is an exact rational.

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "gstower/errors.hpp"

namespace gstower::ram {

// a*deg + b with exact rational coefficients
struct DegreeExpr {
    mpq_class a;
    mpq_class b;

    DegreeExpr operator+(const DegreeExpr& o) const { return {a + o.a, b + o.b}; }
    DegreeExpr operator-(const DegreeExpr& o) const { return {a - o.a, b - o.b}; }
    DegreeExpr scaled(const mpq_class& s) const { return {a * s, b * s}; }
    bool operator==(const DegreeExpr& o) const { return a == o.a && b == o.b; }
    mpq_class at(const mpz_class& deg) const { return a * deg + b; }
    std::string str() const;
};

enum class Locus {
    Zero,              // the point x1 = 0
    KminusStarOrInfty, // x1 = a with a in K_-^* or the point at infinity
};

struct RamStep {
    std::int64_t e; // ramification index of level i+1 over level i
    std::int64_t d; // different exponent of that step
};

// Per-level steps along the distinguished path above the locus.  Over zero
// the first two steps are unramified and every step from level 3 on is wild
// with (e, d) = (p, 2(p-1)); over K_-^* or infinity every step is wild.
std::vector<RamStep> ram_path(std::int64_t p, int n, Locus locus);

// Cumulative different exponent along the path, accumulated step by step
// with d(top|bottom) = d(top|mid) + e(top|mid) * d(mid|bottom).
mpz_class path_different(std::int64_t p, int n, Locus locus);

// Closed forms 2(p^(n-3) - 1) over zero and 2(p^(n-1) - 1) elsewhere.
mpz_class path_different_closed_form(std::int64_t p, int n, Locus locus);

// deg(D_n) = 2(1 - p^(3-n)) * deg, n >= 4
DegreeExpr deg_D(std::int64_t p, int n);

// deg(L_n) = 2(p - p^(2-n)) * deg, n >= 5
DegreeExpr deg_L(std::int64_t p, int n);

// g = (p - p^(3-n) - p^(2-n)) * deg + 1, n >= 5
DegreeExpr genus_closure(std::int64_t p, int n);

// (deg_D + deg_L)/2 - deg + 1 == genus, as an identity in the formal deg
bool hurwitz_check(std::int64_t p, int n);

// (p^2 - p) / (p - p^(3-n) - p^(2-n)): the point/genus ratio as deg -> oo
mpq_class ratio_limit(std::int64_t p, int n);

// lower-bound ratio (p^2-p)*deg / ((p - p^(3-n) - p^(2-n))*deg + 1) at a
// concrete cover degree; DegreeTooSmall when deg < p^(n-1)
mpq_class ratio_at(std::int64_t p, int n, const mpz_class& deg_value);

// p^(n-1), the smallest admissible cover degree
mpz_class degree_floor(std::int64_t p, int n);

std::string q_str(const mpq_class& v);

} // namespace gstower::ram

#endif
