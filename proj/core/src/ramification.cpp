#include "gstower/ramification.hpp"

#include <sstream>

namespace gstower::ram {

namespace {

mpz_class pow_z(std::int64_t p, int e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
    return r;
}

// p^e for possibly negative e, as an exact rational
mpq_class pow_q(std::int64_t p, int e) {
    if (e >= 0) return mpq_class(pow_z(p, e));
    mpq_class r(1, pow_z(p, -e));
    r.canonicalize();
    return r;
}

} // namespace

std::string DegreeExpr::str() const {
    std::ostringstream os;
    os << q_str(a) << "*deg";
    if (b != 0) os << (b > 0 ? "+" : "") << q_str(b);
    return os.str();
}

std::string q_str(const mpq_class& v) {
    std::ostringstream os;
    os << v.get_num();
    if (v.get_den() != 1) os << "/" << v.get_den();
    return os.str();
}

std::vector<RamStep> ram_path(std::int64_t p, int n, Locus locus) {
    if (locus == Locus::Zero && n < 4)
        throw LevelTooSmall("the path over zero needs level n >= 4, got " + std::to_string(n));
    if (locus == Locus::KminusStarOrInfty && n < 2)
        throw LevelTooSmall("the path needs level n >= 2, got " + std::to_string(n));
    std::vector<RamStep> steps;
    for (int i = 1; i < n; ++i) {
        bool wild = locus == Locus::Zero ? (i >= 3) : true;
        if (wild)
            steps.push_back({p, 2 * (p - 1)});
        else
            steps.push_back({1, 0});
    }
    return steps;
}

mpz_class path_different(std::int64_t p, int n, Locus locus) {
    mpz_class acc = 0;
    for (const auto& step : ram_path(p, n, locus))
        acc = step.d + step.e * acc; // transitivity, bottom step applied last
    return acc;
}

mpz_class path_different_closed_form(std::int64_t p, int n, Locus locus) {
    if (locus == Locus::Zero) {
        if (n < 4) throw LevelTooSmall("closed form over zero needs n >= 4");
        return 2 * (pow_z(p, n - 3) - 1);
    }
    if (n < 2) throw LevelTooSmall("closed form needs n >= 2");
    return 2 * (pow_z(p, n - 1) - 1);
}

DegreeExpr deg_D(std::int64_t p, int n) {
    if (n < 4) throw LevelTooSmall("deg(D_n) needs n >= 4, got " + std::to_string(n));
    return {2 * (1 - pow_q(p, 3 - n)), 0};
}

DegreeExpr deg_L(std::int64_t p, int n) {
    if (n < 5) throw LevelTooSmall("deg(L_n) needs n >= 5, got " + std::to_string(n));
    return {2 * (p - pow_q(p, 2 - n)), 0};
}

DegreeExpr genus_closure(std::int64_t p, int n) {
    if (n <= 4)
        throw LevelTooSmall("the genus formula needs n > 4, got " + std::to_string(n));
    return {p - pow_q(p, 3 - n) - pow_q(p, 2 - n), 1};
}

bool hurwitz_check(std::int64_t p, int n) {
    DegreeExpr half_diff = (deg_D(p, n) + deg_L(p, n)).scaled(mpq_class(1, 2));
    DegreeExpr lhs = half_diff + DegreeExpr{-1, 1}; // - deg + 1
    return lhs == genus_closure(p, n);
}

mpq_class ratio_limit(std::int64_t p, int n) {
    if (n <= 4) throw LevelTooSmall("the ratio needs n > 4, got " + std::to_string(n));
    mpq_class num(static_cast<long>(p) * (p - 1));
    mpq_class den = p - pow_q(p, 3 - n) - pow_q(p, 2 - n);
    mpq_class r = num / den;
    r.canonicalize();
    return r;
}

mpz_class degree_floor(std::int64_t p, int n) { return pow_z(p, n - 1); }

mpq_class ratio_at(std::int64_t p, int n, const mpz_class& deg_value) {
    if (n <= 4) throw LevelTooSmall("the ratio needs n > 4, got " + std::to_string(n));
    if (deg_value < degree_floor(p, n))
        throw DegreeTooSmall("cover degree must be at least p^(n-1) = " +
                             degree_floor(p, n).get_str() + ", got " + deg_value.get_str());
    mpq_class num = mpq_class(static_cast<long>(p) * (p - 1)) * deg_value;
    mpq_class den = genus_closure(p, n).at(deg_value);
    mpq_class r = num / den;
    r.canonicalize();
    return r;
}

} // namespace gstower::ram
