#ifndef GSTOWER_FIELD_HPP
#define GSTOWER_FIELD_HPP

// Exact arithmetic in GF(p) and small extensions GF(p^k), polynomial-basis
// representation.  Includes the trace/norm maps to the prime field, the
// trace-zero set K_- of GF(p^2), and a solver for y^p + y = w.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gstower/errors.hpp"

namespace gstower::gf {

class FieldCtx;
using FieldCtxPtr = std::shared_ptr<const FieldCtx>;

inline constexpr int kMaxExtensionDegree = 8;

// An element of GF(p^k), coefficients of 1, t, ..., t^(k-1) reduced mod p.
// Elements keep a pointer to their context; contexts are interned and live
// for the whole process, so the pointer never dangles.
class FieldElement {
  public:
    FieldElement() = default;

    const FieldCtx* ctx() const { return ctx_; }
    bool valid() const { return ctx_ != nullptr; }

    int coeff(int i) const { return c_[static_cast<size_t>(i)]; }
    std::vector<int> coeffs() const;

    bool is_zero() const;
    std::int64_t index() const; // sum c_i * p^i, the canonical ordering key

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const; // DivisionByZero
    FieldElement operator-() const;
    FieldElement inv() const;                 // DivisionByZero on zero
    FieldElement pow(std::int64_t e) const;   // e >= 0
    FieldElement frobenius() const;           // x -> x^p

    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }
    // canonical order: by index
    bool operator<(const FieldElement& o) const;

    std::string str() const;

  private:
    friend class FieldCtx;
    const FieldCtx* ctx_ = nullptr;
    std::array<std::int16_t, kMaxExtensionDegree> c_{};
};

// Immutable description of GF(p^k) = GF(p)[t]/(modulus).  Obtained from
// make_field(), which interns contexts per (p, k) so equality of fields is
// pointer equality.
class FieldCtx {
  public:
    std::int64_t p() const { return p_; }
    int k() const { return k_; }
    std::int64_t q() const { return q_; }

    // monic modulus, coefficient i of t^i, size k+1
    const std::vector<std::int16_t>& modulus() const { return modulus_; }
    std::string modulus_str() const;

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement gen() const;                       // t (k >= 2)
    FieldElement from_int(std::int64_t a) const;    // a mod p
    FieldElement from_coeffs(const std::vector<std::int64_t>& c) const;
    FieldElement from_index(std::int64_t idx) const;
    FieldElement parse(const std::string& s) const; // "1+2t", "t^2", "0", ...

    // prime subfield context (same p, k = 1)
    FieldCtxPtr prime_field() const;
    // constant embedding GF(p) -> this field
    FieldElement embed(const FieldElement& prime_elt) const;

    bool has_tables() const { return has_tables_; }

  private:
    friend FieldCtxPtr make_field(std::int64_t p, int k);
    friend class FieldElement;

    FieldCtx() = default;
    void build_tables();

    std::int64_t p_ = 0;
    int k_ = 0;
    std::int64_t q_ = 0;
    std::vector<std::int16_t> modulus_;

    bool has_tables_ = false;
    std::vector<std::int32_t> mul_tbl_;  // q*q
    std::vector<std::int32_t> inv_tbl_;  // q (0 slot unused)
    std::vector<std::int32_t> frob_tbl_; // q
};

// Context factory.  The modulus is the lexicographically smallest monic
// irreducible of degree k, coefficients compared from t^(k-1) down to the
// constant term, found by exhaustive search.
FieldCtxPtr make_field(std::int64_t p, int k);

// trace x^p + x and norm x^(p+1), both landing in the prime field (k == 2)
std::pair<FieldElement, FieldElement> trace_norm(const FieldElement& x);

// K_- = { a in GF(p^2) : a^p = -a }, zero first then by canonical order
struct TraceZeroSet {
    std::vector<FieldElement> elements;
    bool contains(const FieldElement& x) const;
};
TraceZeroSet trace_zero_set(const FieldCtxPtr& ctx);
bool in_trace_zero(const FieldElement& x); // x^p == -x

// all y with y^p + y = w, sorted canonically; empty or one coset of the
// kernel of y -> y^p + y
std::vector<FieldElement> artin_schreier_solve(const FieldElement& w);

// y^p + y
FieldElement wp(const FieldElement& x);
// x^(p+1) / (x^p + x); PoleAtInput when x^p + x = 0
FieldElement eval_g(const FieldElement& x);
// (x^(p-1) - 1) / (x^(p-1) + 1); PoleAtInput when x^(p-1) = -1
FieldElement eval_h(const FieldElement& x);

enum class NamedMap { Wp, G, H };
FieldElement eval_wgh(const FieldElement& x, NamedMap which);

// Exhaustive check that x^(p+1)/(x^p+x) equals norm/trace and lies in the
// prime field's multiplicative group, for every x outside K_-.
struct NormTraceReport {
    bool passed = false;
    std::int64_t checked = 0;
    std::optional<FieldElement> counterexample;
};
NormTraceReport check_norm_trace_identity(const FieldCtxPtr& ctx);

} // namespace gstower::gf

#endif
