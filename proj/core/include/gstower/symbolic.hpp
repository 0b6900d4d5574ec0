#ifndef GSTOWER_SYMBOLIC_HPP
#define GSTOWER_SYMBOLIC_HPP

// Symbolic arithmetic in the tower function fields.  Elements are fractions
// of multivariate polynomials in the algebraic generators with coefficients
// in GF(p^2)[x1], kept in a reduced normal form where every generator
// exponent is below p.  Equality of the field identities is decided by
// cross-multiplication of normal forms.

#include <atomic>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "gstower/field.hpp"
#include "gstower/tower.hpp"

namespace gstower::sym {

using gf::FieldCtx;
using gf::FieldElement;

// Dense univariate polynomial over GF(p^2) in the base variable x1.
class CoeffPoly {
  public:
    CoeffPoly() = default;
    explicit CoeffPoly(const FieldCtx* ctx) : ctx_(ctx) {}
    CoeffPoly(const FieldCtx* ctx, const FieldElement& c);

    static CoeffPoly x1_power(const FieldCtx* ctx, int exp);

    const FieldCtx* ctx() const { return ctx_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    FieldElement coeff(int i) const;
    FieldElement leading() const;

    CoeffPoly operator+(const CoeffPoly& o) const;
    CoeffPoly operator-(const CoeffPoly& o) const;
    CoeffPoly operator*(const CoeffPoly& o) const;
    CoeffPoly operator-() const;
    CoeffPoly scaled(const FieldElement& s) const;

    // termwise p-th power: coefficients through Frobenius, x1 exponent times p
    CoeffPoly frobenius_power() const;

    CoeffPoly monic() const;
    static CoeffPoly gcd(const CoeffPoly& a, const CoeffPoly& b);
    CoeffPoly divexact(const CoeffPoly& d) const;

    FieldElement eval(const FieldElement& x1) const;
    bool operator==(const CoeffPoly& o) const { return ctx_ == o.ctx_ && c_ == o.c_; }
    std::string str() const;

  private:
    void trim();
    const FieldCtx* ctx_ = nullptr;
    std::vector<FieldElement> c_; // c_[i] multiplies x1^i, trimmed
};

class RelationSystem;
using RelationSystemPtr = std::shared_ptr<const RelationSystem>;

// Multivariate polynomial in the algebraic generators of a relation system.
// Terms are kept sorted in the generator-lexicographic order (highest
// generator most significant), descending.
class MPoly {
  public:
    struct Term {
        std::vector<std::uint8_t> exps; // one slot per algebraic generator
        CoeffPoly coeff;
    };

    MPoly() = default;
    explicit MPoly(const RelationSystem* rs) : rs_(rs) {}

    const RelationSystem* system() const { return rs_; }
    bool is_zero() const { return terms_.empty(); }
    const std::vector<Term>& terms() const { return terms_; }

    int max_exp(int gen) const;
    bool coeff_only() const; // no generator appears

    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator*(const MPoly& o) const; // raw product, no reduction
    MPoly operator-() const;
    MPoly scaled(const CoeffPoly& s) const;
    MPoly times_gen(int gen) const; // multiply by one generator

    MPoly frobenius_power() const; // termwise p-th power

    FieldElement eval(const FieldElement& x1,
                      const std::vector<FieldElement>& gen_values) const;

    bool operator==(const MPoly& o) const;
    std::string str() const;

  private:
    friend class RelationSystem;
    const RelationSystem* rs_ = nullptr;
    std::vector<Term> terms_;
};

// A tower function-field element in reduced form.  The numerator and
// denominator have every generator exponent below p, share no content over
// GF(p^2)[x1], and the denominator's leading coefficient is monic.  Zero is
// canonically (0, 1).
struct SymbolicElement {
    MPoly num;
    MPoly den;
    const RelationSystem* system() const { return num.system(); }
    bool is_zero() const { return num.is_zero(); }
    std::string str() const;
};

// Ordered generator/relation system of a tower: for each algebraic
// generator g the stored relation r encodes g^p = r - g.
class RelationSystem : public std::enable_shared_from_this<RelationSystem> {
  public:
    static RelationSystemPtr build(const tower::TowerSpec& spec);

    const tower::TowerSpec& spec() const { return spec_; }
    const FieldCtx* fctx() const { return fctx_; }
    std::int64_t p() const { return fctx_->p(); }
    int gen_count() const { return static_cast<int>(gen_ids_.size()); }
    const tower::GenId& gen_id(int j) const { return gen_ids_[static_cast<size_t>(j)]; }
    int gen_of(const tower::GenId& id) const; // -1 if absent
    const SymbolicElement& relation(int j) const { return rels_[static_cast<size_t>(j)]; }

    // element factories
    SymbolicElement zero() const;
    SymbolicElement one() const;
    SymbolicElement constant(const FieldElement& c) const;
    SymbolicElement x1(int exp = 1) const;
    SymbolicElement gen(int j) const;
    SymbolicElement generator(const tower::GenId& id) const;

    // arithmetic (operands must belong to this system)
    SymbolicElement add(const SymbolicElement& a, const SymbolicElement& b) const;
    SymbolicElement sub(const SymbolicElement& a, const SymbolicElement& b) const;
    SymbolicElement mul(const SymbolicElement& a, const SymbolicElement& b) const;
    SymbolicElement pow(const SymbolicElement& a, int e) const;
    SymbolicElement neg(const SymbolicElement& a) const;

    // a / d for polynomial d (denominator 1); ZeroDivisor when d reduces to 0
    SymbolicElement divide_simple(const SymbolicElement& a, const SymbolicElement& d) const;

    SymbolicElement wp_apply(const SymbolicElement& a) const;  // a^p + a
    SymbolicElement g_apply(const SymbolicElement& a) const;   // a^(p+1)/wp(a)
    SymbolicElement h_apply(const SymbolicElement& a) const;   // (a^(p-1)-1)/(a^(p-1)+1)

    bool is_zero(const SymbolicElement& a) const { return a.num.is_zero(); }
    bool equals(const SymbolicElement& a, const SymbolicElement& b) const;

    // normalization entry point: arbitrary raw numerator/denominator in
    SymbolicElement make_fraction(MPoly num_raw, MPoly den_raw) const;
    SymbolicElement normalize(const SymbolicElement& e) const;

    // evaluation at a point of the tower (values aligned with gen indices)
    FieldElement eval(const SymbolicElement& e, const FieldElement& x1,
                      const std::vector<FieldElement>& gen_values) const;

    // infix expression grammar: generators, + - * / ^, wp() g() h(),
    // field-element atoms
    SymbolicElement parse(const std::string& text) const;

    // rewrite-step instrumentation
    std::uint64_t reduce_steps() const { return reduce_steps_.load(); }
    void reset_reduce_steps() const { reduce_steps_.store(0); }

  private:
    RelationSystem() = default;

    tower::TowerSpec spec_;
    const FieldCtx* fctx_ = nullptr;
    gf::FieldCtxPtr fctx_hold_;
    std::vector<tower::GenId> gen_ids_;
    std::vector<SymbolicElement> rels_;
    mutable std::atomic<std::uint64_t> reduce_steps_{0};
};

} // namespace gstower::sym

#endif
