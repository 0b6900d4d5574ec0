#include "gstower/symbolic.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace gstower::sym {

// ---------------------------------------------------------------- CoeffPoly

CoeffPoly::CoeffPoly(const FieldCtx* ctx, const FieldElement& c) : ctx_(ctx) {
    if (!c.is_zero()) c_.push_back(c);
}

CoeffPoly CoeffPoly::x1_power(const FieldCtx* ctx, int exp) {
    CoeffPoly r(ctx);
    r.c_.assign(static_cast<size_t>(exp) + 1, ctx->zero());
    r.c_.back() = ctx->one();
    return r;
}

void CoeffPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

FieldElement CoeffPoly::coeff(int i) const {
    if (i < 0 || i > degree()) return ctx_->zero();
    return c_[static_cast<size_t>(i)];
}

FieldElement CoeffPoly::leading() const {
    if (is_zero()) throw Error("leading coefficient of zero polynomial");
    return c_.back();
}

CoeffPoly CoeffPoly::operator+(const CoeffPoly& o) const {
    if (ctx_ != o.ctx_) throw MixedFields("coefficient polynomials over different fields");
    CoeffPoly r(ctx_);
    r.c_.resize(std::max(c_.size(), o.c_.size()), ctx_->zero());
    for (size_t i = 0; i < r.c_.size(); ++i) {
        FieldElement v = ctx_->zero();
        if (i < c_.size()) v = v + c_[i];
        if (i < o.c_.size()) v = v + o.c_[i];
        r.c_[i] = v;
    }
    r.trim();
    return r;
}

CoeffPoly CoeffPoly::operator-(const CoeffPoly& o) const { return *this + (-o); }

CoeffPoly CoeffPoly::operator-() const {
    CoeffPoly r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
}

CoeffPoly CoeffPoly::operator*(const CoeffPoly& o) const {
    if (ctx_ != o.ctx_) throw MixedFields("coefficient polynomials over different fields");
    if (is_zero() || o.is_zero()) return CoeffPoly(ctx_);
    CoeffPoly r(ctx_);
    r.c_.assign(c_.size() + o.c_.size() - 1, ctx_->zero());
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; j < o.c_.size(); ++j)
            r.c_[i + j] = r.c_[i + j] + c_[i] * o.c_[j];
    }
    r.trim();
    return r;
}

CoeffPoly CoeffPoly::scaled(const FieldElement& s) const {
    if (s.is_zero()) return CoeffPoly(ctx_);
    CoeffPoly r = *this;
    for (auto& v : r.c_) v = v * s;
    return r;
}

CoeffPoly CoeffPoly::frobenius_power() const {
    if (is_zero()) return *this;
    CoeffPoly r(ctx_);
    const auto p = static_cast<size_t>(ctx_->p());
    r.c_.assign(c_.size() * p - (p - 1), ctx_->zero());
    for (size_t i = 0; i < c_.size(); ++i)
        r.c_[i * p] = c_[i].frobenius();
    r.trim();
    return r;
}

CoeffPoly CoeffPoly::monic() const {
    if (is_zero()) return *this;
    return scaled(leading().inv());
}

CoeffPoly CoeffPoly::gcd(const CoeffPoly& a, const CoeffPoly& b) {
    CoeffPoly x = a, y = b;
    while (!y.is_zero()) {
        // remainder of x by y
        CoeffPoly r = x;
        const FieldElement lead_inv = y.leading().inv();
        while (!r.is_zero() && r.degree() >= y.degree()) {
            FieldElement c = r.leading() * lead_inv;
            int shift = r.degree() - y.degree();
            for (int i = 0; i <= y.degree(); ++i)
                r.c_[static_cast<size_t>(i + shift)] =
                    r.c_[static_cast<size_t>(i + shift)] - c * y.c_[static_cast<size_t>(i)];
            r.trim();
        }
        x = y;
        y = r;
    }
    return x.monic();
}

CoeffPoly CoeffPoly::divexact(const CoeffPoly& d) const {
    if (d.is_zero()) throw DivisionByZero("division by zero polynomial");
    CoeffPoly r = *this;
    CoeffPoly q(ctx_);
    if (r.is_zero()) return q;
    q.c_.assign(static_cast<size_t>(r.degree() - d.degree()) + 1, ctx_->zero());
    const FieldElement lead_inv = d.leading().inv();
    while (!r.is_zero() && r.degree() >= d.degree()) {
        FieldElement c = r.leading() * lead_inv;
        int shift = r.degree() - d.degree();
        q.c_[static_cast<size_t>(shift)] = c;
        for (int i = 0; i <= d.degree(); ++i)
            r.c_[static_cast<size_t>(i + shift)] =
                r.c_[static_cast<size_t>(i + shift)] - c * d.c_[static_cast<size_t>(i)];
        r.trim();
    }
    if (!r.is_zero()) throw Error("divexact with nonzero remainder");
    q.trim();
    return q;
}

FieldElement CoeffPoly::eval(const FieldElement& x1) const {
    FieldElement acc = x1.ctx()->zero();
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x1 + c_[i];
    return acc;
}

std::string CoeffPoly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const FieldElement& v = c_[static_cast<size_t>(i)];
        if (v.is_zero()) continue;
        if (!first) os << "+";
        std::string vs = v.str();
        bool composite = vs.find('+') != std::string::npos;
        if (i == 0) {
            os << (composite ? "(" + vs + ")" : vs);
        } else {
            if (!(v == ctx_->one()))
                os << (composite ? "(" + vs + ")" : vs) << "*";
            os << "x1";
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

// ------------------------------------------------------------------- MPoly

namespace {

// generator-lexicographic order, highest generator most significant
bool mono_greater(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
    for (size_t j = a.size(); j-- > 0;)
        if (a[j] != b[j]) return a[j] > b[j];
    return false;
}

struct MonoGreater {
    bool operator()(const std::vector<std::uint8_t>& a,
                    const std::vector<std::uint8_t>& b) const {
        return mono_greater(a, b);
    }
};

void require_same_system(const MPoly& a, const MPoly& b) {
    if (a.system() != b.system())
        throw MixedFields("operands belong to different relation systems");
}

} // namespace

int MPoly::max_exp(int gen) const {
    int m = 0;
    for (const auto& t : terms_) m = std::max<int>(m, t.exps[static_cast<size_t>(gen)]);
    return m;
}

bool MPoly::coeff_only() const {
    for (const auto& t : terms_)
        for (auto e : t.exps)
            if (e != 0) return false;
    return true;
}

MPoly MPoly::operator+(const MPoly& o) const {
    require_same_system(*this, o);
    MPoly r(rs_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j >= o.terms_.size() ||
            (i < terms_.size() && mono_greater(terms_[i].exps, o.terms_[j].exps))) {
            r.terms_.push_back(terms_[i++]);
        } else if (i >= terms_.size() || mono_greater(o.terms_[j].exps, terms_[i].exps)) {
            r.terms_.push_back(o.terms_[j++]);
        } else {
            CoeffPoly c = terms_[i].coeff + o.terms_[j].coeff;
            if (!c.is_zero()) r.terms_.push_back({terms_[i].exps, std::move(c)});
            ++i;
            ++j;
        }
    }
    return r;
}

MPoly MPoly::operator-() const {
    MPoly r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + (-o); }

MPoly MPoly::operator*(const MPoly& o) const {
    require_same_system(*this, o);
    std::map<std::vector<std::uint8_t>, CoeffPoly, MonoGreater> acc;
    for (const auto& a : terms_) {
        for (const auto& b : o.terms_) {
            std::vector<std::uint8_t> e = a.exps;
            for (size_t j = 0; j < e.size(); ++j) {
                int v = e[j] + b.exps[j];
                if (v > 255) throw Error("generator exponent overflow");
                e[j] = static_cast<std::uint8_t>(v);
            }
            CoeffPoly prod = a.coeff * b.coeff;
            auto it = acc.find(e);
            if (it == acc.end())
                acc.emplace(std::move(e), std::move(prod));
            else
                it->second = it->second + prod;
        }
    }
    MPoly r(rs_);
    for (auto& [e, c] : acc)
        if (!c.is_zero()) r.terms_.push_back({e, std::move(c)});
    return r;
}

MPoly MPoly::scaled(const CoeffPoly& s) const {
    if (s.is_zero()) return MPoly(rs_);
    MPoly r = *this;
    for (auto& t : r.terms_) t.coeff = t.coeff * s;
    return r;
}

MPoly MPoly::times_gen(int gen) const {
    MPoly r = *this;
    for (auto& t : r.terms_) {
        if (t.exps[static_cast<size_t>(gen)] == 255) throw Error("generator exponent overflow");
        ++t.exps[static_cast<size_t>(gen)];
    }
    return r;
}

MPoly MPoly::frobenius_power() const {
    MPoly r(rs_);
    r.terms_.reserve(terms_.size());
    const int p = static_cast<int>(rs_->fctx()->p());
    for (const auto& t : terms_) {
        Term nt;
        nt.exps = t.exps;
        for (auto& e : nt.exps) {
            int v = e * p;
            if (v > 255) throw Error("generator exponent overflow");
            e = static_cast<std::uint8_t>(v);
        }
        nt.coeff = t.coeff.frobenius_power();
        r.terms_.push_back(std::move(nt));
    }
    return r;
}

FieldElement MPoly::eval(const FieldElement& x1,
                         const std::vector<FieldElement>& gen_values) const {
    FieldElement acc = x1.ctx()->zero();
    for (const auto& t : terms_) {
        FieldElement v = t.coeff.eval(x1);
        for (size_t j = 0; j < t.exps.size(); ++j)
            if (t.exps[j] != 0) v = v * gen_values.at(j).pow(t.exps[j]);
        acc = acc + v;
    }
    return acc;
}

bool MPoly::operator==(const MPoly& o) const {
    if (rs_ != o.rs_ || terms_.size() != o.terms_.size()) return false;
    for (size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].exps != o.terms_[i].exps || !(terms_[i].coeff == o.terms_[i].coeff))
            return false;
    return true;
}

std::string MPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        if (!first) os << " + ";
        first = false;
        std::string mono;
        for (size_t j = 0; j < t.exps.size(); ++j) {
            if (t.exps[j] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += rs_->gen_id(static_cast<int>(j)).str();
            if (t.exps[j] > 1) mono += "^" + std::to_string(t.exps[j]);
        }
        std::string cs = t.coeff.str();
        bool simple_coeff = (t.coeff.degree() <= 0) && cs.find('+') == std::string::npos;
        if (mono.empty()) {
            os << (simple_coeff ? cs : "(" + cs + ")");
        } else if (cs == "1") {
            os << mono;
        } else {
            os << (simple_coeff ? cs : "(" + cs + ")") << "*" << mono;
        }
    }
    return os.str();
}

std::string SymbolicElement::str() const {
    bool den_is_one = den.terms().size() == 1 && den.coeff_only() &&
                      den.terms()[0].coeff.degree() == 0 &&
                      den.terms()[0].coeff.leading() == den.terms()[0].coeff.ctx()->one();
    if (den_is_one) return num.str();
    return "(" + num.str() + ") / (" + den.str() + ")";
}

// --------------------------------------------------------- RelationSystem

RelationSystemPtr RelationSystem::build(const tower::TowerSpec& spec) {
    auto rs = std::shared_ptr<RelationSystem>(new RelationSystem());
    rs->spec_ = spec;
    rs->fctx_hold_ = spec.field();
    rs->fctx_ = spec.field().get();

    auto order = tower::dependency_order(spec); // throws CyclicDependency
    for (const auto& id : order) {
        if (id == tower::GenId::x(1)) continue;
        rs->gen_ids_.push_back(id);
    }
    rs->rels_.resize(rs->gen_ids_.size());

    for (int j = 0; j < rs->gen_count(); ++j) {
        int slot = spec.find(rs->gen_ids_[static_cast<size_t>(j)]);
        const auto& decl = spec.generators()[static_cast<size_t>(slot)];
        if (!decl.relation)
            throw CyclicDependency("algebraic generator without a relation: " + decl.id.str());
        const auto& ref = *decl.relation;
        SymbolicElement parent = (ref.parent == tower::GenId::x(1))
                                     ? rs->x1()
                                     : rs->gen(rs->gen_of(ref.parent));
        SymbolicElement arg = rs->add(parent, rs->constant(ref.shift));
        rs->rels_[static_cast<size_t>(j)] = rs->g_apply(arg);
    }
    return rs;
}

int RelationSystem::gen_of(const tower::GenId& id) const {
    for (int j = 0; j < gen_count(); ++j)
        if (gen_ids_[static_cast<size_t>(j)] == id) return j;
    return -1;
}

SymbolicElement RelationSystem::zero() const {
    SymbolicElement e{MPoly(this), MPoly(this)};
    MPoly::Term one_term;
    one_term.exps.assign(static_cast<size_t>(gen_count()), 0);
    one_term.coeff = CoeffPoly(fctx_, fctx_->one());
    e.den.terms_.push_back(std::move(one_term));
    return e;
}

SymbolicElement RelationSystem::constant(const FieldElement& c) const {
    SymbolicElement e = zero();
    if (!c.is_zero()) {
        MPoly::Term t;
        t.exps.assign(static_cast<size_t>(gen_count()), 0);
        t.coeff = CoeffPoly(fctx_, c);
        e.num.terms_.push_back(std::move(t));
    }
    return e;
}

SymbolicElement RelationSystem::one() const { return constant(fctx_->one()); }

SymbolicElement RelationSystem::x1(int exp) const {
    SymbolicElement e = zero();
    MPoly::Term t;
    t.exps.assign(static_cast<size_t>(gen_count()), 0);
    t.coeff = CoeffPoly::x1_power(fctx_, exp);
    e.num.terms_.push_back(std::move(t));
    return e;
}

SymbolicElement RelationSystem::gen(int j) const {
    if (j < 0 || j >= gen_count()) throw Error("generator index out of range");
    SymbolicElement e = zero();
    MPoly::Term t;
    t.exps.assign(static_cast<size_t>(gen_count()), 0);
    t.exps[static_cast<size_t>(j)] = 1;
    t.coeff = CoeffPoly(fctx_, fctx_->one());
    e.num.terms_.push_back(std::move(t));
    return e;
}

SymbolicElement RelationSystem::generator(const tower::GenId& id) const {
    if (id == tower::GenId::x(1)) return x1();
    int j = gen_of(id);
    if (j < 0) throw Error("unknown generator: " + id.str());
    return gen(j);
}

SymbolicElement RelationSystem::make_fraction(MPoly N, MPoly D) const {
    if (N.system() != this || D.system() != this)
        throw MixedFields("fraction parts belong to a different relation system");
    const int p = static_cast<int>(fctx_->p());

    // P = A * g_j^p + B; A keeps its residual exponents at j
    auto split_top = [&](const MPoly& P, int j, MPoly& A, MPoly& B) {
        for (const auto& t : P.terms_) {
            if (t.exps[static_cast<size_t>(j)] >= p) {
                MPoly::Term a = t;
                a.exps[static_cast<size_t>(j)] =
                    static_cast<std::uint8_t>(a.exps[static_cast<size_t>(j)] - p);
                A.terms_.push_back(std::move(a));
            } else {
                B.terms_.push_back(t);
            }
        }
    };

    for (int j = gen_count() - 1; j >= 0; --j) {
        for (int side = 0; side < 2; ++side) {
            MPoly& target = side == 0 ? N : D;
            MPoly& other = side == 0 ? D : N;
            int guard = 0;
            while (target.max_exp(j) >= p) {
                int before = target.max_exp(j);
                const SymbolicElement& rel = rels_[static_cast<size_t>(j)];
                MPoly A(this), B(this);
                split_top(target, j, A, B);
                target = A * rel.num - A.times_gen(j) * rel.den + B * rel.den;
                other = other * rel.den;
                reduce_steps_.fetch_add(1, std::memory_order_relaxed);
                if (target.max_exp(j) >= before)
                    throw Error("rewrite failed to make progress");
                if (++guard > 4096) throw Error("rewrite step limit exceeded");
            }
        }
    }

    if (D.is_zero()) throw ZeroDivisor("denominator reduces to zero");
    if (N.is_zero()) return zero();

    // strip the common content over GF(p^2)[x1]
    CoeffPoly content(fctx_);
    for (const auto& t : N.terms_) {
        content = CoeffPoly::gcd(content, t.coeff);
        if (content.degree() == 0) break;
    }
    if (content.is_zero() || content.degree() > 0) {
        for (const auto& t : D.terms_) {
            content = CoeffPoly::gcd(content, t.coeff);
            if (content.degree() == 0) break;
        }
    }
    if (content.degree() > 0) {
        for (auto& t : N.terms_) t.coeff = t.coeff.divexact(content);
        for (auto& t : D.terms_) t.coeff = t.coeff.divexact(content);
    }

    // the denominator's leading coefficient becomes monic
    FieldElement lead = D.terms_[0].coeff.leading();
    if (!(lead == fctx_->one())) {
        FieldElement s = lead.inv();
        for (auto& t : N.terms_) t.coeff = t.coeff.scaled(s);
        for (auto& t : D.terms_) t.coeff = t.coeff.scaled(s);
    }
    return {std::move(N), std::move(D)};
}

SymbolicElement RelationSystem::normalize(const SymbolicElement& e) const {
    return make_fraction(e.num, e.den);
}

SymbolicElement RelationSystem::add(const SymbolicElement& a, const SymbolicElement& b) const {
    return make_fraction(a.num * b.den + b.num * a.den, a.den * b.den);
}

SymbolicElement RelationSystem::sub(const SymbolicElement& a, const SymbolicElement& b) const {
    return make_fraction(a.num * b.den - b.num * a.den, a.den * b.den);
}

SymbolicElement RelationSystem::mul(const SymbolicElement& a, const SymbolicElement& b) const {
    return make_fraction(a.num * b.num, a.den * b.den);
}

SymbolicElement RelationSystem::neg(const SymbolicElement& a) const {
    return SymbolicElement{-a.num, a.den};
}

SymbolicElement RelationSystem::pow(const SymbolicElement& a, int e) const {
    if (e < 0) throw Error("negative symbolic exponent");
    SymbolicElement r = one();
    for (int i = 0; i < e; ++i) r = mul(r, a);
    return r;
}

SymbolicElement RelationSystem::divide_simple(const SymbolicElement& a,
                                              const SymbolicElement& d) const {
    return make_fraction(a.num * d.den, a.den * d.num); // ZeroDivisor inside
}

SymbolicElement RelationSystem::wp_apply(const SymbolicElement& a) const {
    MPoly np = a.num.frobenius_power();
    MPoly dp = a.den.frobenius_power();
    return make_fraction(np * a.den + a.num * dp, dp * a.den);
}

SymbolicElement RelationSystem::g_apply(const SymbolicElement& a) const {
    SymbolicElement t = pow(a, static_cast<int>(fctx_->p()) + 1);
    SymbolicElement w = wp_apply(a);
    return make_fraction(t.num * w.den, t.den * w.num);
}

SymbolicElement RelationSystem::h_apply(const SymbolicElement& a) const {
    SymbolicElement t = pow(a, static_cast<int>(fctx_->p()) - 1);
    SymbolicElement hnum = sub(t, one());
    SymbolicElement hden = add(t, one());
    return make_fraction(hnum.num * hden.den, hnum.den * hden.num);
}

bool RelationSystem::equals(const SymbolicElement& a, const SymbolicElement& b) const {
    MPoly cross = a.num * b.den - b.num * a.den;
    SymbolicElement r = make_fraction(std::move(cross), one().den);
    return r.is_zero();
}

FieldElement RelationSystem::eval(const SymbolicElement& e, const FieldElement& x1v,
                                  const std::vector<FieldElement>& gen_values) const {
    FieldElement den = e.den.eval(x1v, gen_values);
    if (den.is_zero()) throw DivisionByZero("denominator vanishes at the evaluation point");
    return e.num.eval(x1v, gen_values) / den;
}

// ------------------------------------------------------------------ parser

namespace {

struct Lexer {
    const std::string& s;
    size_t i = 0;

    explicit Lexer(const std::string& text) : s(text) {}

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eof() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c))
            throw gstower::ParseError(std::string("expected '") + c + "' at position " +
                                      std::to_string(i) + " in \"" + s + "\"");
    }
    long long number() {
        skip_ws();
        long long v = 0;
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
            throw gstower::ParseError("expected a number at position " + std::to_string(i));
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
            v = v * 10 + (s[i++] - '0');
        return v;
    }
};

class Parser {
  public:
    Parser(const RelationSystem& rs, const std::string& text) : rs_(rs), lx_(text) {}

    SymbolicElement run() {
        SymbolicElement e = expr();
        if (!lx_.eof())
            throw gstower::ParseError("trailing characters at position " +
                                      std::to_string(lx_.i));
        return e;
    }

  private:
    const RelationSystem& rs_;
    Lexer lx_;

    SymbolicElement expr() {
        bool negate = lx_.accept('-');
        SymbolicElement acc = term();
        if (negate) acc = rs_.neg(acc);
        while (true) {
            if (lx_.accept('+'))
                acc = rs_.add(acc, term());
            else if (lx_.accept('-'))
                acc = rs_.sub(acc, term());
            else
                break;
        }
        return acc;
    }

    SymbolicElement term() {
        SymbolicElement acc = factor();
        while (true) {
            if (lx_.accept('*')) {
                acc = rs_.mul(acc, factor());
            } else if (lx_.accept('/')) {
                SymbolicElement d = factor();
                acc = rs_.make_fraction(acc.num * d.den, acc.den * d.num);
            } else {
                break;
            }
        }
        return acc;
    }

    SymbolicElement factor() {
        SymbolicElement base = primary();
        if (lx_.accept('^')) {
            long long e = lx_.number();
            base = rs_.pow(base, static_cast<int>(e));
        }
        return base;
    }

    SymbolicElement primary() {
        if (lx_.accept('(')) {
            SymbolicElement e = expr();
            lx_.expect(')');
            return e;
        }
        char c = lx_.peek();
        if (c == 'w' || c == 'g' || c == 'h') {
            // function application: wp(...), g(...), h(...)
            size_t save = lx_.i;
            std::string name;
            while (lx_.i < lx_.s.size() &&
                   std::isalpha(static_cast<unsigned char>(lx_.s[lx_.i])))
                name += lx_.s[lx_.i++];
            if (name == "wp" || name == "g" || name == "h") {
                lx_.expect('(');
                SymbolicElement arg = expr();
                lx_.expect(')');
                if (name == "wp") return rs_.wp_apply(arg);
                if (name == "g") return rs_.g_apply(arg);
                return rs_.h_apply(arg);
            }
            lx_.i = save;
        }
        if (c == 'x') {
            ++lx_.i;
            long long lvl = lx_.number();
            if (lvl == 1) return rs_.x1();
            return rs_.generator(tower::GenId::x(static_cast<int>(lvl)));
        }
        if (c == 'u') {
            ++lx_.i;
            lx_.expect('[');
            std::vector<FieldElement> idx;
            std::string cur;
            while (lx_.i < lx_.s.size() && lx_.s[lx_.i] != ']') {
                if (lx_.s[lx_.i] == ',') {
                    idx.push_back(rs_.fctx()->parse(cur));
                    cur.clear();
                } else {
                    cur += lx_.s[lx_.i];
                }
                ++lx_.i;
            }
            lx_.expect(']');
            if (!cur.empty()) idx.push_back(rs_.fctx()->parse(cur));
            return rs_.generator(tower::GenId::u(std::move(idx)));
        }
        if (c == 't') {
            ++lx_.i;
            return rs_.constant(rs_.fctx()->gen());
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            long long v = lx_.number();
            // allow a trailing t for atoms like "2t"
            if (lx_.i < lx_.s.size() && lx_.s[lx_.i] == 't') {
                ++lx_.i;
                return rs_.constant(rs_.fctx()->from_int(v) * rs_.fctx()->gen());
            }
            return rs_.constant(rs_.fctx()->from_int(v));
        }
        throw gstower::ParseError("unexpected character '" + std::string(1, c) +
                                  "' at position " + std::to_string(lx_.i));
    }
};

} // namespace

SymbolicElement RelationSystem::parse(const std::string& text) const {
    return Parser(*this, text).run();
}

} // namespace gstower::sym
