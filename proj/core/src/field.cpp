#include "gstower/field.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <sstream>

namespace gstower::gf {

namespace {

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::int64_t mod_inv(std::int64_t a, std::int64_t p) {
    // extended Euclid in Z
    std::int64_t t = 0, nt = 1, r = p, nr = a % p;
    while (nr != 0) {
        std::int64_t qq = r / nr;
        std::swap(t -= qq * nt, nt);
        std::swap(r -= qq * nr, nr);
    }
    if (r != 1) throw DivisionByZero("inverse of zero residue");
    return ((t % p) + p) % p;
}

// ---- dense polynomials over GF(p), used for modulus search and division ----

using Poly = std::vector<std::int16_t>; // coefficient of T^i at position i

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }

// remainder of a by b (b nonzero), coefficients mod p
Poly poly_rem(Poly a, const Poly& b, std::int64_t p) {
    trim(a);
    const std::int64_t lead_inv = mod_inv(b.back(), p);
    while (degree(a) >= degree(b)) {
        std::int64_t c = (a.back() * lead_inv) % p;
        int shift = degree(a) - degree(b);
        for (size_t i = 0; i < b.size(); ++i) {
            std::int64_t v = a[i + shift] - c * b[i];
            a[i + shift] = static_cast<std::int16_t>(((v % p) + p) % p);
        }
        trim(a);
    }
    return a;
}

Poly poly_mul(const Poly& a, const Poly& b, std::int64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<std::int16_t>((r[i + j] + std::int64_t(a[i]) * b[j]) % p);
    }
    trim(r);
    return r;
}

// trial division by every monic polynomial of degree 1..deg/2
bool is_irreducible(const Poly& f, std::int64_t p) {
    const int deg = degree(f);
    if (deg < 1) return false;
    if (deg == 1) return true;
    for (int d = 1; 2 * d <= deg; ++d) {
        std::int64_t count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (std::int64_t idx = 0; idx < count; ++idx) {
            Poly g(static_cast<size_t>(d) + 1, 0);
            std::int64_t v = idx;
            for (int i = 0; i < d; ++i) {
                g[static_cast<size_t>(i)] = static_cast<std::int16_t>(v % p);
                v /= p;
            }
            g[static_cast<size_t>(d)] = 1;
            if (poly_rem(f, g, p).empty()) return false;
        }
    }
    return true;
}

// Smallest monic irreducible of degree k.  Candidates are ordered by the
// coefficient tuple (a_{k-1}, ..., a_0), which is the numeric order of
// code = sum a_i p^i.
Poly find_modulus(std::int64_t p, int k) {
    if (k == 1) {
        return Poly{0, 1}; // T
    }
    std::int64_t count = 1;
    for (int i = 0; i < k; ++i) count *= p;
    for (std::int64_t code = 0; code < count; ++code) {
        Poly f(static_cast<size_t>(k) + 1, 0);
        f[static_cast<size_t>(k)] = 1;
        std::int64_t v = code;
        for (int i = 0; i < k; ++i) {
            f[static_cast<size_t>(i)] = static_cast<std::int16_t>(v % p);
            v /= p;
        }
        if (is_irreducible(f, p)) return f;
    }
    throw Error("no irreducible modulus found"); // unreachable
}

// ---- context registry ----

std::mutex g_registry_mutex;
std::map<std::pair<std::int64_t, int>, FieldCtxPtr>& registry() {
    static std::map<std::pair<std::int64_t, int>, FieldCtxPtr> r;
    return r;
}

constexpr std::int64_t kTableLimit = 1024;

void require_same_ctx(const FieldElement& a, const FieldElement& b) {
    if (a.ctx() != b.ctx())
        throw MixedFields("operands belong to different fields");
}

} // namespace

// ---- FieldCtx ----

FieldCtxPtr make_field(std::int64_t p, int k) {
    if (p < 3 || p % 2 == 0 || !is_prime(p))
        throw NotOddPrime("p must be an odd prime, got " + std::to_string(p));
    if (k < 1 || k > kMaxExtensionDegree)
        throw DegreeTooLarge("extension degree must be in [1, 8], got " + std::to_string(k));
    if (p >= 30000)
        throw NotOddPrime("characteristic too large for this build");
    {
        std::lock_guard<std::mutex> lock(g_registry_mutex);
        auto it = registry().find({p, k});
        if (it != registry().end()) return it->second;
    }
    auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx());
    ctx->p_ = p;
    ctx->k_ = k;
    std::int64_t q = 1;
    for (int i = 0; i < k; ++i) {
        q *= p;
        if (q > (std::int64_t(1) << 40))
            throw DegreeTooLarge("field too large: p^k overflows the supported range");
    }
    ctx->q_ = q;
    ctx->modulus_ = find_modulus(p, k);
    if (q <= kTableLimit) ctx->build_tables();
    std::lock_guard<std::mutex> lock(g_registry_mutex);
    auto [it, inserted] = registry().emplace(std::make_pair(p, k), ctx);
    return it->second;
}

void FieldCtx::build_tables() {
    const std::int64_t q = q_;
    mul_tbl_.assign(static_cast<size_t>(q * q), 0);
    inv_tbl_.assign(static_cast<size_t>(q), 0);
    frob_tbl_.assign(static_cast<size_t>(q), 0);
    has_tables_ = false; // direct arithmetic while building
    for (std::int64_t i = 0; i < q; ++i) {
        FieldElement a = from_index(i);
        for (std::int64_t j = i; j < q; ++j) {
            FieldElement b = from_index(j);
            std::int32_t prod = static_cast<std::int32_t>((a * b).index());
            mul_tbl_[static_cast<size_t>(i * q + j)] = prod;
            mul_tbl_[static_cast<size_t>(j * q + i)] = prod;
        }
        frob_tbl_[static_cast<size_t>(i)] = static_cast<std::int32_t>(a.pow(p_).index());
    }
    for (std::int64_t i = 1; i < q; ++i) {
        FieldElement a = from_index(i);
        inv_tbl_[static_cast<size_t>(i)] = static_cast<std::int32_t>(a.inv().index());
    }
    has_tables_ = true;
}

std::string FieldCtx::modulus_str() const {
    std::ostringstream os;
    bool first = true;
    for (int i = k_; i >= 0; --i) {
        int c = modulus_[static_cast<size_t>(i)];
        if (c == 0) continue;
        if (!first) os << "+";
        if (i == 0) {
            os << c;
        } else {
            if (c != 1) os << c << "*";
            os << "T";
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

FieldElement FieldCtx::zero() const {
    FieldElement e;
    e.ctx_ = this;
    return e;
}

FieldElement FieldCtx::one() const { return from_int(1); }

FieldElement FieldCtx::gen() const {
    if (k_ < 2) throw WrongDegree("prime field has no generator t");
    FieldElement e = zero();
    e.c_[1] = 1;
    return e;
}

FieldElement FieldCtx::from_int(std::int64_t a) const {
    FieldElement e = zero();
    e.c_[0] = static_cast<std::int16_t>(((a % p_) + p_) % p_);
    return e;
}

FieldElement FieldCtx::from_coeffs(const std::vector<std::int64_t>& c) const {
    if (static_cast<int>(c.size()) > k_)
        throw WrongDegree("coefficient list longer than the extension degree");
    FieldElement e = zero();
    for (size_t i = 0; i < c.size(); ++i)
        e.c_[i] = static_cast<std::int16_t>(((c[i] % p_) + p_) % p_);
    return e;
}

FieldElement FieldCtx::from_index(std::int64_t idx) const {
    if (idx < 0 || idx >= q_) throw Error("element index out of range");
    FieldElement e = zero();
    for (int i = 0; i < k_; ++i) {
        e.c_[static_cast<size_t>(i)] = static_cast<std::int16_t>(idx % p_);
        idx /= p_;
    }
    return e;
}

FieldCtxPtr FieldCtx::prime_field() const { return make_field(p_, 1); }

FieldElement FieldCtx::embed(const FieldElement& prime_elt) const {
    if (prime_elt.ctx() == nullptr || prime_elt.ctx()->k() != 1 ||
        prime_elt.ctx()->p() != p_)
        throw MixedFields("embed expects an element of the prime subfield");
    return from_int(prime_elt.coeff(0));
}

// element strings: sums of [c][t[^e]] atoms, e.g. "0", "2", "t", "2t", "1+2t",
// "t^2"; '*' between coefficient and t is accepted
FieldElement FieldCtx::parse(const std::string& s) const {
    FieldElement acc = zero();
    size_t i = 0;
    auto skip_ws = [&] { while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i; };
    skip_ws();
    if (i == s.size()) throw gstower::ParseError("empty field element string");
    bool first = true;
    while (i < s.size()) {
        skip_ws();
        int sign = 1;
        if (!first || s[i] == '+' || s[i] == '-') {
            if (i >= s.size() || (s[i] != '+' && s[i] != '-'))
                throw gstower::ParseError("expected '+' or '-' in \"" + s + "\"");
            sign = (s[i] == '-') ? -1 : 1;
            ++i;
            skip_ws();
        }
        first = false;
        std::int64_t coeff = 1;
        bool saw_digits = false;
        if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            coeff = 0;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
                coeff = coeff * 10 + (s[i++] - '0');
            saw_digits = true;
        }
        skip_ws();
        if (i < s.size() && s[i] == '*') { ++i; skip_ws(); }
        int exp = 0;
        if (i < s.size() && s[i] == 't') {
            ++i;
            exp = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
                    throw gstower::ParseError("expected exponent digits in \"" + s + "\"");
                exp = 0;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
                    exp = exp * 10 + (s[i++] - '0');
            }
        } else if (!saw_digits) {
            throw gstower::ParseError("unexpected character in field element \"" + s + "\"");
        }
        if (exp >= k_)
            throw gstower::ParseError("t^" + std::to_string(exp) + " is not reduced in this field");
        FieldElement term = zero();
        term.c_[static_cast<size_t>(exp)] =
            static_cast<std::int16_t>(((sign * coeff) % p_ + p_) % p_);
        acc = acc + term;
        skip_ws();
    }
    return acc;
}

// ---- FieldElement ----

std::vector<int> FieldElement::coeffs() const {
    if (!ctx_) throw Error("uninitialized field element");
    std::vector<int> v(static_cast<size_t>(ctx_->k()));
    for (int i = 0; i < ctx_->k(); ++i) v[static_cast<size_t>(i)] = c_[static_cast<size_t>(i)];
    return v;
}

bool FieldElement::is_zero() const {
    if (!ctx_) throw Error("uninitialized field element");
    for (int i = 0; i < ctx_->k(); ++i)
        if (c_[static_cast<size_t>(i)] != 0) return false;
    return true;
}

std::int64_t FieldElement::index() const {
    if (!ctx_) throw Error("uninitialized field element");
    std::int64_t idx = 0;
    for (int i = ctx_->k() - 1; i >= 0; --i) idx = idx * ctx_->p() + c_[static_cast<size_t>(i)];
    return idx;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    require_same_ctx(*this, o);
    FieldElement r = *this;
    const std::int64_t p = ctx_->p();
    for (int i = 0; i < ctx_->k(); ++i) {
        std::int32_t v = r.c_[static_cast<size_t>(i)] + o.c_[static_cast<size_t>(i)];
        if (v >= p) v -= static_cast<std::int32_t>(p);
        r.c_[static_cast<size_t>(i)] = static_cast<std::int16_t>(v);
    }
    return r;
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    require_same_ctx(*this, o);
    FieldElement r = *this;
    const std::int64_t p = ctx_->p();
    for (int i = 0; i < ctx_->k(); ++i) {
        std::int32_t v = r.c_[static_cast<size_t>(i)] - o.c_[static_cast<size_t>(i)];
        if (v < 0) v += static_cast<std::int32_t>(p);
        r.c_[static_cast<size_t>(i)] = static_cast<std::int16_t>(v);
    }
    return r;
}

FieldElement FieldElement::operator-() const {
    if (!ctx_) throw Error("uninitialized field element");
    return ctx_->zero() - *this;
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    require_same_ctx(*this, o);
    if (ctx_->has_tables())
        return ctx_->from_index(ctx_->mul_tbl_[static_cast<size_t>(index() * ctx_->q() + o.index())]);
    const std::int64_t p = ctx_->p();
    const int k = ctx_->k();
    std::array<std::int64_t, 2 * kMaxExtensionDegree> prod{};
    for (int i = 0; i < k; ++i) {
        if (c_[static_cast<size_t>(i)] == 0) continue;
        for (int j = 0; j < k; ++j)
            prod[static_cast<size_t>(i + j)] += std::int64_t(c_[static_cast<size_t>(i)]) * o.c_[static_cast<size_t>(j)];
    }
    // reduce modulo the monic modulus
    const auto& m = ctx_->modulus_;
    for (int d = 2 * k - 2; d >= k; --d) {
        std::int64_t c = prod[static_cast<size_t>(d)] % p;
        if (c == 0) continue;
        for (int i = 0; i < k; ++i)
            prod[static_cast<size_t>(d - k + i)] -= c * m[static_cast<size_t>(i)];
        prod[static_cast<size_t>(d)] = 0;
    }
    FieldElement r = ctx_->zero();
    for (int i = 0; i < k; ++i)
        r.c_[static_cast<size_t>(i)] = static_cast<std::int16_t>(((prod[static_cast<size_t>(i)] % p) + p) % p);
    return r;
}

FieldElement FieldElement::inv() const {
    if (!ctx_) throw Error("uninitialized field element");
    if (is_zero()) throw DivisionByZero("inverse of zero");
    if (ctx_->has_tables())
        return ctx_->from_index(ctx_->inv_tbl_[static_cast<size_t>(index())]);
    return pow(ctx_->q() - 2);
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
    require_same_ctx(*this, o);
    return *this * o.inv();
}

FieldElement FieldElement::pow(std::int64_t e) const {
    if (!ctx_) throw Error("uninitialized field element");
    if (e < 0) throw Error("negative exponent; invert first");
    FieldElement base = *this;
    FieldElement r = ctx_->one();
    while (e > 0) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

FieldElement FieldElement::frobenius() const {
    if (!ctx_) throw Error("uninitialized field element");
    if (ctx_->has_tables())
        return ctx_->from_index(ctx_->frob_tbl_[static_cast<size_t>(index())]);
    return pow(ctx_->p());
}

bool FieldElement::operator==(const FieldElement& o) const {
    if (ctx_ != o.ctx_) return false;
    if (!ctx_) return true;
    for (int i = 0; i < ctx_->k(); ++i)
        if (c_[static_cast<size_t>(i)] != o.c_[static_cast<size_t>(i)]) return false;
    return true;
}

bool FieldElement::operator<(const FieldElement& o) const {
    require_same_ctx(*this, o);
    return index() < o.index();
}

std::string FieldElement::str() const {
    if (!ctx_) return "<null>";
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < ctx_->k(); ++i) {
        int c = c_[static_cast<size_t>(i)];
        if (c == 0) continue;
        if (!first) os << "+";
        if (i == 0) {
            os << c;
        } else {
            if (c != 1) os << c;
            os << "t";
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    if (first) return "0";
    return os.str();
}

// ---- maps and sets ----

FieldElement wp(const FieldElement& x) { return x.frobenius() + x; }

std::pair<FieldElement, FieldElement> trace_norm(const FieldElement& x) {
    if (!x.ctx() || x.ctx()->k() != 2)
        throw WrongDegree("trace_norm expects an element of GF(p^2)");
    FieldElement tr = wp(x);
    FieldElement nm = x.frobenius() * x;
    auto pf = x.ctx()->prime_field();
    // both land in the prime field
    if (tr.coeff(1) != 0 || nm.coeff(1) != 0)
        throw Error("trace/norm left the prime field"); // cannot happen
    return {pf->from_int(tr.coeff(0)), pf->from_int(nm.coeff(0))};
}

bool in_trace_zero(const FieldElement& x) {
    return (x.frobenius() + x).is_zero();
}

bool TraceZeroSet::contains(const FieldElement& x) const {
    return in_trace_zero(x);
}

TraceZeroSet trace_zero_set(const FieldCtxPtr& ctx) {
    if (ctx->k() != 2) throw WrongDegree("trace zero set lives in GF(p^2)");
    TraceZeroSet s;
    for (std::int64_t i = 0; i < ctx->q(); ++i) {
        FieldElement x = ctx->from_index(i);
        if (in_trace_zero(x)) s.elements.push_back(x);
    }
    return s;
}

std::vector<FieldElement> artin_schreier_solve(const FieldElement& w) {
    if (!w.ctx()) throw Error("uninitialized field element");
    const FieldCtx* ctx = w.ctx();
    std::vector<FieldElement> roots;
    for (std::int64_t i = 0; i < ctx->q(); ++i) {
        FieldElement y = ctx->from_index(i);
        if (wp(y) == w) roots.push_back(y);
    }
    return roots;
}

FieldElement eval_g(const FieldElement& x) {
    FieldElement den = wp(x);
    if (den.is_zero())
        throw PoleAtInput("g has a pole: x^p + x = 0 at x = " + x.str());
    return x.pow(x.ctx()->p() + 1) / den;
}

FieldElement eval_h(const FieldElement& x) {
    const FieldCtx* ctx = x.ctx();
    FieldElement xp1 = x.pow(ctx->p() - 1);
    FieldElement den = xp1 + ctx->one();
    if (den.is_zero())
        throw PoleAtInput("h has a pole: x^(p-1) + 1 = 0 at x = " + x.str());
    return (xp1 - ctx->one()) / den;
}

FieldElement eval_wgh(const FieldElement& x, NamedMap which) {
    switch (which) {
        case NamedMap::Wp: return wp(x);
        case NamedMap::G: return eval_g(x);
        case NamedMap::H: return eval_h(x);
    }
    throw Error("unknown map");
}

NormTraceReport check_norm_trace_identity(const FieldCtxPtr& ctx) {
    if (ctx->k() != 2) throw WrongDegree("identity check lives in GF(p^2)");
    NormTraceReport rep;
    rep.passed = true;
    for (std::int64_t i = 0; i < ctx->q(); ++i) {
        FieldElement x = ctx->from_index(i);
        if (in_trace_zero(x)) continue;
        auto [tr, nm] = trace_norm(x);
        FieldElement lhs = eval_g(x);
        FieldElement rhs = ctx->embed(nm / tr);
        bool in_prime_star = (lhs.coeff(1) == 0) && !lhs.is_zero();
        if (lhs != rhs || !in_prime_star) {
            rep.passed = false;
            if (!rep.counterexample) rep.counterexample = x;
        }
        ++rep.checked;
    }
    return rep;
}

} // namespace gstower::gf
