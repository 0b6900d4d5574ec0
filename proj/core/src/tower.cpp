#include "gstower/tower.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace gstower::tower {

using nlohmann::json;

GenId GenId::x(int level) {
    GenId g;
    g.kind = Kind::X;
    g.level = level;
    return g;
}

GenId GenId::u(std::vector<FieldElement> index) {
    GenId g;
    g.kind = Kind::U;
    g.level = static_cast<int>(index.size()) + 2;
    g.index = std::move(index);
    return g;
}

bool GenId::operator==(const GenId& o) const {
    if (kind != o.kind) return false;
    if (kind == Kind::X) return level == o.level;
    return index == o.index;
}

std::string GenId::str() const {
    if (kind == Kind::X) return "x" + std::to_string(level);
    std::string s = "u[";
    for (size_t i = 0; i < index.size(); ++i) {
        if (i) s += ",";
        s += index[i].str();
    }
    return s + "]";
}

std::string ParentRef::expr_str() const {
    if (shift.is_zero()) return parent.str();
    return parent.str() + "+" + shift.str();
}

std::string variant_str(Variant v) {
    switch (v) {
        case Variant::Gs: return "gs";
        case Variant::ClosureFull: return "closure-full";
        case Variant::ClosureReduced: return "closure-reduced";
    }
    return "?";
}

Variant variant_from_str(const std::string& s) {
    if (s == "gs") return Variant::Gs;
    if (s == "closure-full") return Variant::ClosureFull;
    if (s == "closure-reduced") return Variant::ClosureReduced;
    throw Error("unknown tower variant: " + s);
}

int TowerSpec::find(const GenId& id) const {
    for (size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].id == id) return static_cast<int>(i);
    return -1;
}

namespace {

void check_beta(const FieldElement& beta) {
    if (beta.is_zero()) throw BetaZero("beta must be nonzero");
    if (!gf::in_trace_zero(beta))
        throw BetaNotTraceZero("beta must satisfy beta^p = -beta, got " + beta.str());
}

// canonical order on index vectors: by length, then componentwise index
bool index_less(const std::vector<FieldElement>& a, const std::vector<FieldElement>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].index() != b[i].index()) return a[i].index() < b[i].index();
    }
    return false;
}

} // namespace

TowerSpec gs_tower(std::int64_t p, int n) {
    if (n < 1) throw Error("tower level must be >= 1");
    TowerSpec spec;
    spec.p_ = p;
    spec.n_ = n;
    spec.variant_ = Variant::Gs;
    spec.field_ = gf::make_field(p, 2); // throws NotOddPrime for bad p
    spec.gens_.push_back({GenId::x(1), std::nullopt});
    for (int i = 2; i <= n; ++i)
        spec.gens_.push_back({GenId::x(i), ParentRef{GenId::x(i - 1), spec.field_->zero()}});
    return spec;
}

TowerSpec closure_tower(std::int64_t p, int n, const FieldElement& beta, bool reduced) {
    if (n < 3) throw Error("closure models start at level 3");
    if (reduced && n != 3)
        throw UnsupportedReducedLevel(
            "reduced closure models are only constructed at level 3");
    TowerSpec spec;
    spec.p_ = p;
    spec.n_ = n;
    spec.variant_ = reduced ? Variant::ClosureReduced : Variant::ClosureFull;
    spec.field_ = gf::make_field(p, 2);
    check_beta(beta);
    if (beta.ctx() != spec.field_.get())
        throw MixedFields("beta must live in GF(p^2) for this p");
    spec.beta_ = beta;

    const FieldElement zero = spec.field_->zero();
    spec.gens_.push_back({GenId::x(1), std::nullopt});
    spec.gens_.push_back({GenId::x(2), ParentRef{GenId::x(1), zero}});

    if (reduced) {
        spec.gens_.push_back({GenId::u({zero}), ParentRef{GenId::x(2), zero}});
        spec.gens_.push_back({GenId::u({beta}), ParentRef{GenId::x(2), beta}});
        return spec;
    }

    auto km = gf::trace_zero_set(spec.field_).elements;
    std::vector<std::vector<FieldElement>> level = {{}};
    for (int m = 1; m <= n - 2; ++m) {
        std::vector<std::vector<FieldElement>> next;
        for (const auto& prefix : level) {
            for (const auto& c : km) {
                auto idx = prefix;
                idx.push_back(c);
                next.push_back(idx);
            }
        }
        std::sort(next.begin(), next.end(), index_less);
        for (const auto& idx : next) {
            GenId parent = (m == 1)
                               ? GenId::x(2)
                               : GenId::u(std::vector<FieldElement>(idx.begin(), idx.end() - 1));
            spec.gens_.push_back({GenId::u(idx), ParentRef{parent, idx.back()}});
        }
        level = std::move(next);
    }
    return spec;
}

TowerSpec closure_subsystem(std::int64_t p,
                            const std::vector<std::vector<FieldElement>>& indices) {
    TowerSpec spec;
    spec.p_ = p;
    spec.variant_ = Variant::ClosureFull;
    spec.field_ = gf::make_field(p, 2);
    const FieldElement zero = spec.field_->zero();

    std::vector<std::vector<FieldElement>> all;
    for (auto idx : indices) {
        while (!idx.empty()) {
            if (std::find(all.begin(), all.end(), idx) == all.end()) all.push_back(idx);
            idx.pop_back();
        }
    }
    std::sort(all.begin(), all.end(), index_less);

    int depth = 0;
    for (const auto& idx : all) depth = std::max<int>(depth, static_cast<int>(idx.size()));
    spec.n_ = depth + 2;

    spec.gens_.push_back({GenId::x(1), std::nullopt});
    spec.gens_.push_back({GenId::x(2), ParentRef{GenId::x(1), zero}});
    for (const auto& idx : all) {
        for (const auto& c : idx)
            if (!gf::in_trace_zero(c))
                throw BetaNotTraceZero("u-index entries must lie in K_-");
        GenId parent = (idx.size() == 1)
                           ? GenId::x(2)
                           : GenId::u(std::vector<FieldElement>(idx.begin(), idx.end() - 1));
        spec.gens_.push_back({GenId::u(idx), ParentRef{parent, idx.back()}});
    }
    return spec;
}

std::vector<GenId> dependency_order(const TowerSpec& spec) {
    const auto& gens = spec.generators();
    const size_t m = gens.size();
    // Kahn's algorithm; the "ready" pool is drained in declaration order,
    // which is already the canonical index order.
    std::vector<bool> placed(m, false);
    std::vector<GenId> order;
    order.reserve(m);
    for (size_t round = 0; round < m; ++round) {
        bool progressed = false;
        for (size_t i = 0; i < m; ++i) {
            if (placed[i]) continue;
            const auto& rel = gens[i].relation;
            bool ready = true;
            if (rel) {
                int j = spec.find(rel->parent);
                if (j < 0)
                    throw CyclicDependency("relation of " + gens[i].id.str() +
                                           " references unknown generator " +
                                           rel->parent.str());
                ready = placed[static_cast<size_t>(j)];
            }
            if (ready) {
                placed[i] = true;
                order.push_back(gens[i].id);
                progressed = true;
                break;
            }
        }
        if (!progressed)
            throw CyclicDependency("generator relations contain a cycle");
    }
    return order;
}

int classify_index(const std::vector<FieldElement>& c) {
    if (c.size() < 3)
        throw VectorTooShort("index vectors of length >= 3 expected, got " +
                             std::to_string(c.size()));
    const size_t len = c.size(); // len = n+1
    auto nz = [&](size_t i) { return !c[i - 1].is_zero(); };
    size_t s = 0;
    while (s < len && !nz(s + 1)) ++s; // number of leading zeros

    if (s == len) return 1;
    // type 2: only the last entry nonzero
    if (s == len - 1) return 2;
    // type 3: only the first entry nonzero
    if (nz(1)) {
        bool tail_zero = true;
        for (size_t i = 2; i <= len; ++i)
            if (nz(i)) { tail_zero = false; break; }
        if (tail_zero) return 3;
    }
    // types 8/9: exactly the entries 1..n-1 zero, c_n nonzero
    if (s == len - 2 && nz(len - 1)) return nz(len) ? 9 : 8;
    // types 6/7: c_1..c_s zero, c_{s+1} nonzero, s >= 1, n+1-s >= 2
    if (s >= 1 && len - s >= 2) return nz(len) ? 7 : 6;
    // types 4/5: c_1 nonzero
    if (nz(1)) return nz(len) ? 5 : 4;
    throw Error("unclassifiable index vector"); // unreachable
}

std::string TowerSpec::to_json() const {
    json j;
    j["p"] = p_;
    j["n"] = n_;
    j["variant"] = variant_str(variant_);
    j["beta"] = beta_ ? json(beta_->str()) : json(nullptr);
    json gens = json::array();
    for (const auto& g : gens_) {
        json e;
        e["id"] = g.id.str();
        if (g.relation) {
            e["relation"] = {{"parent_expr", g.relation->expr_str()},
                             {"parent", g.relation->parent.str()},
                             {"shift", g.relation->shift.str()}};
        }
        gens.push_back(e);
    }
    j["generators"] = gens;
    return j.dump(2);
}

namespace {

GenId parse_gen_id(const std::string& s, const FieldCtxPtr& field) {
    if (s.size() >= 2 && s[0] == 'x') {
        return GenId::x(std::stoi(s.substr(1)));
    }
    if (s.size() >= 3 && s[0] == 'u' && s[1] == '[' && s.back() == ']') {
        std::vector<FieldElement> idx;
        std::string body = s.substr(2, s.size() - 3);
        std::stringstream ss(body);
        std::string part;
        while (std::getline(ss, part, ','))
            idx.push_back(field->parse(part));
        return GenId::u(std::move(idx));
    }
    throw gstower::ParseError("bad generator id: " + s);
}

} // namespace

TowerSpec TowerSpec::from_json(const std::string& text) {
    json j = json::parse(text);
    TowerSpec spec;
    spec.p_ = j.at("p").get<std::int64_t>();
    spec.n_ = j.at("n").get<int>();
    spec.variant_ = variant_from_str(j.at("variant").get<std::string>());
    spec.field_ = gf::make_field(spec.p_, 2);
    if (!j.at("beta").is_null())
        spec.beta_ = spec.field_->parse(j.at("beta").get<std::string>());
    for (const auto& e : j.at("generators")) {
        GenDecl d;
        d.id = parse_gen_id(e.at("id").get<std::string>(), spec.field_);
        if (e.contains("relation")) {
            ParentRef r;
            r.parent = parse_gen_id(e.at("relation").at("parent").get<std::string>(), spec.field_);
            r.shift = spec.field_->parse(e.at("relation").at("shift").get<std::string>());
            d.relation = r;
        }
        spec.gens_.push_back(std::move(d));
    }
    return spec;
}

} // namespace gstower::tower
