#include "gstower/points.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace gstower::points {

namespace {

// Per-field lookup tables driving the fiber walks.  Values are element
// indices in the canonical order.
struct FiberTables {
    std::int64_t q = 0;
    std::int64_t p = 0;
    std::vector<char> kminus;        // q
    std::vector<std::int32_t> add;   // q*q
    std::vector<std::int32_t> gval;  // q, -1 at poles
    std::vector<std::int32_t> roots; // q*p, roots of y^p+y = w, -1 padded
    std::vector<std::int8_t> nroots; // q
    std::vector<char> shift_ok;      // q: every g(v+a), a in K_-, lies in F_p^*
};

std::shared_ptr<const FiberTables> fiber_tables(const gf::FieldCtxPtr& ctx) {
    static std::mutex mu;
    static std::map<const gf::FieldCtx*, std::shared_ptr<const FiberTables>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(ctx.get());
        if (it != cache.end()) return it->second;
    }
    auto t = std::make_shared<FiberTables>();
    const std::int64_t q = ctx->q();
    const std::int64_t p = ctx->p();
    if (p > 13 || q > 1024)
        throw Error("fiber enumeration supports p <= 13 over GF(p^2)");
    t->q = q;
    t->p = p;
    t->kminus.assign(static_cast<size_t>(q), 0);
    t->add.assign(static_cast<size_t>(q * q), 0);
    t->gval.assign(static_cast<size_t>(q), -1);
    t->roots.assign(static_cast<size_t>(q * p), -1);
    t->nroots.assign(static_cast<size_t>(q), 0);
    t->shift_ok.assign(static_cast<size_t>(q), 0);

    std::vector<FieldElement> elems;
    elems.reserve(static_cast<size_t>(q));
    for (std::int64_t i = 0; i < q; ++i) elems.push_back(ctx->from_index(i));

    for (std::int64_t i = 0; i < q; ++i) {
        t->kminus[static_cast<size_t>(i)] = gf::in_trace_zero(elems[static_cast<size_t>(i)]);
        for (std::int64_t j = 0; j < q; ++j)
            t->add[static_cast<size_t>(i * q + j)] =
                static_cast<std::int32_t>((elems[static_cast<size_t>(i)] + elems[static_cast<size_t>(j)]).index());
    }
    for (std::int64_t i = 0; i < q; ++i) {
        if (t->kminus[static_cast<size_t>(i)]) continue;
        t->gval[static_cast<size_t>(i)] =
            static_cast<std::int32_t>(gf::eval_g(elems[static_cast<size_t>(i)]).index());
    }
    for (std::int64_t w = 0; w < q; ++w) {
        auto rs = gf::artin_schreier_solve(elems[static_cast<size_t>(w)]);
        if (rs.size() > static_cast<size_t>(p)) throw Error("root set larger than p");
        t->nroots[static_cast<size_t>(w)] = static_cast<std::int8_t>(rs.size());
        for (size_t r = 0; r < rs.size(); ++r)
            t->roots[static_cast<size_t>(w * p + static_cast<std::int64_t>(r))] =
                static_cast<std::int32_t>(rs[r].index());
    }
    auto km = gf::trace_zero_set(ctx).elements;
    for (std::int64_t i = 0; i < q; ++i) {
        if (t->kminus[static_cast<size_t>(i)]) continue;
        bool ok = true;
        for (const auto& a : km) {
            FieldElement v = elems[static_cast<size_t>(i)] + a;
            FieldElement w = gf::eval_g(v); // v outside K_-, no pole
            if (w.is_zero() || w.coeff(1) != 0) { ok = false; break; }
        }
        t->shift_ok[static_cast<size_t>(i)] = ok;
    }
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.emplace(ctx.get(), std::move(t));
    return it->second;
}

// Compiled relation layout: for spec generator slot i >= 1, the parent's
// slot and the shift index.
struct Program {
    int m = 0; // algebraic generators
    std::vector<int> parent;       // size m, slot of the parent (0 = x1)
    std::vector<std::int32_t> shift; // size m, index of the shift element
};

Program compile(const TowerSpec& spec) {
    Program prog;
    prog.m = static_cast<int>(spec.algebraic_generators());
    const auto& gens = spec.generators();
    for (size_t i = 1; i < gens.size(); ++i) {
        if (!gens[i].relation)
            throw CyclicDependency("generator without a relation: " + gens[i].id.str());
        int pslot = spec.find(gens[i].relation->parent);
        if (pslot < 0 || pslot >= static_cast<int>(i))
            throw CyclicDependency("relation of " + gens[i].id.str() +
                                   " does not reference an earlier generator");
        prog.parent.push_back(pslot);
        prog.shift.push_back(static_cast<std::int32_t>(gens[i].relation->shift.index()));
    }
    return prog;
}

// Iterative DFS over the solution tree.  node_visit(gen_slot, value_index)
// is called once per assigned node; leaf_visit(values) once per full point.
template <typename NodeVisit, typename LeafVisit>
std::uint64_t walk_fiber(const Program& prog, const FiberTables& tb, std::int32_t base,
                         bool& complete, NodeVisit&& node_visit, LeafVisit&& leaf_visit) {
    complete = true;
    if (tb.kminus[static_cast<size_t>(base)]) {
        complete = false;
        return 0;
    }
    const int m = prog.m;
    if (m == 0) {
        std::vector<std::int32_t> vals{base};
        leaf_visit(vals);
        return 1;
    }
    std::uint64_t count = 0;
    std::vector<std::int32_t> vals(static_cast<size_t>(m) + 1, -1);
    vals[0] = base;
    // children[d] are the roots available at depth d, pos[d] the cursor
    std::vector<std::array<std::int32_t, 16>> children(static_cast<size_t>(m));
    std::vector<int> nchild(static_cast<size_t>(m), 0);
    std::vector<int> pos(static_cast<size_t>(m), 0);

    auto expand = [&](int d) -> bool {
        std::int32_t pv = vals[static_cast<size_t>(prog.parent[static_cast<size_t>(d)])];
        std::int32_t v = tb.add[static_cast<size_t>(std::int64_t(pv) * tb.q +
                                                    prog.shift[static_cast<size_t>(d)])];
        if (tb.kminus[static_cast<size_t>(v)]) { complete = false; return false; }
        std::int32_t w = tb.gval[static_cast<size_t>(v)];
        int n = tb.nroots[static_cast<size_t>(w)];
        if (n != tb.p) complete = false;
        if (n == 0) return false;
        for (int r = 0; r < n; ++r)
            children[static_cast<size_t>(d)][static_cast<size_t>(r)] =
                tb.roots[static_cast<size_t>(std::int64_t(w) * tb.p + r)];
        nchild[static_cast<size_t>(d)] = n;
        pos[static_cast<size_t>(d)] = 0;
        return true;
    };

    int d = 0;
    if (!expand(0)) return 0;
    while (d >= 0) {
        if (pos[static_cast<size_t>(d)] >= nchild[static_cast<size_t>(d)]) {
            --d;
            if (d >= 0) ++pos[static_cast<size_t>(d)];
            continue;
        }
        std::int32_t y = children[static_cast<size_t>(d)][static_cast<size_t>(pos[static_cast<size_t>(d)])];
        vals[static_cast<size_t>(d) + 1] = y;
        node_visit(d + 1, y);
        if (d + 1 == m) {
            ++count;
            leaf_visit(vals);
            ++pos[static_cast<size_t>(d)];
        } else {
            if (expand(d + 1)) {
                ++d;
            } else {
                ++pos[static_cast<size_t>(d)];
            }
        }
    }
    return count;
}

FiberReport run_fiber(const TowerSpec& spec, const FieldElement& base, bool collect) {
    auto tb = fiber_tables(spec.field());
    Program prog = compile(spec);
    FiberReport rep;
    rep.base = base;
    bool complete = false;
    bool outside = true;
    auto node_visit = [&](int /*slot*/, std::int32_t v) {
        if (tb->kminus[static_cast<size_t>(v)]) outside = false;
    };
    auto leaf_visit = [&](const std::vector<std::int32_t>& vals) {
        if (!collect) return;
        PointRecord pr;
        pr.values.reserve(vals.size());
        for (auto idx : vals) pr.values.push_back(spec.field()->from_index(idx));
        rep.points.push_back(std::move(pr));
    };
    rep.count = walk_fiber(prog, *tb, static_cast<std::int32_t>(base.index()), complete,
                           node_visit, leaf_visit);
    rep.split = complete;
    rep.all_outside_kminus = outside && !gf::in_trace_zero(base);
    return rep;
}

} // namespace

const FieldElement& PointRecord::value_of(const TowerSpec& spec,
                                          const tower::GenId& id) const {
    int slot = spec.find(id);
    if (slot < 0) throw Error("generator not in this tower: " + id.str());
    return values.at(static_cast<size_t>(slot));
}

std::vector<FieldElement> next_coordinate(const FieldElement& x) {
    if (gf::in_trace_zero(x))
        throw PoleAtInput("base coordinate lies in K_-: " + x.str());
    return gf::artin_schreier_solve(gf::eval_g(x));
}

FiberReport enumerate_fiber(const TowerSpec& spec, const FieldElement& base, bool collect) {
    if (base.ctx() != spec.field().get())
        throw MixedFields("base value must live in GF(p^2) of the tower");
    return run_fiber(spec, base, collect);
}

Census count_split_points(const TowerSpec& spec, bool parallel) {
    const auto& ctx = spec.field();
    std::vector<FieldElement> bases;
    for (std::int64_t i = 0; i < ctx->q(); ++i) {
        FieldElement x = ctx->from_index(i);
        if (!gf::in_trace_zero(x)) bases.push_back(x);
    }
    std::vector<FiberReport> reports(bases.size());
    if (parallel) {
        std::vector<std::future<FiberReport>> futs;
        futs.reserve(bases.size());
        for (const auto& b : bases)
            futs.push_back(std::async(std::launch::async,
                                      [&spec, b] { return run_fiber(spec, b, false); }));
        for (size_t i = 0; i < futs.size(); ++i) reports[i] = futs[i].get();
    } else {
        for (size_t i = 0; i < bases.size(); ++i) reports[i] = run_fiber(spec, bases[i], false);
    }
    Census census;
    census.all_split = true;
    for (const auto& r : reports) {
        census.rows.push_back({r.base, r.count, r.split, r.all_outside_kminus});
        census.total += r.count;
        census.all_split = census.all_split && r.split;
    }
    return census;
}

DegreeResult degree_via_fiber(const TowerSpec& spec) {
    const auto& ctx = spec.field();
    for (std::int64_t i = 0; i < ctx->q(); ++i) {
        FieldElement x = ctx->from_index(i);
        if (gf::in_trace_zero(x)) continue;
        FiberReport rep = run_fiber(spec, x, false);
        if (rep.split) {
            bool exact = spec.variant() != tower::Variant::ClosureFull;
            return {exact, rep.count};
        }
    }
    throw NoSplitFiber("no completely split fiber over the base line");
}

SplitValuesReport verify_split_values(const TowerSpec& spec) {
    if (spec.variant() == tower::Variant::Gs)
        throw Error("split-value verification applies to closure models");
    auto tb = fiber_tables(spec.field());
    Program prog = compile(spec);
    const auto& ctx = spec.field();

    SplitValuesReport rep;
    rep.passed = true;
    for (std::int64_t i = 0; i < ctx->q(); ++i) {
        FieldElement base = ctx->from_index(i);
        if (gf::in_trace_zero(base)) continue;
        bool complete = false;
        auto node_visit = [&](int slot, std::int32_t v) {
            ++rep.values_checked;
            if (tb->kminus[static_cast<size_t>(v)] || !tb->shift_ok[static_cast<size_t>(v)]) {
                if (rep.passed) {
                    std::ostringstream os;
                    os << "base " << base.str() << ", generator "
                       << spec.generators()[static_cast<size_t>(slot)].id.str() << " = "
                       << ctx->from_index(v).str();
                    rep.counterexample = os.str();
                }
                rep.passed = false;
            }
        };
        auto leaf_visit = [&](const std::vector<std::int32_t>&) { ++rep.points; };
        walk_fiber(prog, *tb, static_cast<std::int32_t>(i), complete, node_visit, leaf_visit);
        if (!complete) {
            rep.passed = false;
            if (rep.counterexample.empty())
                rep.counterexample = "fiber over " + base.str() + " is not completely split";
        }
    }
    return rep;
}

} // namespace gstower::points
