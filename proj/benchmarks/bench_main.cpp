#include <benchmark/benchmark.h>

#include "gstower/field.hpp"
#include "gstower/points.hpp"
#include "gstower/symbolic.hpp"
#include "gstower/tower.hpp"

using namespace gstower;

static void BM_FieldMul(benchmark::State& state) {
    auto F = gf::make_field(state.range(0), 2);
    auto a = F->from_index(F->q() - 2);
    auto b = F->from_index(F->q() / 2 + 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(a = a * b);
    }
}
BENCHMARK(BM_FieldMul)->Arg(3)->Arg(5)->Arg(7);

static void BM_ChainFiber(benchmark::State& state) {
    auto spec = tower::gs_tower(3, static_cast<int>(state.range(0)));
    auto base = spec.field()->one();
    for (auto _ : state) {
        auto rep = points::enumerate_fiber(spec, base, false);
        benchmark::DoNotOptimize(rep.count);
    }
    state.SetItemsProcessed(state.iterations() * (1LL << (2 * (state.range(0) - 1))));
}
BENCHMARK(BM_ChainFiber)->Arg(4)->Arg(6)->Arg(8);

static void BM_ClosureReducedCensus(benchmark::State& state) {
    auto F = gf::make_field(state.range(0), 2);
    auto beta = gf::trace_zero_set(F).elements[1];
    auto spec = tower::closure_tower(state.range(0), 3, beta, true);
    for (auto _ : state) {
        auto census = points::count_split_points(spec, false);
        benchmark::DoNotOptimize(census.total);
    }
}
BENCHMARK(BM_ClosureReducedCensus)->Arg(3)->Arg(5)->Arg(7);

static void BM_ClosureFullSplitValues(benchmark::State& state) {
    auto F9 = gf::make_field(3, 2);
    auto spec = tower::closure_tower(3, static_cast<int>(state.range(0)), F9->gen(), false);
    for (auto _ : state) {
        auto rep = points::verify_split_values(spec);
        benchmark::DoNotOptimize(rep.points);
    }
}
BENCHMARK(BM_ClosureFullSplitValues)->Arg(3)->Arg(4);

static void BM_KernelWpReduce(benchmark::State& state) {
    auto F9 = gf::make_field(3, 2);
    auto spec = tower::closure_tower(3, 4, F9->gen(), false);
    auto rs = sym::RelationSystem::build(spec);
    auto u = rs->generator(tower::GenId::u({F9->gen(), F9->gen()}));
    for (auto _ : state) {
        auto w = rs->wp_apply(u);
        benchmark::DoNotOptimize(w.num.is_zero());
    }
}
BENCHMARK(BM_KernelWpReduce);

static void BM_KernelEquals(benchmark::State& state) {
    auto rs = sym::RelationSystem::build(tower::gs_tower(3, 3));
    auto lhs = rs->wp_apply(rs->generator(tower::GenId::x(3)));
    auto rhs = rs->g_apply(rs->generator(tower::GenId::x(2)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(rs->equals(lhs, rhs));
    }
}
BENCHMARK(BM_KernelEquals);

BENCHMARK_MAIN();
