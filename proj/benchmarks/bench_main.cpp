#include <benchmark/benchmark.h>

#include <dgcell/cells.hpp>

#include "test_algebras.hpp"

using namespace dgcell;

namespace {

TwistedComplex cone_of_identity(const TwistedComplex& x) {
    return tc_cone(x, x, GradedMap::identity(tot(x).bim.space));
}

void bench_realize(benchmark::State& state) {
    DgAlgebra a = testalg::a2();
    GenList gl = {Gen::proj(0, 1), Gen::proj(1, 0), Gen::proj(0, 0)};
    for (auto _ : state) {
        CatContext ctx(a);  // fresh context: realize() caches per instance
        benchmark::DoNotOptimize(ctx.realize(gl));
    }
}
BENCHMARK(bench_realize);

void bench_oracle_hom(benchmark::State& state) {
    DgAlgebra a = testalg::a2();
    GenList src = {Gen::proj(0, 1)};
    GenList tgt = {Gen::proj(1, 0), Gen::proj(0, 1)};
    for (auto _ : state) {
        CatContext ctx(a);
        benchmark::DoNotOptimize(ctx.hom(src, tgt));
    }
}
BENCHMARK(bench_oracle_hom);

void bench_tc_expand_full(benchmark::State& state) {
    CatContext ctx(testalg::lambda0());
    TwistedComplex cone =
        cone_of_identity(tc_single(ctx, {Gen::proj(0, 0), Gen::proj(0, 0)}));
    for (auto _ : state) benchmark::DoNotOptimize(tc_expand_full(cone));
}
BENCHMARK(bench_tc_expand_full);

void bench_hcompose(benchmark::State& state) {
    CatContext ctx(testalg::a2());
    TwistedComplex x = cone_of_identity(tc_single(ctx, {Gen::proj(0, 1)}));
    TwistedComplex y = cone_of_identity(tc_single(ctx, {Gen::proj(1, 0)}));
    for (auto _ : state) benchmark::DoNotOptimize(tc_hcompose(x, y));
}
BENCHMARK(bench_hcompose);

void bench_enumerate_cells(benchmark::State& state) {
    DgAlgebra a = testalg::a2();
    for (auto _ : state) {
        CatContext ctx(a);
        benchmark::DoNotOptimize(enumerate_cells(ctx));
    }
}
BENCHMARK(bench_enumerate_cells);

}  // namespace

BENCHMARK_MAIN();
