#include <benchmark/benchmark.h>

#include "confalg/basis.hpp"
#include "confalg/series.hpp"
#include "confalg/stability.hpp"
#include "confalg/strategy.hpp"
#include "confalg/words.hpp"

using namespace confalg;

static void BM_DimCounting(benchmark::State& state) {
    GeneratorSet gs = GeneratorSet::for_params(Prime(3), 2);
    long long k = state.range(0);
    for (auto _ : state) {
        std::uint64_t total = 0;
        for (long long i = 0; i <= 20; ++i) total += dim(gs, Bidegree{i, k});
        benchmark::DoNotOptimize(total);
    }
}
BENCHMARK(BM_DimCounting)->Arg(20)->Arg(40)->Arg(60);

static void BM_BasisEnumeration(benchmark::State& state) {
    GeneratorSet gs = GeneratorSet::for_params(Prime(2), 2);
    Bidegree b{static_cast<long long>(state.range(0)), 2 * state.range(0)};
    for (auto _ : state) {
        auto basis = enumerate_basis(gs, b);
        benchmark::DoNotOptimize(basis);
    }
}
BENCHMARK(BM_BasisEnumeration)->Arg(8)->Arg(12)->Arg(16);

static void BM_PoincareGrid(benchmark::State& state) {
    GeneratorSet gs = GeneratorSet::for_params(Prime(5), 2);
    for (auto _ : state) {
        Series2 s = poincare(gs, state.range(0), 2 * state.range(0));
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_PoincareGrid)->Arg(10)->Arg(20);

static void BM_IsoRange(benchmark::State& state) {
    GeneratorSet gs = GeneratorSet::for_params(Prime(3), 2);
    for (auto _ : state) {
        VerifyReport rep = verify_iso_range(gs, 0, state.range(0), 1);
        benchmark::DoNotOptimize(rep);
    }
}
BENCHMARK(BM_IsoRange)->Arg(20)->Arg(40);

static void BM_BracketCertificate(benchmark::State& state) {
    ExprContext ctx{Prime(3), 2};
    ExprPtr y2 = expr_gen(ctx, "y2");
    for (auto _ : state) {
        ProofTrace t = check_point_bracket(y2);
        benchmark::DoNotOptimize(t);
    }
}
BENCHMARK(BM_BracketCertificate);

static void BM_TraceReplay(benchmark::State& state) {
    ExprContext ctx{Prime(3), 2};
    std::string lines = check_point_bracket(expr_gen(ctx, "y2")).to_json_lines();
    for (auto _ : state) {
        ReplayResult r = replay_trace(lines);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_TraceReplay);

static void BM_WordClassification(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        WordRangeReport rep = verify_word_ranges(n, 2, 64);
        benchmark::DoNotOptimize(rep);
    }
}
BENCHMARK(BM_WordClassification)->Arg(3)->Arg(4)->Arg(5);

BENCHMARK_MAIN();
