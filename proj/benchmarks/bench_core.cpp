#include <benchmark/benchmark.h>

#include <random>

#include "soficlab/canonical.hpp"
#include "soficlab/dynsys.hpp"
#include "soficlab/search.hpp"

using namespace soficlab;

namespace {

RootedBall random_rooted_graph(std::mt19937_64& rng, std::uint32_t n) {
    std::vector<LabeledDigraph::EdgeTriple> edges;
    for (std::uint32_t v = 0; v < n; ++v) {
        for (const char* label : {"a", "b"}) {
            if (rng() % 5 < 3) edges.emplace_back(v, label, (std::uint32_t)(rng() % n));
        }
    }
    return RootedBall{LabeledDigraph(n, edges), 0, n, MetricMode::directed};
}

void BM_NormalizeBicyclic(benchmark::State& state) {
    MonoidSpec m = MonoidSpec::bicyclic();
    std::mt19937_64 rng(1);
    Word w;
    for (int i = 0; i < 64; ++i) w.letters.push_back((std::uint32_t)(rng() % 2));
    for (auto _ : state) {
        benchmark::DoNotOptimize(m.normalize(w));
    }
}
BENCHMARK(BM_NormalizeBicyclic);

void BM_NormalizeByRewriting(benchmark::State& state) {
    MonoidSpec m = MonoidSpec::bicyclic();
    std::mt19937_64 rng(1);
    Word w;
    for (int i = 0; i < 64; ++i) w.letters.push_back((std::uint32_t)(rng() % 2));
    for (auto _ : state) {
        benchmark::DoNotOptimize(m.normalize_by_rewriting(w));
    }
}
BENCHMARK(BM_NormalizeByRewriting);

void BM_CanonicalRandomGraph(benchmark::State& state) {
    std::mt19937_64 rng(7);
    std::vector<RootedBall> corpus;
    for (int i = 0; i < 64; ++i) corpus.push_back(random_rooted_graph(rng, (std::uint32_t)state.range(0)));
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(canonical_form(corpus[i++ % corpus.size()]));
    }
}
BENCHMARK(BM_CanonicalRandomGraph)->Arg(7)->Arg(32)->Arg(128);

void BM_CanonicalCayleyBall(benchmark::State& state) {
    RootedBall ball = cayley_ball(MonoidSpec::bicyclic(), (std::uint32_t)state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(canonical_form(ball));
    }
}
BENCHMARK(BM_CanonicalCayleyBall)->Arg(4)->Arg(8);

void BM_ExhaustiveSearchBicyclic(benchmark::State& state) {
    MonoidSpec m = MonoidSpec::bicyclic();
    std::vector<Word> K = {Word{}, m.parse_word("a"), m.parse_word("b"), m.parse_word("ba")};
    std::uint32_t n = (std::uint32_t)state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(search_exhaustive(m, K, n, 50'000'000));
    }
}
BENCHMARK(BM_ExhaustiveSearchBicyclic)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_PatternCensus(benchmark::State& state) {
    ShiftApproximation a = build_approximation(ShiftSystem{2, 1}, 2, (int)state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(census_pattern_measure(a, 1));
    }
}
BENCHMARK(BM_PatternCensus)->Arg(6)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);

void BM_ShiftPatternLaw(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(shift_pattern_measure(ShiftSystem{2, 1}, (int)state.range(0)));
    }
}
BENCHMARK(BM_ShiftPatternLaw)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
