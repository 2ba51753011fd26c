#include <benchmark/benchmark.h>

#include "chromathresh/detect.hpp"
#include "chromathresh/graph.hpp"
#include "chromathresh/matching.hpp"
#include "chromathresh/moments.hpp"
#include "chromathresh/oracle.hpp"

using namespace chromathresh;

static void BM_SampleColoring(benchmark::State& state) {
    const Vertex n = static_cast<Vertex>(state.range(0));
    std::uint64_t trial = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_coloring(n, 16, SeedSpec{1, trial++}));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(edge_count(n)));
}
BENCHMARK(BM_SampleColoring)->Arg(50)->Arg(200);

static void BM_DetectMonoMatching(benchmark::State& state) {
    // near the k=2 threshold for n=40 (T = 274170)
    const ColoredGraph g = sample_coloring(40, 27417, SeedSpec{3, 0});
    const PropertyQuery q{SubgraphKind::Matching, Chromatic::Mono, 2};
    for (auto _ : state) benchmark::DoNotOptimize(detect(g, q));
}
BENCHMARK(BM_DetectMonoMatching);

static void BM_DetectMonoClique(benchmark::State& state) {
    const Vertex n = static_cast<Vertex>(state.range(0));
    const std::uint32_t k = static_cast<std::uint32_t>(state.range(1));
    const ColoredGraph g = sample_coloring(n, 2, SeedSpec{4, 0});
    const PropertyQuery q{SubgraphKind::Clique, Chromatic::Mono, k};
    for (auto _ : state) benchmark::DoNotOptimize(detect(g, q));
}
BENCHMARK(BM_DetectMonoClique)->Args({100, 16})->Args({200, 18});

static void BM_DetectHeteroMatching(benchmark::State& state) {
    const ColoredGraph g = sample_coloring(60, 7, SeedSpec{5, 0});
    const PropertyQuery q{SubgraphKind::Matching, Chromatic::Hetero, 7};
    for (auto _ : state) benchmark::DoNotOptimize(detect(g, q));
}
BENCHMARK(BM_DetectHeteroMatching);

static void BM_MaxMatching(benchmark::State& state) {
    // one color class of K_60^3: a dense random subgraph
    const ColoredGraph g = sample_coloring(60, 3, SeedSpec{6, 0});
    std::vector<VertexPair> edges;
    for (EdgeIndex e : color_class(g, 0)) edges.push_back(edge_endpoints(e, g.n));
    for (auto _ : state) benchmark::DoNotOptimize(max_matching(edges, g.n));
}
BENCHMARK(BM_MaxMatching);

static void BM_ExpectedMonoLogSpace(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(expected_mono(1000000, 3, 288539528160708608ull));
}
BENCHMARK(BM_ExpectedMonoLogSpace);

static void BM_ExactStatsSmall(benchmark::State& state) {
    const PropertyQuery q{SubgraphKind::Matching, Chromatic::Mono, 2};
    for (auto _ : state) benchmark::DoNotOptimize(exact_stats(5, 2, q));
}
BENCHMARK(BM_ExactStatsSmall);

BENCHMARK_MAIN();
