#include <goodness/adjuster.hpp>
#include <goodness/expansion.hpp>
#include <goodness/multipartite.hpp>
#include <goodness/navigation.hpp>
#include <goodness/ramsey.hpp>

#include <benchmark/benchmark.h>

#include <random>

using namespace goodness;

namespace
{
    auto gnp(std::size_t n, double p, std::uint64_t seed) -> Graph
    {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> coin(0, 1);
        Graph g(n);
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v)
                if (coin(rng) < p)
                    g.add_edge(u, v);
        return g;
    }
}

static void shortest_odd_cycle_gnp(benchmark::State & state)
{
    auto n = static_cast<std::size_t>(state.range(0));
    auto g = gnp(n, 8.0 / static_cast<double>(n), 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(shortest_odd_cycle_within(g, g.vertices()));
}
BENCHMARK(shortest_odd_cycle_gnp)->Arg(100)->Arg(400)->Arg(1000);

static void disjoint_paths_gnp(benchmark::State & state)
{
    auto n = static_cast<std::size_t>(state.range(0));
    auto g = gnp(n, 0.1, 5);
    VertexSet a(n), b(n);
    for (Vertex v = 0; v < 20; ++v) {
        a.insert(v);
        b.insert(n - 1 - v);
    }
    for (auto _ : state)
        benchmark::DoNotOptimize(disjoint_paths(g, a, b, 17));
}
BENCHMARK(disjoint_paths_gnp)->Arg(200)->Arg(1000);

static void complement_contains_k222(benchmark::State & state)
{
    auto g = gnp(static_cast<std::size_t>(state.range(0)), 0.8, 7);
    auto spec = MultipartiteSpec::parse("K_{2,2,2}");
    for (auto _ : state)
        benchmark::DoNotOptimize(complement_contains(g, spec, Budget::nodes(1'000'000)));
}
BENCHMARK(complement_contains_k222)->Arg(50)->Arg(200);

static void check_expansion_cap(benchmark::State & state)
{
    auto g = gnp(200, 0.5, 11);
    ExpansionParams p{4, 1, 1.5, 3, 10};
    auto cap = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(check_expansion(g, g.vertices(), p, cap));
}
BENCHMARK(check_expansion_cap)->Arg(4)->Arg(8);

static void extract_expander_gnp(benchmark::State & state)
{
    auto n = static_cast<std::size_t>(state.range(0));
    auto g = gnp(n, 0.5, 13);
    auto spec = MultipartiteSpec::parse("K_3");
    auto params = ExtractionParams::fitted(ConstantsLedger::desk(), n, spec);
    for (auto _ : state)
        benchmark::DoNotOptimize(extract_expander(g, spec, params));
}
BENCHMARK(extract_expander_gnp)->Arg(200)->Arg(500)->Unit(benchmark::kMillisecond);

static void adjuster_routes(benchmark::State & state)
{
    // r triangles chained by single-vertex connectors
    auto r = static_cast<std::size_t>(state.range(0));
    Adjuster adj;
    for (std::size_t i = 0; i < r; ++i) {
        Vertex base = static_cast<Vertex>(4 * i);
        adj.cycles.push_back({Cycle{{base, base + 1, base + 2}}, base, base + 1});
    }
    for (std::size_t i = 0; i < r; ++i) {
        Vertex base = static_cast<Vertex>(4 * i);
        adj.paths.push_back(Path{{base + 1, base + 3, static_cast<Vertex>(4 * ((i + 1) % r))}});
    }
    adj.cycle_cap = 3;
    for (auto _ : state)
        benchmark::DoNotOptimize(routes(adj));
}
BENCHMARK(adjuster_routes)->Arg(4)->Arg(10)->Arg(14);

static void exact_ramsey_c4_k3(benchmark::State & state)
{
    auto spec = MultipartiteSpec::parse("K_3");
    for (auto _ : state)
        benchmark::DoNotOptimize(exact_ramsey(static_cast<std::size_t>(state.range(0)), spec));
}
BENCHMARK(exact_ramsey_c4_k3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
