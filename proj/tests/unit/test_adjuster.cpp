#include "generators.hpp"
#include "oracles.hpp"

#include <goodness/adjuster.hpp>
#include <goodness/errors.hpp>

#include <doctest.h>

#include <cmath>
#include <set>

using namespace goodness;

namespace
{
    // v=0, a=1, w=2, x=3: triangle v-a-w with connector w-x-v
    auto triangle_host() -> Graph
    {
        std::vector<Edge> e{{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 0}};
        return Graph::from_edges(4, e);
    }

    auto triangle_adjuster() -> Adjuster
    {
        Adjuster a;
        a.cycles.push_back(ShortCycle{Cycle{{0, 1, 2}}, 0, 2});
        a.paths.push_back(Path{{2, 3, 0}});
        return a;
    }

    auto longest_connector(const Adjuster & a) -> std::size_t
    {
        std::size_t best = a.loop ? a.loop->length() : 0;
        for (auto & p : a.paths)
            best = std::max(best, p.length());
        return best;
    }

    /// Cycle on [base, base + len) plus optional extra edges.
    void add_cycle(Graph & g, Vertex base, std::size_t len)
    {
        for (std::size_t i = 0; i < len; ++i)
            g.add_edge(base + static_cast<Vertex>(i), base + static_cast<Vertex>((i + 1) % len));
    }

    auto cycle_on(Vertex base, std::size_t len) -> Cycle
    {
        Cycle c;
        for (std::size_t i = 0; i < len; ++i)
            c.vertices.push_back(base + static_cast<Vertex>(i));
        return c;
    }
}

TEST_CASE("validation")
{
    auto g = triangle_host();
    CHECK(validate(g, triangle_adjuster()).ok());

    auto reuse = triangle_adjuster();
    reuse.paths[0] = Path{{2, 1, 0}};
    CHECK_FALSE(validate(g, reuse).ok());

    auto sq = Graph::cycle(6);
    sq.add_edge(0, 3);
    Adjuster even;
    even.cycles.push_back(ShortCycle{Cycle{{0, 1, 2, 3}}, 0, 2});
    even.paths.push_back(Path{{2, 1, 0}});
    CHECK_FALSE(validate(sq, even).ok());

    CHECK(validate(Graph::cycle(9), Adjuster::from_cycle(cycle_on(0, 9))).ok());
    CHECK(adjuster_from_json(to_json(triangle_adjuster())).paths == triangle_adjuster().paths);
}

TEST_CASE("routes of the triangle adjuster")
{
    auto adj = triangle_adjuster();
    CHECK(adj.length() == 4);
    auto all = routes(adj);
    REQUIRE(all.size() == 2);
    std::set<std::size_t> lengths;
    for (auto & r : all) {
        lengths.insert(r.cycle.length());
        CHECK(is_cycle_in(triangle_host(), r.cycle));
    }
    CHECK(lengths == std::set<std::size_t>{3, 4});
    CHECK(route_of_length(adj, 3).length() == 3);
    CHECK(route_of_length(adj, 4).length() == 4);
    CHECK_THROWS_AS(route_of_length(adj, 5), PreconditionError);

    auto loop = Adjuster::from_cycle(cycle_on(0, 11));
    auto one = routes(loop);
    REQUIRE(one.size() == 1);
    CHECK(one[0].cycle.length() == 11);
}

TEST_CASE("route law on random adjusters")
{
    gen::Rng rng(99);
    gen::AdjusterShape five;
    five.max_cycle = 5;
    for (int trial = 0; trial < 200; ++trial) {
        auto r = static_cast<std::size_t>(trial % 5);
        auto planted = gen::random_adjuster(r, five, rng);
        REQUIRE(validate(planted.g, planted.adj).ok());
        auto all = routes(planted.adj);
        CHECK(all.size() == (std::size_t{1} << r));
        std::set<std::size_t> lengths;
        for (auto & route : all) {
            lengths.insert(route.cycle.length());
            CHECK(is_cycle_in(planted.g, route.cycle));
        }
        auto l = planted.adj.length();
        CHECK(lengths.size() == r + 1);
        CHECK(*lengths.rbegin() == l);
        CHECK(*lengths.begin() == l - r);
        CHECK(route_of_length(planted.adj, l).length() == l);
        CHECK(route_of_length(planted.adj, l - r).length() == l - r);
    }
}

TEST_CASE("route enumeration refuses large r")
{
    Graph g(21 * 4);
    Adjuster a;
    for (Vertex i = 0; i < 21; ++i) {
        Vertex b = 4 * i;
        add_cycle(g, b, 3);
        a.cycles.push_back(ShortCycle{cycle_on(b, 3), b, b + 1});
    }
    for (Vertex i = 0; i < 21; ++i) {
        Vertex from = 4 * i + 1, mid = 4 * i + 3, to = 4 * ((i + 1) % 21);
        g.add_edge(from, mid);
        g.add_edge(mid, to);
        a.paths.push_back(Path{{from, mid, to}});
    }
    REQUIRE(validate(g, a).ok());
    CHECK_THROWS_AS(routes(a), SizeError);
    CHECK(route_of_length(a, a.length() - 7).length() == a.length() - 7);
}

TEST_CASE("merging two cycles along twenty rungs")
{
    Graph g(44);
    add_cycle(g, 0, 21);
    add_cycle(g, 21, 23);
    std::vector<Path> rungs;
    for (Vertex i = 0; i < 20; ++i) {
        g.add_edge(i, 21 + i);
        rungs.push_back(Path{{i, 21 + i}});
    }
    auto f1 = Adjuster::from_cycle(cycle_on(0, 21)), f2 = Adjuster::from_cycle(cycle_on(21, 23));
    MergeStats stats;
    auto merged = merge_adjusters(g, f1, f2, rungs, &stats);
    CHECK(validate(g, merged).ok());
    auto l = static_cast<double>(merged.length());
    CHECK(l >= 44 * (1 - 4 / std::sqrt(20.0)));
    CHECK(l <= 46);
    CHECK(stats.s == 20);

    rungs.pop_back();
    rungs.pop_back();
    rungs.pop_back();
    rungs.pop_back();
    CHECK_THROWS_AS(merge_adjusters(g, f1, f2, rungs), PreconditionError);
}

TEST_CASE("merged adjusters keep a cycle-free section when the second is a cycle")
{
    gen::Rng rng(123);
    gen::AdjusterShape wide;
    wide.max_connector = 10;
    wide.loop_max = 50;
    int seen = 0;
    while (seen < 60) {
        auto inst = gen::planted_merge(1 + rng() % 4, 0, 20, 3, false, 0, wide, rng);
        if (inst.paths.size() < 17)
            continue;
        ++seen;
        auto merged = merge_adjusters(inst.g, inst.f1, inst.f2, inst.paths);
        CHECK(validate(inst.g, merged).ok());
        CHECK(merged.r() <= inst.f1.r());
        if (merged.length() > inst.f1.length())
            CHECK(longest_connector(merged) >= merged.length() - inst.f1.length());
    }
}

TEST_CASE("efficient merge of two dense cycles")
{
    // two 30-cycles, each inside a complete graph minus a perfect matching,
    // so the complement of each side is a matching and K_{2,2}-free
    Graph g(60);
    for (Vertex base : {Vertex{0}, Vertex{30}})
        for (Vertex i = 0; i < 30; ++i)
            for (Vertex j = i + 1; j < 30; ++j)
                if (j != i + 15)
                    g.add_edge(base + i, base + j);
    for (Vertex base : {Vertex{0}, Vertex{30}})
        add_cycle(g, base, 30);
    g.add_edge(3, 40);
    g.add_edge(20, 55);
    auto f1 = Adjuster::from_cycle(cycle_on(0, 30)), f2 = Adjuster::from_cycle(cycle_on(30, 30));
    auto merged = merge_efficient(g, f1, f2, Path{{3, 40}}, Path{{20, 55}}, 2, 2);
    CHECK(validate(g, merged).ok());
    CHECK(merged.length() >= 52);
    CHECK(merged.length() <= 62);

    // the complement of a 30-cycle alone contains K_{2,2}
    Graph sparse(60);
    add_cycle(sparse, 0, 30);
    add_cycle(sparse, 30, 30);
    sparse.add_edge(3, 40);
    sparse.add_edge(20, 55);
    CHECK_THROWS_AS(merge_efficient(sparse, f1, f2, Path{{3, 40}}, Path{{20, 55}}, 2, 2), PreconditionError);
}

TEST_CASE("efficient merges on planted instances")
{
    gen::Rng rng(77);
    gen::AdjusterShape shape;
    shape.max_connector = 6;
    shape.loop_max = 30;
    for (int trial = 0; trial < 100; ++trial) {
        auto inst = gen::planted_merge(rng() % 4, rng() % 4, 2, 1 + rng() % 3, true, 0.85, shape, rng);
        auto merged = merge_efficient(inst.g, inst.f1, inst.f2, inst.paths[0], inst.paths[1], inst.m1, inst.m2);
        CHECK(validate(inst.g, merged).ok());
        auto loss = 2 * (inst.m1 + inst.m2);
        CHECK(merged.r() + loss >= inst.f1.r() + inst.f2.r());
        CHECK(merged.length() + loss >= inst.f1.length() + inst.f2.length());
        CHECK(merged.length() <= inst.f1.length() + inst.f2.length() + 2 * inst.t);
        if (inst.f2.r() == 0 && merged.length() > inst.f1.length())
            CHECK(longest_connector(merged) >= merged.length() - inst.f1.length());
    }
}

TEST_CASE("shortening sections with chords")
{
    gen::Rng rng(3);
    auto k22 = MultipartiteSpec::parse("K_{2,2}");
    auto dense_cycle = [&](std::size_t len) {
        Graph g = gen::random_graph(len, 0.9, rng);
        add_cycle(g, 0, len);
        while (complement_contains(g, k22).status == SearchStatus::found) {
            auto e = *complement_contains(g, k22).embedding;
            g.add_edge(e.classes[0].first(), e.classes[1].first());
        }
        return g;
    };

    auto g50 = dense_cycle(50);
    auto short50 = shorten_section(g50, Adjuster::from_cycle(cycle_on(0, 50)), k22, 1, 44);
    CHECK(short50.length() < 45);
    CHECK(validate(g50, short50).ok());

    auto g100 = dense_cycle(100);
    auto cut = shorten_section(g100, Adjuster::from_cycle(cycle_on(0, 100)), k22, 40, 50);
    CHECK(cut.length() >= 40);
    CHECK(cut.length() <= 50);
    CHECK(validate(g100, cut).ok());

    auto same = shorten_section(g100, Adjuster::from_cycle(cycle_on(0, 100)), k22, 90, 100);
    CHECK(same.length() == 100);

    auto planted = gen::random_adjuster(3, gen::AdjusterShape{5, 12, 20, 0, 0.6}, rng);
    auto dense = planted.g;
    auto spec = MultipartiteSpec::parse("K_{1,1}");
    for (Vertex u = 0; u < dense.order(); ++u)
        for (Vertex v = u + 1; v < dense.order(); ++v)
            dense.add_edge(u, v);
    auto l = planted.adj.length();
    auto trimmed = shorten_section(dense, planted.adj, spec, l - 4, l - 2);
    CHECK(trimmed.r() == planted.adj.r());
    CHECK(routes(trimmed).size() == routes(planted.adj).size());
    CHECK(trimmed.length() <= l - 2);
}

TEST_CASE("adjuster and long cycle pipelines")
{
    auto cfg = ConstantsLedger::desk();
    gen::Rng rng(150);
    auto g = gen::random_graph(150, 0.6, rng);
    auto res = find_adjuster(g, MultipartiteSpec::parse("1,1"), cfg);
    REQUIRE(res.ok());
    auto & adj = res.value();
    CHECK(validate(g, adj).ok());
    CHECK(adj.r() >= 1);
    for (auto & c : adj.cycles)
        CHECK(c.cycle.length() <= adj.cycle_cap);

    auto two = Graph::complete(5).disjoint_union(Graph::complete(5));
    CHECK_FALSE(find_adjuster(two, MultipartiteSpec::parse("1,1"), cfg).ok());

    auto k = Graph::complete(200);
    auto cyc = find_long_cycle(k, MultipartiteSpec::parse("1,1"), cfg, 20, 40);
    REQUIRE(cyc.ok());
    CHECK(is_cycle_in(k, cyc.value()));
    CHECK(cyc.value().length() >= 20);
    CHECK(cyc.value().length() <= 40);
}
