#include "generators.hpp"

#include <goodness/expansion.hpp>

#include <doctest.h>

#include <cmath>
#include <ranges>

using namespace goodness;

namespace
{
    auto params(double delta, double beta, double d, std::size_t k) -> ExpansionParams
    {
        ExpansionParams p;
        p.delta = delta;
        p.beta = beta;
        p.d = d;
        p.k = k;
        return p;
    }

    auto has_case(const nlohmann::json & trace, const std::string & name) -> bool
    {
        for (auto & step : trace)
            if (step.value("case", "") == name)
                return true;
        return false;
    }
}

TEST_CASE("complete graphs expand")
{
    auto g = Graph::complete(12);
    auto v = check_expansion(g, g.vertices(), params(2, 1, 3, 2), 8);
    CHECK(v.status == ExpansionStatus::verified);
    CHECK(v.verified_cap >= 6);    // every S up to |G| / 2
}

TEST_CASE("a disconnected graph has a component as witness")
{
    auto g = Graph::complete(5).disjoint_union(Graph::complete(5));
    auto p = params(1, 1, 1, 2);
    auto v = check_expansion(g, g.vertices(), p, 8);
    REQUIRE(v.status == ExpansionStatus::violated);
    REQUIRE(v.witness);
    CHECK(v.witness->count() == 5);
    CHECK(components_within(g, *v.witness).size() == 1);
    CHECK(external_neighborhood(g, *v.witness).empty());
    CHECK(violates_clause(g, g.vertices(), p, *v.witness, v.clause));
}

TEST_CASE("two adjacent vertices of an 8-cycle violate clause 1")
{
    auto g = Graph::cycle(8);
    auto p = params(2, 1, 2, 2);
    auto v = check_expansion(g, g.vertices(), p, 8);
    REQUIRE(v.status == ExpansionStatus::violated);
    CHECK(v.clause == 1);
    REQUIRE(v.witness);
    CHECK(v.witness->count() == 2);
    auto pair = v.witness->to_vector();
    CHECK(g.adjacent(pair[0], pair[1]));
    CHECK_FALSE(violates_clause(g, g.vertices(), p, VertexSet::from_range(8, std::vector<Vertex>{3}), 1));
}

TEST_CASE("witnesses re-evaluate as violations")
{
    gen::Rng rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        auto g = gen::random_graph(20, 0.1 + 0.02 * trial, rng);
        auto p = params(2 + trial % 3, 1, 2, 3);
        auto v = check_expansion(g, g.vertices(), p, 4);
        if (v.status == ExpansionStatus::violated) {
            REQUIRE(v.witness);
            CHECK(violates_clause(g, g.vertices(), p, *v.witness, v.clause));
        }
        else
            CHECK(v.verified_cap <= 4);
    }
}

TEST_CASE("extraction from a complete graph takes the final case at once")
{
    ExtractionParams p;
    p.M = 20;
    p.beta = 2;
    p.delta = 2;
    auto spec = MultipartiteSpec::parse("1,1");
    auto order = static_cast<std::size_t>(std::floor(p.M * 2 * std::log(2.0)));
    auto g = Graph::complete(order);
    auto res = extract_expander(g, spec, p);
    REQUIRE(res.ok());
    auto & f = res.value();
    CHECK(f.vertices == g.vertices());
    CHECK(f.spec == spec);
    CHECK(has_case(f.trace, "final"));
    CHECK_FALSE(has_case(f.trace, "sparse_cut"));
    CHECK(f.lower_bound <= static_cast<double>(f.vertices.count()));
    CHECK(static_cast<double>(f.vertices.count()) <= f.upper_bound);
}

TEST_CASE("extraction splits two blobs along the sparse cut")
{
    // two cliques: the complement is bipartite, hence K_4-free
    Graph g(120);
    for (Vertex u = 0; u < 120; ++u)
        for (Vertex v = u + 1; v < 120; ++v)
            if ((u < 60) == (v < 60))
                g.add_edge(u, v);
    g.add_edge(0, 60);
    g.add_edge(1, 61);
    auto spec = MultipartiteSpec::parse("1,1,1,1");
    auto p = ExtractionParams::fitted(ConstantsLedger::desk(), g.order(), spec);
    auto res = extract_expander(g, spec, p);
    REQUIRE(res.ok());
    auto & f = res.value();
    CHECK(has_case(f.trace, "sparse_cut"));
    CHECK(f.spec.chi() >= 2);
    CHECK(f.spec.chi() < 4);
    auto left = VertexSet::from_range(120, std::views::iota(0, 60));
    CHECK((f.vertices.is_subset_of(left) || ! f.vertices.intersects(left)));

    auto sub = g.induced(f.vertices);
    CHECK(check_expansion(sub, sub.vertices(), f.params, 4).status == ExpansionStatus::verified);
}

TEST_CASE("extracted subgraphs of random graphs expand")
{
    auto cfg = ConstantsLedger::desk();
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        gen::Rng rng(seed);
        auto g = gen::random_graph(300, 0.5, rng);
        auto spec = MultipartiteSpec(std::vector<std::size_t>(5, 1));
        auto res = extract_expander(g, spec, ExtractionParams::fitted(cfg, 300, spec));
        REQUIRE(res.ok());
        auto & f = res.value();
        CHECK(f.spec.chi() >= 2);
        auto sub = g.induced(f.vertices);
        CHECK(check_expansion(sub, sub.vertices(), f.params, 6).status == ExpansionStatus::verified);
    }
}
