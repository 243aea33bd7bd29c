#include "generators.hpp"

#include <goodness/errors.hpp>
#include <goodness/graph_io.hpp>

#include <doctest.h>

#include <sstream>

using namespace goodness;

TEST_CASE("graph6 known encodings")
{
    CHECK(to_graph6(Graph(0)) == "?");
    CHECK(to_graph6(Graph::complete(2)) == "A_");
    CHECK(to_graph6(Graph::complete(4)) == "C~");
    CHECK(to_graph6(Graph::cycle(5)) == "Dhc");
    CHECK(from_graph6(">>graph6<<C~\n") == Graph::complete(4));
    CHECK_THROWS_AS(from_graph6("A`"), InputError);        // padding bit set
    CHECK_THROWS_AS(from_graph6("C~~"), InputError);       // too long
    CHECK_THROWS_AS(from_graph6("C "), InputError);
}

TEST_CASE("graph6 and JSON round trips")
{
    gen::Rng rng(1);
    for (std::size_t n : {0u, 1u, 2u, 5u, 62u, 63u, 64u, 100u, 300u}) {
        auto g = gen::random_graph(n, 0.3, rng);
        auto text = to_graph6(g);
        CHECK(from_graph6(text) == g);
        CHECK(to_graph6(from_graph6(text)) == text);
        CHECK(graph_from_json(to_json(g)) == g);
    }
    std::istringstream lines("C~\n\nDhc\n");
    auto all = read_graph6_lines(lines);
    REQUIRE(all.size() == 2);
    CHECK(all[1] == Graph::cycle(5));
}

TEST_CASE("JSON graph validation")
{
    CHECK_THROWS_AS(graph_from_json(nlohmann::json{{"n", 3}, {"edges", {{0, 3}}}}), InputError);
    CHECK_THROWS_AS(graph_from_json(nlohmann::json{{"n", 3}, {"edges", {{1, 1}}}}), InputError);
    CHECK_THROWS_AS(graph_from_json(nlohmann::json{{"edges", nlohmann::json::array()}}), InputError);
    auto j = to_json(Graph::path(3));
    CHECK(j["n"] == 3);
    CHECK(j["edges"] == nlohmann::json{{0, 1}, {1, 2}});
}
