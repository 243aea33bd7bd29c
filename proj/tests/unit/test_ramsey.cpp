#include "oracles.hpp"

#include <goodness/errors.hpp>
#include <goodness/graph_io.hpp>
#include <goodness/isomorphism.hpp>
#include <goodness/ramsey.hpp>

#include <doctest.h>

#include <filesystem>

using namespace goodness;

namespace
{
    auto parts(std::initializer_list<std::size_t> p) -> MultipartiteSpec
    {
        return MultipartiteSpec(std::vector<std::size_t>(p));
    }
}

TEST_CASE("witness predicate")
{
    auto k3 = MultipartiteSpec::parse("K_3");
    CHECK(is_ramsey_witness(burr_graph(5, k3), 5, k3));
    CHECK_FALSE(is_ramsey_witness(Graph::complete(6), 5, k3));
    CHECK_FALSE(is_ramsey_witness(Graph(3), 5, k3));
    CHECK_THROWS_AS(is_ramsey_witness(Graph(129), 5, k3), SizeError);
}

TEST_CASE("golden values")
{
    auto k3 = MultipartiteSpec::parse("K_3");
    auto r = exact_ramsey(4, k3);
    CHECK(r.value == 7);
    CHECK(r.goodness == true);
    CHECK(r.formula == 7);
    REQUIRE(r.lower_witness);
    CHECK(r.lower_witness->order() == 6);
    CHECK(is_ramsey_witness(*r.lower_witness, 4, k3));

    auto r5 = exact_ramsey(5, k3);
    CHECK(r5.value == 9);
    CHECK(r5.goodness == true);

    auto tri = exact_ramsey(3, k3);
    CHECK(tri.value == 6);
    CHECK(tri.goodness == false);
    CHECK(tri.formula == 5);

    auto c4 = exact_ramsey(4, parts({2, 2}));
    CHECK(c4.value == 6);
    CHECK(c4.goodness == false);
    CHECK(c4.formula == 5);
}

TEST_CASE("level search agrees with full enumeration")
{
    for (std::size_t n = 3; n <= 6; ++n)
        for (auto spec : {parts({1, 1}), parts({1, 2}), parts({2, 2}), parts({1, 1, 1}), parts({1, 1, 2}), parts({1, 3})}) {
            auto slow = oracle::ramsey_by_enumeration(n, spec, 6);
            RamseyOptions o;
            o.max_order = 6;
            auto fast = exact_ramsey(n, spec, o);
            CAPTURE(n);
            CAPTURE(spec.to_string());
            CHECK(fast.value == slow);
            if (fast.value && n >= spec.sigma())
                CHECK(*fast.value >= spec.goodness_bound(n));
        }
    CHECK(oracle::ramsey_by_enumeration(4, parts({1, 1, 1}), 7) == 7);
}

TEST_CASE("monotone under sub-joins")
{
    for (std::size_t n = 3; n <= 5; ++n) {
        auto big = exact_ramsey(n, parts({1, 1, 2}));
        auto small = exact_ramsey(n, parts({1, 2}));
        REQUIRE(big.value);
        REQUIRE(small.value);
        CHECK(*big.value >= *small.value);
    }
}

TEST_CASE("open above and the order guard")
{
    RamseyOptions o;
    o.max_order = 5;
    auto r = exact_ramsey(5, MultipartiteSpec::parse("K_3"), o);
    CHECK(r.open_above());
    CHECK(r.lower_bound == 6);
    REQUIRE(r.lower_witness);
    CHECK(r.lower_witness->order() == 5);
    CHECK(r.to_json().contains("levels"));

    o.max_order = 12;
    CHECK_THROWS_AS(exact_ramsey(5, MultipartiteSpec::parse("K_3"), o), SizeError);
}

TEST_CASE("parallel runs and checkpoints reproduce the serial result")
{
    auto spec = MultipartiteSpec::parse("K_3");
    auto serial = exact_ramsey(5, spec);

    RamseyOptions par;
    par.jobs = 4;
    auto threaded = exact_ramsey(5, spec, par);
    CHECK(threaded.value == serial.value);
    CHECK(to_graph6(*threaded.lower_witness) == to_graph6(*serial.lower_witness));

    auto dir = std::filesystem::temp_directory_path() / "goodness_ramsey_ckpt_test";
    std::filesystem::remove_all(dir);
    RamseyOptions ck;
    ck.checkpoint_dir = dir.string();
    auto first = exact_ramsey(5, spec, ck);
    CHECK(std::filesystem::exists(dir / "level_8.json"));
    auto again = exact_ramsey(5, spec, ck);
    CHECK(again.value == first.value);
    bool resumed = false;
    for (auto & l : again.levels)
        resumed = resumed || l.resumed;
    CHECK(resumed);
    CHECK(to_graph6(*again.lower_witness) == to_graph6(*serial.lower_witness));
    std::filesystem::remove_all(dir);
}

TEST_CASE("goodness table")
{
    CHECK(goodness_table({}, {}).empty());
    auto k3 = MultipartiteSpec::parse("K_3");
    auto table = goodness_table({4, 5, 6}, {k3});
    REQUIRE(table.size() == 3);
    for (auto & cell : table)
        CHECK(cell.goodness == true);
    auto csv = table_csv(table);
    CHECK(csv.rfind("n,spec,value,formula,goodness,lower_bound,open_above,seconds\n", 0) == 0);
    CHECK(table_csv(table, false).rfind("n,spec,value,formula,goodness,lower_bound,open_above\n", 0) == 0);
    auto plain = table[0].to_json(false).dump();
    CHECK(plain.find("seconds") == std::string::npos);
    CHECK(plain.find("resumed") == std::string::npos);
    CHECK(table[0].to_json(false) == goodness_table({4}, {k3})[0].to_json(false));
    auto low = goodness_table({3}, {k3});
    CHECK(low[0].goodness == false);
}

TEST_CASE("isomorphism")
{
    auto c = Graph::cycle(6);
    std::vector<Edge> relabelled{{0, 3}, {3, 1}, {1, 4}, {4, 2}, {2, 5}, {5, 0}};
    auto d = Graph::from_edges(6, relabelled);
    CHECK(are_isomorphic(c, d));
    CHECK(invariant_hash(c) == invariant_hash(d));
    auto two = Graph::complete(3).disjoint_union(Graph::complete(3));
    CHECK_FALSE(are_isomorphic(c, two));
}
