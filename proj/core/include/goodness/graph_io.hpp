#pragma once

#include <goodness/graph.hpp>

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace goodness
{
    /// graph6 encoding without the optional ">>graph6<<" header.
    auto to_graph6(const Graph & g) -> std::string;

    /// Decodes one graph6 line. The ">>graph6<<" header is accepted and
    /// trailing whitespace ignored; nonzero padding bits are rejected so that
    /// decode/encode round-trips are bit-exact.
    auto from_graph6(std::string_view text) -> Graph;

    /// Reads every non-empty line of a graph6 stream.
    auto read_graph6_lines(std::istream & in) -> std::vector<Graph>;

    /// {"n": order, "edges": [[u, v], ...]} with u < v in lexicographic order.
    auto to_json(const Graph & g) -> nlohmann::json;
    auto graph_from_json(const nlohmann::json & j) -> Graph;

    auto to_json(const VertexSet & s) -> nlohmann::json;
    auto to_json(const Path & p) -> nlohmann::json;
    auto to_json(const Cycle & c) -> nlohmann::json;

    /// Loads a graph from a file: ".json" files are JSON, anything else graph6.
    auto load_graph(const std::string & path) -> Graph;
}
