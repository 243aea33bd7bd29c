#include <goodness/graph_io.hpp>
#include <goodness/errors.hpp>

#include <fstream>
#include <istream>
#include <sstream>

namespace goodness
{
    namespace
    {
        constexpr std::string_view header = ">>graph6<<";
        constexpr int bias = 63;
    }

    auto to_graph6(const Graph & g) -> std::string
    {
        auto n = g.order();
        if (n > 258047)
            throw InputError("graph too large for the short graph6 size field");

        std::string out;
        if (n <= 62)
            out.push_back(static_cast<char>(n + bias));
        else {
            out.push_back(126);
            out.push_back(static_cast<char>(((n >> 12) & 63) + bias));
            out.push_back(static_cast<char>(((n >> 6) & 63) + bias));
            out.push_back(static_cast<char>((n & 63) + bias));
        }

        // upper triangle, column by column: (0,1), (0,2), (1,2), (0,3), ...
        int bits = 0, acc = 0;
        for (Vertex j = 1; j < n; ++j)
            for (Vertex i = 0; i < j; ++i) {
                acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
                if (++bits == 6) {
                    out.push_back(static_cast<char>(acc + bias));
                    bits = acc = 0;
                }
            }
        if (bits)
            out.push_back(static_cast<char>((acc << (6 - bits)) + bias));
        return out;
    }

    auto from_graph6(std::string_view text) -> Graph
    {
        if (text.starts_with(header))
            text.remove_prefix(header.size());
        while (! text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' ' || text.back() == '\t'))
            text.remove_suffix(1);
        if (text.empty())
            throw InputError("empty graph6 string");
        for (char c : text)
            if (c < 63 || c > 126)
                throw InputError("invalid graph6 character");

        std::size_t pos = 0, n = 0;
        if (text[0] != 126)
            n = static_cast<std::size_t>(text[pos++] - bias);
        else {
            if (text.size() >= 2 && text[1] == 126)
                throw InputError("graph6 orders above 258047 are not supported");
            if (text.size() < 4)
                throw InputError("truncated graph6 size field");
            n = (static_cast<std::size_t>(text[1] - bias) << 12) | (static_cast<std::size_t>(text[2] - bias) << 6)
                | static_cast<std::size_t>(text[3] - bias);
            pos = 4;
            if (n <= 62)
                throw InputError("non-canonical graph6 size field");
        }

        std::size_t pairs = n * (n ? n - 1 : 0) / 2;
        std::size_t expected = (pairs + 5) / 6;
        if (text.size() - pos != expected)
            throw InputError("graph6 body has " + std::to_string(text.size() - pos) + " bytes, expected " + std::to_string(expected));

        Graph g(n);
        std::size_t k = 0;
        for (Vertex j = 1; j < n; ++j)
            for (Vertex i = 0; i < j; ++i, ++k) {
                int byte = text[pos + k / 6] - bias;
                if ((byte >> (5 - k % 6)) & 1)
                    g.add_edge(i, j);
            }
        if (pairs % 6) {
            int last = text.back() - bias;
            if (last & ((1 << (6 - pairs % 6)) - 1))
                throw InputError("nonzero graph6 padding bits");
        }
        return g;
    }

    auto read_graph6_lines(std::istream & in) -> std::vector<Graph>
    {
        std::vector<Graph> result;
        std::string line;
        while (std::getline(in, line)) {
            auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos)
                continue;
            result.push_back(from_graph6(std::string_view(line).substr(first)));
        }
        return result;
    }

    auto to_json(const Graph & g) -> nlohmann::json
    {
        auto edges = nlohmann::json::array();
        for (auto [u, v] : g.edges())
            edges.push_back({u, v});
        return {{"n", g.order()}, {"edges", std::move(edges)}};
    }

    auto graph_from_json(const nlohmann::json & j) -> Graph
    {
        if (! j.is_object() || ! j.contains("n") || ! j["n"].is_number_unsigned())
            throw InputError("graph JSON needs a non-negative integer field \"n\"");
        Graph g(j["n"].get<std::size_t>());
        if (j.contains("edges")) {
            if (! j["edges"].is_array())
                throw InputError("graph JSON field \"edges\" must be an array");
            for (auto & e : j["edges"]) {
                if (! e.is_array() || e.size() != 2 || ! e[0].is_number_unsigned() || ! e[1].is_number_unsigned())
                    throw InputError("each edge must be a pair of vertex ids");
                g.add_edge(e[0].get<Vertex>(), e[1].get<Vertex>());
            }
        }
        return g;
    }

    auto to_json(const VertexSet & s) -> nlohmann::json
    {
        return s.to_vector();
    }

    auto to_json(const Path & p) -> nlohmann::json
    {
        return p.vertices;
    }

    auto to_json(const Cycle & c) -> nlohmann::json
    {
        return c.vertices;
    }

    auto load_graph(const std::string & path) -> Graph
    {
        std::ifstream in(path);
        if (! in)
            throw InputError("cannot open " + path);
        if (path.ends_with(".json")) {
            nlohmann::json j;
            try {
                in >> j;
            }
            catch (const nlohmann::json::exception & e) {
                throw InputError(path + ": " + e.what());
            }
            return graph_from_json(j);
        }
        auto graphs = read_graph6_lines(in);
        if (graphs.size() != 1)
            throw InputError(path + ": expected exactly one graph6 line, found " + std::to_string(graphs.size()));
        return graphs.front();
    }
}
