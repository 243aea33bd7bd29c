#include "oracles.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/push_relabel_max_flow.hpp>

#include <bit>
#include <deque>
#include <stdexcept>
#include <vector>

namespace goodness::oracle
{
    auto has_cycle_of_length(const Graph & g, std::size_t length) -> bool
    {
        auto n = g.order();
        if (n > 20)
            throw std::invalid_argument("has_cycle_of_length oracle: order above 20");
        if (length < 3 || length > n)
            return false;
        // reach[mask] bit v: a path from the lowest vertex s of mask through
        // exactly the vertices of mask ends at v.
        std::vector<std::uint32_t> reach(std::size_t{1} << n, 0);
        for (std::size_t s = 0; s < n; ++s)
            reach[std::size_t{1} << s] = 1u << s;
        for (std::size_t mask = 1; mask < reach.size(); ++mask) {
            auto ends = reach[mask];
            if (! ends)
                continue;
            auto s = static_cast<std::size_t>(std::countr_zero(mask));
            auto size = static_cast<std::size_t>(std::popcount(mask));
            for (std::size_t v = 0; v < n; ++v) {
                if (! (ends >> v & 1))
                    continue;
                if (size == length && g.adjacent(static_cast<Vertex>(v), static_cast<Vertex>(s)))
                    return true;
                if (size >= length)
                    continue;
                for (std::size_t u = s + 1; u < n; ++u)
                    if (! (mask >> u & 1) && g.adjacent(static_cast<Vertex>(v), static_cast<Vertex>(u)))
                        reach[mask | std::size_t{1} << u] |= 1u << u;
            }
        }
        return false;
    }

    namespace
    {
        struct Assign
        {
            const Graph & g;
            std::vector<std::size_t> need;
            std::vector<int> cls;

            auto run(std::size_t v) -> bool
            {
                bool done = true;
                for (auto x : need)
                    done = done && x == 0;
                if (done)
                    return true;
                if (v == g.order())
                    return false;
                std::size_t left = g.order() - v, want = 0;
                for (auto x : need)
                    want += x;
                if (want > left)
                    return false;
                for (std::size_t c = 0; c < need.size(); ++c) {
                    if (need[c] == 0)
                        continue;
                    bool clash = false;
                    for (std::size_t u = 0; u < v && ! clash; ++u)
                        clash = cls[u] >= 0 && cls[u] != static_cast<int>(c) && g.adjacent(static_cast<Vertex>(u), static_cast<Vertex>(v));
                    if (clash)
                        continue;
                    cls[v] = static_cast<int>(c);
                    --need[c];
                    if (run(v + 1))
                        return true;
                    ++need[c];
                }
                cls[v] = -1;
                return run(v + 1);
            }
        };
    }

    auto complement_contains(const Graph & g, const MultipartiteSpec & spec) -> bool
    {
        Assign a{g, spec.parts(), std::vector<int>(g.order(), -1)};
        return a.run(0);
    }

    auto shortest_odd_cycle_length(const Graph & g) -> std::size_t
    {
        // The shortest odd closed walk through s has length dist((s,0),(s,1))
        // in the double cover; the minimum over s is the odd girth.
        auto n = g.order();
        std::size_t best = 0;
        for (std::size_t s = 0; s < n; ++s) {
            std::vector<std::size_t> dist(2 * n, static_cast<std::size_t>(-1));
            std::deque<std::size_t> queue{2 * s};
            dist[2 * s] = 0;
            while (! queue.empty()) {
                auto x = queue.front();
                queue.pop_front();
                auto v = x / 2, parity = x % 2;
                for (std::size_t u = 0; u < n; ++u) {
                    if (! g.adjacent(static_cast<Vertex>(v), static_cast<Vertex>(u)))
                        continue;
                    auto y = 2 * u + (1 - parity);
                    if (dist[y] == static_cast<std::size_t>(-1)) {
                        dist[y] = dist[x] + 1;
                        queue.push_back(y);
                    }
                }
            }
            auto d = dist[2 * s + 1];
            if (d != static_cast<std::size_t>(-1) && (best == 0 || d < best))
                best = d;
        }
        return best;
    }

    auto max_disjoint_paths(const Graph & g, const VertexSet & b1, const VertexSet & b2, const VertexSet & within)
        -> std::size_t
    {
        using Traits = boost::adjacency_list_traits<boost::vecS, boost::vecS, boost::directedS>;
        using Network = boost::adjacency_list<boost::vecS, boost::vecS, boost::directedS, boost::no_property,
              boost::property<boost::edge_capacity_t, long,
              boost::property<boost::edge_residual_capacity_t, long,
              boost::property<boost::edge_reverse_t, Traits::edge_descriptor>>>>;

        auto n = g.order();
        Network net(2 * n + 2);
        auto source = 2 * n, sink = 2 * n + 1;
        auto cap = boost::get(boost::edge_capacity, net);
        auto rev = boost::get(boost::edge_reverse, net);
        auto arc = [&](std::size_t a, std::size_t b, long c) {
            auto e = boost::add_edge(a, b, net).first;
            auto r = boost::add_edge(b, a, net).first;
            cap[e] = c;
            cap[r] = 0;
            rev[e] = r;
            rev[r] = e;
        };
        const long big = static_cast<long>(n) + 1;
        for (auto v : within) {
            arc(2 * v, 2 * v + 1, 1);
            if (b1.contains(v))
                arc(source, 2 * v, big);
            if (b2.contains(v))
                arc(2 * v + 1, sink, big);
            for (auto u : g.neighbours(v))
                if (within.contains(u))
                    arc(2 * v + 1, 2 * u, big);
        }
        return static_cast<std::size_t>(boost::push_relabel_max_flow(net, source, sink));
    }

    auto separates(const Graph & g, const VertexSet & b1, const VertexSet & b2, const VertexSet & within,
            const VertexSet & cut) -> bool
    {
        auto alive = within - cut;
        auto seen = b1 & alive;
        std::vector<Vertex> stack = seen.to_vector();
        while (! stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            if (b2.contains(v))
                return false;
            for (auto u : g.neighbours(v))
                if (alive.contains(u) && ! seen.contains(u)) {
                    seen.insert(u);
                    stack.push_back(u);
                }
        }
        return true;
    }

    auto ramsey_by_enumeration(std::size_t n, const MultipartiteSpec & spec, std::size_t max_order)
        -> std::optional<std::size_t>
    {
        if (max_order > 7)
            throw std::invalid_argument("ramsey_by_enumeration: max_order above 7");
        for (std::size_t order = 1; order <= max_order; ++order) {
            std::vector<Edge> pairs;
            for (Vertex u = 0; u < order; ++u)
                for (Vertex v = u + 1; v < order; ++v)
                    pairs.emplace_back(u, v);
            bool witness = false;
            for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << pairs.size()) && ! witness; ++bits) {
                Graph g(order);
                for (std::size_t i = 0; i < pairs.size(); ++i)
                    if (bits >> i & 1)
                        g.add_edge(pairs[i].first, pairs[i].second);
                witness = ! has_cycle_of_length(g, n) && ! oracle::complement_contains(g, spec);
            }
            if (! witness)
                return order;
        }
        return std::nullopt;
    }

    auto is_monotone(const std::vector<long long> & seq, const std::vector<std::size_t> & idx) -> bool
    {
        bool up = true, down = true;
        for (std::size_t i = 1; i < idx.size(); ++i) {
            if (idx[i] <= idx[i - 1])
                return false;
            up = up && seq[idx[i - 1]] <= seq[idx[i]];
            down = down && seq[idx[i - 1]] >= seq[idx[i]];
        }
        return up || down;
    }
}
