#include <goodness/graph.hpp>
#include <goodness/errors.hpp>

#include <algorithm>
#include <string>

namespace goodness
{
    Graph::Graph(std::size_t order) :
        _rows(order, VertexSet(order))
    {
    }

    auto Graph::from_edges(std::size_t order, std::span<const Edge> edges) -> Graph
    {
        Graph g(order);
        for (auto [u, v] : edges)
            g.add_edge(u, v);
        return g;
    }

    auto Graph::complete(std::size_t order) -> Graph
    {
        Graph g(order);
        for (Vertex v = 0; v < order; ++v) {
            g._rows[v] = VertexSet::full(order);
            g._rows[v].erase(v);
        }
        return g;
    }

    auto Graph::cycle(std::size_t order) -> Graph
    {
        if (order < 3)
            throw InputError("a cycle needs at least 3 vertices");
        Graph g(order);
        for (Vertex v = 0; v < order; ++v)
            g.add_edge(v, static_cast<Vertex>((v + 1) % order));
        return g;
    }

    auto Graph::path(std::size_t order) -> Graph
    {
        Graph g(order);
        for (Vertex v = 0; v + 1 < order; ++v)
            g.add_edge(v, v + 1);
        return g;
    }

    auto Graph::size() const -> std::size_t
    {
        std::size_t twice = 0;
        for (auto & r : _rows)
            twice += r.count();
        return twice / 2;
    }

    void Graph::check_vertex(Vertex v) const
    {
        if (v >= order())
            throw InputError("vertex " + std::to_string(v) + " out of range for graph of order " + std::to_string(order()));
    }

    void Graph::check_set(const VertexSet & s) const
    {
        if (s.universe() != order())
            throw InputError("vertex set universe " + std::to_string(s.universe()) + " does not match graph order " + std::to_string(order()));
    }

    void Graph::add_edge(Vertex u, Vertex v)
    {
        check_vertex(u);
        check_vertex(v);
        if (u == v)
            throw InputError("self-loop at vertex " + std::to_string(u));
        _rows[u].insert(v);
        _rows[v].insert(u);
    }

    void Graph::remove_edge(Vertex u, Vertex v)
    {
        check_vertex(u);
        check_vertex(v);
        _rows[u].erase(v);
        _rows[v].erase(u);
    }

    auto Graph::edges() const -> std::vector<Edge>
    {
        std::vector<Edge> result;
        for (Vertex u = 0; u < order(); ++u)
            for (Vertex v = _rows[u].next_after(u); v < order(); v = _rows[u].next_after(v))
                result.emplace_back(u, v);
        return result;
    }

    auto Graph::induced(const VertexSet & keep, std::vector<Vertex> * original) const -> Graph
    {
        check_set(keep);
        auto ids = keep.to_vector();
        std::vector<Vertex> relabel(order(), 0);
        for (std::size_t i = 0; i < ids.size(); ++i)
            relabel[ids[i]] = static_cast<Vertex>(i);

        Graph result(ids.size());
        for (std::size_t i = 0; i < ids.size(); ++i)
            for (auto w : _rows[ids[i]] & keep)
                result._rows[i].insert(relabel[w]);

        if (original)
            *original = std::move(ids);
        return result;
    }

    auto Graph::disjoint_union(const Graph & other) const -> Graph
    {
        auto shift = static_cast<Vertex>(order());
        Graph result(order() + other.order());
        for (auto [u, v] : edges())
            result.add_edge(u, v);
        for (auto [u, v] : other.edges())
            result.add_edge(u + shift, v + shift);
        return result;
    }

    auto is_path_in(const Graph & g, const Path & p) -> bool
    {
        if (p.vertices.empty())
            return false;
        VertexSet seen(g.order());
        for (std::size_t i = 0; i < p.vertices.size(); ++i) {
            auto v = p.vertices[i];
            if (v >= g.order() || seen.contains(v))
                return false;
            seen.insert(v);
            if (i > 0 && ! g.adjacent(p.vertices[i - 1], v))
                return false;
        }
        return true;
    }

    auto is_cycle_in(const Graph & g, const Cycle & c) -> bool
    {
        if (c.vertices.size() < 3)
            return false;
        if (! is_path_in(g, Path{c.vertices}))
            return false;
        return g.adjacent(c.vertices.back(), c.vertices.front());
    }

    auto as_set(std::size_t universe, std::span<const Vertex> vertices) -> VertexSet
    {
        VertexSet result(universe);
        for (auto v : vertices) {
            if (v >= universe)
                throw InputError("vertex " + std::to_string(v) + " out of range");
            result.insert(v);
        }
        return result;
    }

    auto external_neighborhood(const Graph & g, const VertexSet & a) -> VertexSet
    {
        g.check_set(a);
        VertexSet result(g.order());
        for (auto v : a)
            result |= g.neighbours(v);
        result -= a;
        return result;
    }

    auto complement(const Graph & g) -> Graph
    {
        Graph result(g.order());
        for (Vertex v = 0; v < g.order(); ++v)
            for (auto w : g.neighbours(v).complemented())
                if (w != v)
                    result.add_edge(v, w);
        return result;
    }

    auto bfs_distances(const Graph & g, Vertex source, const VertexSet & within) -> std::vector<std::size_t>
    {
        g.check_vertex(source);
        std::vector<std::size_t> dist(g.order(), unreachable);
        if (! within.contains(source))
            return dist;

        auto remaining = within;
        remaining.erase(source);
        VertexSet frontier(g.order(), {source});
        dist[source] = 0;
        for (std::size_t layer = 1; ! frontier.empty(); ++layer) {
            VertexSet next(g.order());
            for (auto v : frontier)
                next |= g.neighbours(v);
            next &= remaining;
            remaining -= next;
            for (auto v : next)
                dist[v] = layer;
            frontier = std::move(next);
        }
        return dist;
    }

    auto distance(const Graph & g, Vertex u, Vertex v) -> std::optional<std::size_t>
    {
        g.check_vertex(u);
        g.check_vertex(v);
        auto d = bfs_distances(g, u, g.vertices())[v];
        if (d == unreachable)
            return std::nullopt;
        return d;
    }

    auto shortest_path_within(const Graph & g, Vertex u, Vertex v, const VertexSet & within) -> std::optional<Path>
    {
        auto dist = bfs_distances(g, v, within);
        if (dist[u] == unreachable)
            return std::nullopt;
        Path p;
        p.vertices.push_back(u);
        auto cur = u;
        while (cur != v) {
            for (auto w : g.neighbours(cur))
                if (dist[w] + 1 == dist[cur]) {
                    cur = w;
                    break;
                }
            p.vertices.push_back(cur);
        }
        return p;
    }

    auto components_within(const Graph & g, const VertexSet & within) -> std::vector<VertexSet>
    {
        g.check_set(within);
        std::vector<VertexSet> result;
        auto left = within;
        while (! left.empty()) {
            auto start = left.first();
            VertexSet comp(g.order(), {start});
            VertexSet frontier = comp;
            left.erase(start);
            while (! frontier.empty()) {
                VertexSet next(g.order());
                for (auto v : frontier)
                    next |= g.neighbours(v);
                next &= left;
                left -= next;
                comp |= next;
                frontier = std::move(next);
            }
            result.push_back(std::move(comp));
        }
        return result;
    }

    auto components(const Graph & g) -> std::vector<VertexSet>
    {
        return components_within(g, g.vertices());
    }

    auto to_string(SearchStatus s) -> const char *
    {
        switch (s) {
            case SearchStatus::found: return "found";
            case SearchStatus::none_found: return "none_found";
            case SearchStatus::budget_exhausted: return "budget_exhausted";
        }
        return "?";
    }

    namespace
    {
        // Exact-order path search shared by the cycle and path finders. The
        // path currently ends at `cur`; we want to reach `target` using
        // exactly `need` more edges through vertices of `free`.
        struct PathDfs
        {
            const Graph & g;
            Vertex target;
            Budget & budget;
            std::vector<Vertex> & path;
            bool exhausted = false;

            auto reach_ok(Vertex from, std::size_t need, const VertexSet & free) -> bool
            {
                // from must reach target within `need` steps and the
                // reachable part must hold enough vertices.
                auto within = free;
                within.insert(target);
                within.insert(from);
                std::size_t reached = 1, layer = 0;
                VertexSet frontier(g.order(), {from});
                auto left = within;
                left.erase(from);
                bool hit = (from == target);
                std::size_t hit_layer = 0;
                while (! frontier.empty()) {
                    VertexSet next(g.order());
                    for (auto v : frontier)
                        next |= g.neighbours(v);
                    next &= left;
                    left -= next;
                    ++layer;
                    reached += next.count();
                    if (! hit && next.contains(target)) {
                        hit = true;
                        hit_layer = layer;
                    }
                    frontier = std::move(next);
                }
                return hit && hit_layer <= need && reached >= need + 1;
            }

            auto run(Vertex cur, std::size_t need, VertexSet & free) -> bool
            {
                if (! budget.spend()) {
                    exhausted = true;
                    return false;
                }
                if (need == 1)
                    return g.adjacent(cur, target);
                auto candidates = g.neighbours(cur) & free;
                for (auto next : candidates) {
                    free.erase(next);
                    if (reach_ok(next, need - 1, free)) {
                        path.push_back(next);
                        if (run(next, need - 1, free))
                            return true;
                        path.pop_back();
                    }
                    free.insert(next);
                    if (exhausted)
                        return false;
                }
                return false;
            }
        };
    }

    auto find_path_of_order(const Graph & g, Vertex x, Vertex y, std::size_t vertex_count,
            const VertexSet & within, Budget budget) -> PathSearch
    {
        g.check_vertex(x);
        g.check_vertex(y);
        g.check_set(within);
        PathSearch result;
        if (x == y) {
            if (vertex_count == 1 && within.contains(x))
                result = PathSearch{SearchStatus::found, Path{{x}}, 0};
            return result;
        }
        if (vertex_count < 2 || ! within.contains(x) || ! within.contains(y))
            return result;

        std::vector<Vertex> path{x};
        auto free = within;
        free.erase(x);
        free.erase(y);
        PathDfs dfs{g, y, budget, path};
        bool ok = dfs.reach_ok(x, vertex_count - 1, free) && dfs.run(x, vertex_count - 1, free);
        result.nodes = budget.used;
        if (ok) {
            path.push_back(y);
            result.status = SearchStatus::found;
            result.path = Path{std::move(path)};
        }
        else if (dfs.exhausted)
            result.status = SearchStatus::budget_exhausted;
        return result;
    }

    namespace
    {
        auto cycle_from(const Graph & g, Vertex s, std::size_t length, const VertexSet & allowed, Budget & budget,
                bool & exhausted) -> std::optional<Cycle>
        {
            // Cycles through s inside allowed ∪ {s}: fix the first neighbour a
            // and look for an a-s path on length-1 vertices; require a to be
            // smaller than the closing neighbour so each cycle is seen once.
            auto comps = components_within(g, allowed | VertexSet(g.order(), {s}));
            for (auto & c : comps)
                if (c.contains(s) && c.count() < length)
                    return std::nullopt;

            for (auto a : g.neighbours(s) & allowed) {
                auto free = allowed;
                free.erase(a);
                free.erase(s);
                // only closing neighbours larger than a may end the cycle
                auto closers = g.neighbours(s) & free;
                for (auto b : closers) {
                    if (b <= a)
                        continue;
                    if (length == 3) {
                        if (g.adjacent(a, b)) {
                            if (! budget.spend()) {
                                exhausted = true;
                                return std::nullopt;
                            }
                            return Cycle{{s, a, b}};
                        }
                        continue;
                    }
                    auto inner = free;
                    inner.erase(b);
                    std::vector<Vertex> sub{a};
                    PathDfs inner_dfs{g, b, budget, sub};
                    if (inner_dfs.reach_ok(a, length - 2, inner) && inner_dfs.run(a, length - 2, inner)) {
                        Cycle c;
                        c.vertices.push_back(s);
                        c.vertices.insert(c.vertices.end(), sub.begin(), sub.end());
                        c.vertices.push_back(b);
                        return c;
                    }
                    if (inner_dfs.exhausted) {
                        exhausted = true;
                        return std::nullopt;
                    }
                }
            }
            return std::nullopt;
        }
    }

    auto find_cycle_through(const Graph & g, Vertex through, std::size_t length, Budget budget) -> CycleSearch
    {
        g.check_vertex(through);
        if (length < 3)
            throw PreconditionError("cycle length must be at least 3");
        CycleSearch result;
        if (length > g.order())
            return result;
        auto allowed = g.vertices();
        allowed.erase(through);
        bool exhausted = false;
        auto c = cycle_from(g, through, length, allowed, budget, exhausted);
        result.nodes = budget.used;
        if (c) {
            result.status = SearchStatus::found;
            result.cycle = std::move(c);
        }
        else if (exhausted)
            result.status = SearchStatus::budget_exhausted;
        return result;
    }

    auto find_cycle_of_length(const Graph & g, std::size_t length, Budget budget) -> CycleSearch
    {
        if (length < 3)
            throw PreconditionError("cycle length must be at least 3");
        CycleSearch result;
        if (length > g.order())
            return result;

        // The smallest vertex of the cycle is s; later starts only see larger ids.
        auto allowed = g.vertices();
        for (Vertex s = 0; s < g.order(); ++s) {
            allowed.erase(s);
            if (allowed.count() + 1 < length)
                break;
            if (g.degree(s) < 2)
                continue;
            bool exhausted = false;
            auto c = cycle_from(g, s, length, allowed, budget, exhausted);
            if (c) {
                result.status = SearchStatus::found;
                result.cycle = std::move(c);
                result.nodes = budget.used;
                return result;
            }
            if (exhausted) {
                result.status = SearchStatus::budget_exhausted;
                result.nodes = budget.used;
                return result;
            }
        }
        result.nodes = budget.used;
        return result;
    }

    auto monotone_subsequence(std::span<const long long> seq, std::size_t r) -> std::vector<std::size_t>
    {
        if (r == 0)
            return {};
        if (seq.size() < (r - 1) * (r - 1) + 1)
            throw PreconditionError("sequence of length " + std::to_string(seq.size()) + " is shorter than (r-1)^2+1 for r = "
                    + std::to_string(r));

        // Patience sorting; `before(x, y)` is the order the subsequence must respect.
        auto longest = [&] (auto before) {
            std::vector<std::size_t> tails, parent(seq.size(), seq.size());
            for (std::size_t i = 0; i < seq.size(); ++i) {
                // first pile whose top does not allow extending by seq[i]
                auto it = std::partition_point(tails.begin(), tails.end(),
                        [&] (std::size_t t) { return before(seq[t], seq[i]); });
                if (it != tails.begin())
                    parent[i] = *(it - 1);
                if (it == tails.end())
                    tails.push_back(i);
                else
                    *it = i;
            }
            std::vector<std::size_t> result;
            if (! tails.empty())
                for (auto i = tails.back(); i != seq.size(); i = parent[i])
                    result.push_back(i);
            std::reverse(result.begin(), result.end());
            return result;
        };

        auto up = longest([] (long long a, long long b) { return a <= b; });
        if (up.size() >= r) {
            up.resize(r);
            return up;
        }
        auto down = longest([] (long long a, long long b) { return a >= b; });
        if (down.size() >= r) {
            down.resize(r);
            return down;
        }
        throw InternalError("no monotone subsequence of the guaranteed length");
    }
}
