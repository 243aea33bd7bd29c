#include <goodness/navigation.hpp>

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

namespace goodness
{
    namespace
    {
        auto require_disjoint(const VertexSet & a, const VertexSet & b, const char * what)
        {
            if (a.intersects(b))
                throw PreconditionError(std::string("short_path: ") + what + " must be disjoint");
        }
    }

    auto short_path(const Graph & g, const VertexSet & a, const VertexSet & b, const VertexSet & c,
            const ExpansionParams & p, const ShortPathOptions & options) -> ShortPath
    {
        g.check_set(a);
        g.check_set(b);
        g.check_set(c);
        if (a.empty() || b.empty())
            throw PreconditionError("short_path: endpoint sets must be non-empty");
        require_disjoint(a, b, "a and b");
        require_disjoint(a, c, "a and c");
        require_disjoint(b, c, "b and c");

        ShortPath result;
        auto logk = std::log(static_cast<double>(std::max<std::size_t>(p.k, 2)));
        result.bound = options.length_factor * logk * std::log(std::max<double>(2.0, static_cast<double>(g.order())));
        if (options.w) {
            auto min_ab = static_cast<double>(std::min(a.count(), b.count()));
            if (static_cast<double>(c.intersection_count(*options.w)) > (p.delta - 2) * min_ab)
                result.warnings.push_back("|C & W| exceeds (Delta - 2) min(|a|, |b|)");
        }
        if (static_cast<double>(c.count()) > p.beta * p.d / (20 * logk))
            result.warnings.push_back("|C| exceeds beta d / (20 log k)");

        auto allowed = g.vertices() - c;
        auto n = g.order();
        std::vector<std::size_t> dist_a(n, unreachable), dist_b(n, unreachable);
        VertexSet seen_a = a, seen_b = b, front_a = a, front_b = b;
        for (auto v : a)
            dist_a[v] = 0;
        for (auto v : b)
            dist_b[v] = 0;

        auto grow = [&](VertexSet & seen, VertexSet & front, std::vector<std::size_t> & dist) {
            VertexSet next = g.empty_set();
            for (auto v : front)
                next |= g.neighbours(v);
            next &= allowed;
            next -= seen;
            std::size_t level = 0;
            for (auto v : front) {
                level = dist[v] + 1;
                break;
            }
            for (auto v : next)
                dist[v] = level;
            seen |= next;
            front = std::move(next);
        };

        auto trace = [&](Vertex v, const std::vector<std::size_t> & dist, const VertexSet & seen) {
            std::vector<Vertex> walk{v};
            while (dist[walk.back()] > 0) {
                auto cur = walk.back();
                for (auto u : g.neighbours(cur) & seen)
                    if (dist[u] + 1 == dist[cur]) {
                        walk.push_back(u);
                        break;
                    }
            }
            return walk;
        };

        bool turn_a = true;
        while (true) {
            auto meet = seen_a & seen_b;
            if (! meet.empty()) {
                Vertex best = meet.first();
                for (auto v : meet)
                    if (dist_a[v] + dist_b[v] < dist_a[best] + dist_b[best])
                        best = v;
                auto left = trace(best, dist_a, seen_a);
                auto right = trace(best, dist_b, seen_b);
                std::reverse(left.begin(), left.end());
                left.insert(left.end(), right.begin() + 1, right.end());
                result.path.vertices = std::move(left);
                break;
            }
            if (front_a.empty() && front_b.empty())
                throw SearchFailure(FailureReport{"short_path", "layers stopped growing before meeting", nlohmann::json::array()});
            if ((turn_a && ! front_a.empty()) || front_b.empty())
                grow(seen_a, front_a, dist_a);
            else
                grow(seen_b, front_b, dist_b);
            turn_a = ! turn_a;
        }

        if (options.expansion_verified) {
            result.bound_checked = true;
            if (static_cast<double>(result.path.length()) > result.bound)
                throw InternalError("short_path: path longer than the expansion bound");
        }
        return result;
    }

    auto shortest_odd_cycle_within(const Graph & g, const VertexSet & within) -> std::optional<Cycle>
    {
        g.check_set(within);
        std::size_t best = unreachable;
        Vertex best_s = 0, best_u = 0, best_v = 0;
        std::vector<VertexSet> layers;

        for (auto s : within) {
            VertexSet seen = g.empty_set(), front = g.empty_set();
            front.insert(s);
            seen.insert(s);
            for (std::size_t d = 0; 2 * d + 1 < best; ++d) {
                bool hit = false;
                for (auto u : front) {
                    auto same = g.neighbours(u) & front;
                    if (! same.empty()) {
                        best = 2 * d + 1;
                        best_s = s;
                        best_u = u;
                        best_v = same.first();
                        hit = true;
                        break;
                    }
                }
                if (hit)
                    break;
                VertexSet next = g.empty_set();
                for (auto u : front)
                    next |= g.neighbours(u);
                next &= within;
                next -= seen;
                if (next.empty())
                    break;
                seen |= next;
                front = std::move(next);
            }
            if (best == 3)
                break;
        }
        if (best == unreachable)
            return std::nullopt;

        auto dist = bfs_distances(g, best_s, within);
        auto climb = [&](Vertex v) {
            std::vector<Vertex> walk{v};
            while (walk.back() != best_s) {
                auto cur = walk.back();
                for (auto u : g.neighbours(cur) & within)
                    if (dist[u] + 1 == dist[cur]) {
                        walk.push_back(u);
                        break;
                    }
            }
            return walk;
        };
        auto up = climb(best_u);   // u ... s
        auto down = climb(best_v); // v ... s
        Cycle cycle;
        cycle.vertices.assign(up.rbegin(), up.rend()); // s ... u
        cycle.vertices.insert(cycle.vertices.end(), down.begin(), down.end() - 1); // v ... (child of s)

        if (cycle.vertices.size() != best || ! is_cycle_in(g, cycle))
            throw InternalError("shortest_odd_cycle: reconstructed walk is not a cycle");
        auto len = cycle.vertices.size();
        for (std::size_t i = 0; i < len; ++i) {
            auto d = bfs_distances(g, cycle.vertices[i], within);
            for (std::size_t j = 0; j < len; ++j) {
                auto along = std::min((j + len - i) % len, (i + len - j) % len);
                if (d[cycle.vertices[j]] != along)
                    throw InternalError("shortest_odd_cycle: graph distance differs from cycle distance");
            }
        }
        return cycle;
    }

    auto shortest_odd_cycle(const Graph & g) -> Cycle
    {
        auto c = shortest_odd_cycle_within(g, g.vertices());
        if (! c)
            throw PreconditionError("shortest_odd_cycle: graph is bipartite");
        return *c;
    }

    auto expansion_after_cycle_removal(const Graph & g, const VertexSet & w, const Cycle & cycle,
            const ExpansionParams & p, std::size_t cap, const ExpansionOptions & options) -> ExpansionVerdict
    {
        if (! is_cycle_in(g, cycle) || cycle.length() % 2 == 0)
            throw PreconditionError("expansion_after_cycle_removal: not an odd cycle of the graph");
        auto on_cycle = as_set(g.order(), cycle.vertices);
        std::size_t limit = cycle.length() == 3 ? 3 : 2;
        for (Vertex v = 0; v < g.order(); ++v)
            if (g.neighbours(v).intersection_count(on_cycle) > limit)
                throw PreconditionError("expansion_after_cycle_removal: vertex " + std::to_string(v) + " has more than "
                        + std::to_string(limit) + " neighbours on the cycle; it is not a shortest odd cycle");
        auto reduced = p;
        reduced.delta = std::max(0.0, p.delta - 3);
        return check_expansion(g, w - on_cycle, reduced, cap, options);
    }

    auto WingPair::path_to_root(Vertex v) const -> Path
    {
        Path p{{v}};
        while (parent.at(p.vertices.back()) != p.vertices.back())
            p.vertices.push_back(parent[p.vertices.back()]);
        return p;
    }

    auto grow_wings(const Graph & g, const VertexSet & w, Vertex x, Vertex y, const ExpansionParams & p,
            std::optional<std::size_t> size) -> WingPair
    {
        g.check_vertex(x);
        g.check_vertex(y);
        g.check_set(w);
        if (x == y)
            throw PreconditionError("grow_wings: roots must differ");
        auto target = size.value_or(static_cast<std::size_t>(std::max(1.0, std::ceil(p.beta * p.d / 2 - 1e-9))));

        WingPair wings{g.empty_set(), g.empty_set(), x, y, 0, std::vector<Vertex>(g.order(), static_cast<Vertex>(g.order()))};
        wings.a_set.insert(x);
        wings.b_set.insert(y);
        wings.parent[x] = x;
        wings.parent[y] = y;

        while (wings.a_set.count() < target) {
            auto current = wings.a_set.count();
            auto want = std::min<std::size_t>(target - current,
                    static_cast<std::size_t>(std::max(1.0, std::ceil(p.delta * static_cast<double>(current) - 1e-9))));
            auto avail = w - wings.a_set - wings.b_set;
            auto na = external_neighborhood(g, wings.a_set) & avail;
            auto nb = external_neighborhood(g, wings.b_set) & avail;
            auto only_a = na - nb, only_b = nb - na, common = na & nb;

            VertexSet add_a = g.empty_set(), add_b = g.empty_set();
            auto take = [&](const VertexSet & from, VertexSet & into, std::size_t & need) {
                for (auto v : from) {
                    if (need == 0)
                        break;
                    into.insert(v);
                    --need;
                }
            };
            std::size_t need_a = want, need_b = want;
            take(only_a, add_a, need_a);
            take(only_b, add_b, need_b);
            take(common - add_b, add_a, need_a);
            take(common - add_a, add_b, need_b);
            if (need_a || need_b) {
                std::ostringstream msg;
                msg << "growth stalled at |A| = " << current << ": need " << want << " fresh vertices per side";
                throw SearchFailure(FailureReport{"grow_wings", msg.str(),
                        nlohmann::json::array({{{"A", current}, {"only_A", only_a.count()}, {"only_B", only_b.count()},
                            {"common", common.count()}}})});
            }
            for (auto v : add_a)
                wings.parent[v] = (g.neighbours(v) & wings.a_set).first();
            for (auto v : add_b)
                wings.parent[v] = (g.neighbours(v) & wings.b_set).first();
            wings.a_set |= add_a;
            wings.b_set |= add_b;
            ++wings.radius_bound;
        }
        return wings;
    }

    auto disjoint_paths(const Graph & g, const VertexSet & b1, const VertexSet & b2, std::size_t count,
            const std::optional<VertexSet> & within) -> DisjointPaths
    {
        g.check_set(b1);
        g.check_set(b2);
        if (b1.intersects(b2))
            throw PreconditionError("disjoint_paths: b1 and b2 must be disjoint");
        auto scope = within.value_or(g.vertices());
        auto n = static_cast<Vertex>(g.order());
        const Vertex none = n, source = n + 1, sink = n + 2;
        auto src = b1 & scope, dst = b2 & scope;

        std::vector<char> through(n, 0);
        std::vector<Vertex> next(n, none), prev(n, none);
        std::size_t flow = 0;

        // States: 2v is v_in, 2v+1 is v_out; 2n is the source.
        auto state_count = 2 * std::size_t{n} + 1;
        std::vector<std::size_t> parent(state_count);
        std::vector<char> seen(state_count);
        VertexSet seen_in = g.empty_set();

        auto residual_search = [&]() -> std::optional<Vertex> {
            std::fill(seen.begin(), seen.end(), 0);
            seen_in.clear();
            std::deque<std::size_t> queue;
            auto root = 2 * std::size_t{n};
            seen[root] = 1;
            auto visit = [&](std::size_t s, std::size_t from) {
                if (seen[s])
                    return;
                seen[s] = 1;
                if (s % 2 == 0)
                    seen_in.insert(static_cast<Vertex>(s / 2));
                parent[s] = from;
                queue.push_back(s);
            };
            for (auto v : src)
                visit(2 * std::size_t{v}, root);
            while (! queue.empty()) {
                auto s = queue.front();
                queue.pop_front();
                auto v = static_cast<Vertex>(s / 2);
                if (s % 2 == 0) {
                    if (! through[v])
                        visit(s + 1, s);
                    else if (prev[v] < n)
                        visit(2 * std::size_t{prev[v]} + 1, s);
                }
                else {
                    if (dst.contains(v) && next[v] != sink)
                        return v;
                    if (through[v])
                        visit(s - 1, s);
                    for (auto u : (g.neighbours(v) & scope) - seen_in)
                        visit(2 * std::size_t{u}, s);
                }
            }
            return std::nullopt;
        };

        while (flow < count) {
            auto end = residual_search();
            if (! end)
                break;
            std::vector<std::size_t> chain{2 * std::size_t{*end} + 1};
            while (chain.back() != 2 * std::size_t{n})
                chain.push_back(parent[chain.back()]);
            std::reverse(chain.begin(), chain.end());
            next[*end] = sink;
            for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
                auto from = chain[i], to = chain[i + 1];
                if (from == 2 * std::size_t{n}) {
                    prev[to / 2] = source;
                    continue;
                }
                auto fv = static_cast<Vertex>(from / 2), tv = static_cast<Vertex>(to / 2);
                if (fv == tv)
                    through[fv] = from % 2 == 0 ? 1 : 0;
                else if (from % 2 == 1) {
                    next[fv] = tv;
                    prev[tv] = fv;
                }
                else {
                    // cancelling flow tv -> fv
                    if (next[tv] == fv)
                        next[tv] = none;
                    if (prev[fv] == tv)
                        prev[fv] = none;
                }
            }
            ++flow;
        }

        DisjointPaths result;
        result.max_flow = flow;
        if (flow >= count) {
            for (auto v : src) {
                if (prev[v] != source || ! through[v])
                    continue;
                std::vector<Vertex> walk{v};
                while (next[walk.back()] != sink)
                    walk.push_back(next[walk.back()]);
                std::size_t start = 0;
                for (std::size_t i = 0; i < walk.size(); ++i)
                    if (b1.contains(walk[i]))
                        start = i;
                std::size_t stop = start;
                while (! b2.contains(walk[stop]))
                    ++stop;
                result.paths.push_back(Path{std::vector<Vertex>(walk.begin() + static_cast<std::ptrdiff_t>(start),
                        walk.begin() + static_cast<std::ptrdiff_t>(stop) + 1)});
            }
            if (result.paths.size() != flow)
                throw InternalError("disjoint_paths: flow decomposition lost a path");
            result.paths.resize(count);
        }
        else {
            residual_search();
            VertexSet cut = g.empty_set();
            for (Vertex v = 0; v < n; ++v)
                if (seen[2 * std::size_t{v}] && ! seen[2 * std::size_t{v} + 1])
                    cut.insert(v);
            if (cut.count() != flow)
                throw InternalError("disjoint_paths: cut size differs from flow value");
            result.cut = cut;
        }
        return result;
    }
}
