#pragma once

// Shared machinery for finding small sets with few external neighbours.

#include <goodness/graph.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

namespace goodness::detail
{
    /// |((reach | extra) - s - {skip}) & target|, word-parallel.
    inline auto neighbour_count(const VertexSet & reach, const VertexSet * extra, const VertexSet & s,
            const VertexSet & target) -> std::size_t
    {
        const auto & r = reach.words();
        const auto & sw = s.words();
        const auto & t = target.words();
        std::size_t result = 0;
        if (extra) {
            const auto & e = extra->words();
            for (std::size_t i = 0; i < r.size(); ++i)
                result += std::popcount((r[i] | e[i]) & ~sw[i] & t[i]);
        }
        else
            for (std::size_t i = 0; i < r.size(); ++i)
                result += std::popcount(r[i] & ~sw[i] & t[i]);
        return result;
    }

    /// Exhaustive search for S inside `scope` with |S| = size and
    /// |N(S) & target| <= max_allowed, vertices taken in increasing id order.
    class ExactSetSearch
    {
        public:
            ExactSetSearch(const Graph & g, const VertexSet & scope, const VertexSet & target, Budget & budget) :
                _g(g), _scope(scope), _target(target), _budget(budget)
            {
            }

            auto run(std::size_t size, long long max_allowed, VertexSet & out) -> SearchStatus
            {
                if (max_allowed < 0 || size == 0 || size > _scope.count())
                    return SearchStatus::none_found;
                _size = size;
                _max = max_allowed;
                _exhausted = false;
                _sets.assign(size + 1, _g.empty_set());
                _reach.assign(size + 1, _g.empty_set());
                bool found = extend(0, 0, true);
                if (found) {
                    out = _sets[size];
                    return SearchStatus::found;
                }
                return _exhausted ? SearchStatus::budget_exhausted : SearchStatus::none_found;
            }

        private:
            auto extend(std::size_t depth, Vertex last, bool first) -> bool
            {
                if (! _budget.spend()) {
                    _exhausted = true;
                    return false;
                }
                if (depth == _size)
                    return static_cast<long long>(neighbour_count(_reach[depth], nullptr, _sets[depth], _target)) <= _max;
                if (depth > 0) {
                    auto count = static_cast<long long>(neighbour_count(_reach[depth], nullptr, _sets[depth], _target));
                    if (count - static_cast<long long>(_size - depth) > _max)
                        return false;
                }
                std::size_t remaining = _size - depth;
                for (Vertex v = first ? _scope.first() : _scope.next_after(last); v < _scope.universe(); v = _scope.next_after(v)) {
                    if (remaining > 1 && _scope.next_after(v) >= _scope.universe())
                        break;
                    _sets[depth + 1] = _sets[depth];
                    _sets[depth + 1].insert(v);
                    _reach[depth + 1] = _reach[depth];
                    _reach[depth + 1] |= _g.neighbours(v);
                    if (extend(depth + 1, v, false))
                        return true;
                    if (_exhausted)
                        return false;
                }
                return false;
            }

            const Graph & _g;
            const VertexSet & _scope;
            const VertexSet & _target;
            Budget & _budget;
            std::size_t _size = 0;
            long long _max = 0;
            bool _exhausted = false;
            std::vector<VertexSet> _sets, _reach;
    };

    /// Greedy growth from `seed` inside `scope`, each step adding the vertex
    /// that keeps |N(S) & target| smallest (ties: lowest id). After every
    /// step `accept(S, count)` decides whether to stop with S.
    inline auto grow_greedy(const Graph & g, const VertexSet & scope, const VertexSet & target, Vertex seed,
            std::size_t max_size, const std::function<bool(const VertexSet &, std::size_t)> & accept)
        -> std::optional<VertexSet>
    {
        VertexSet s = g.empty_set(), reach = g.empty_set();
        s.insert(seed);
        reach |= g.neighbours(seed);
        if (accept(s, neighbour_count(reach, nullptr, s, target)))
            return s;
        while (s.count() < max_size) {
            VertexSet frontier = (reach - s) & scope;
            const VertexSet & candidates = frontier.empty() ? scope : frontier;
            Vertex best = static_cast<Vertex>(g.order());
            std::size_t best_count = static_cast<std::size_t>(-1);
            for (auto u : candidates) {
                if (s.contains(u))
                    continue;
                s.insert(u);
                auto c = neighbour_count(reach, &g.neighbours(u), s, target);
                s.erase(u);
                if (c < best_count) {
                    best_count = c;
                    best = u;
                }
            }
            if (best == g.order())
                break;
            s.insert(best);
            reach |= g.neighbours(best);
            if (accept(s, best_count))
                return s;
        }
        return std::nullopt;
    }

    /// Seeds for the greedy sweep: the lowest-degree vertices of scope, then random ones.
    inline auto sweep_seeds(const Graph & g, const VertexSet & scope, std::size_t restarts, std::uint64_t seed)
        -> std::vector<Vertex>
    {
        auto members = scope.to_vector();
        std::vector<Vertex> result;
        if (members.empty() || restarts == 0)
            return result;
        auto by_degree = members;
        std::stable_sort(by_degree.begin(), by_degree.end(), [&](Vertex a, Vertex b) {
            return g.neighbours(a).intersection_count(scope) < g.neighbours(b).intersection_count(scope);
        });
        std::size_t low = std::min(by_degree.size(), (restarts + 1) / 2);
        result.assign(by_degree.begin(), by_degree.begin() + static_cast<std::ptrdiff_t>(low));
        std::mt19937_64 rng(seed);
        while (result.size() < restarts && result.size() < members.size()) {
            auto v = members[std::uniform_int_distribution<std::size_t>(0, members.size() - 1)(rng)];
            if (std::find(result.begin(), result.end(), v) == result.end())
                result.push_back(v);
        }
        return result;
    }
}
