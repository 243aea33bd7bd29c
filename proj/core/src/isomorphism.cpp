#include <goodness/isomorphism.hpp>

#include <algorithm>
#include <functional>
#include <unordered_set>

namespace goodness
{
    namespace
    {
        auto mix(std::uint64_t h, std::uint64_t v) -> std::uint64_t
        {
            // splitmix64 finaliser over the combined word
            h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h ^= h >> 30;
            h *= 0xbf58476d1ce4e5b9ULL;
            h ^= h >> 27;
            h *= 0x94d049bb133111ebULL;
            h ^= h >> 31;
            return h;
        }

        auto distinct(const std::vector<std::uint64_t> & c) -> std::size_t
        {
            return std::unordered_set<std::uint64_t>(c.begin(), c.end()).size();
        }
    }

    auto refined_colours(const Graph & g) -> std::vector<std::uint64_t>
    {
        auto n = g.order();
        std::vector<std::uint64_t> colour(n);
        for (Vertex v = 0; v < n; ++v)
            colour[v] = mix(1, g.degree(v));
        auto classes = distinct(colour);
        std::vector<std::uint64_t> next(n), scratch;
        for (std::size_t round = 0; round < n; ++round) {
            for (Vertex v = 0; v < n; ++v) {
                scratch.clear();
                for (auto u : g.neighbours(v))
                    scratch.push_back(colour[u]);
                std::sort(scratch.begin(), scratch.end());
                auto h = mix(colour[v], scratch.size());
                for (auto c : scratch)
                    h = mix(h, c);
                next[v] = h;
            }
            colour.swap(next);
            auto now = distinct(colour);
            if (now == classes)
                break;
            classes = now;
        }
        return colour;
    }

    auto invariant_hash(const Graph & g) -> std::uint64_t
    {
        auto colour = refined_colours(g);
        std::sort(colour.begin(), colour.end());
        auto h = mix(g.order(), g.size());
        for (auto c : colour)
            h = mix(h, c);
        return h;
    }

    auto are_isomorphic(const Graph & a, const Graph & b) -> bool
    {
        auto n = a.order();
        if (n != b.order() || a.size() != b.size())
            return false;
        auto ca = refined_colours(a), cb = refined_colours(b);
        auto sa = ca, sb = cb;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb)
            return false;

        // map vertices of a in order of increasing colour class size
        std::vector<Vertex> order(n);
        for (Vertex v = 0; v < n; ++v)
            order[v] = v;
        auto class_size = [&](Vertex v) { return std::count(sa.begin(), sa.end(), ca[v]); };
        std::stable_sort(order.begin(), order.end(), [&](Vertex x, Vertex y) { return class_size(x) < class_size(y); });

        std::vector<Vertex> image(n, static_cast<Vertex>(n));
        std::vector<bool> taken(n, false);
        std::function<bool(std::size_t)> extend = [&](std::size_t i) {
            if (i == n)
                return true;
            auto v = order[i];
            for (Vertex w = 0; w < n; ++w) {
                if (taken[w] || cb[w] != ca[v])
                    continue;
                bool ok = true;
                for (std::size_t j = 0; j < i && ok; ++j) {
                    auto u = order[j];
                    ok = a.adjacent(u, v) == b.adjacent(image[u], w);
                }
                if (! ok)
                    continue;
                image[v] = w;
                taken[w] = true;
                if (extend(i + 1))
                    return true;
                taken[w] = false;
            }
            return false;
        };
        return extend(0);
    }
}
