#pragma once

#include <goodness/vertex_set.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace goodness
{
    using Edge = std::pair<Vertex, Vertex>;

    /// Simple undirected graph on the dense vertex ids [0, order()).
    ///
    /// Each adjacency row is a VertexSet over the whole vertex range. Graphs are
    /// built with add_edge() and then treated as immutable values; every
    /// algorithm in this library takes them by const reference.
    class Graph
    {
        public:
            Graph() = default;
            explicit Graph(std::size_t order);

            static auto from_edges(std::size_t order, std::span<const Edge> edges) -> Graph;
            static auto complete(std::size_t order) -> Graph;
            static auto cycle(std::size_t order) -> Graph;
            static auto path(std::size_t order) -> Graph;

            auto order() const -> std::size_t { return _rows.size(); }
            auto size() const -> std::size_t;

            auto adjacent(Vertex u, Vertex v) const -> bool { return _rows[u].contains(v); }
            auto neighbours(Vertex v) const -> const VertexSet & { return _rows[v]; }
            auto degree(Vertex v) const -> std::size_t { return _rows[v].count(); }

            void add_edge(Vertex u, Vertex v);
            void remove_edge(Vertex u, Vertex v);

            auto vertices() const -> VertexSet { return VertexSet::full(order()); }
            auto empty_set() const -> VertexSet { return VertexSet(order()); }
            auto edges() const -> std::vector<Edge>;

            /// Subgraph induced on `keep`, relabelled densely in increasing id
            /// order. If `original` is given it receives new-id -> old-id.
            auto induced(const VertexSet & keep, std::vector<Vertex> * original = nullptr) const -> Graph;

            /// Disjoint union: other's vertices are shifted by order().
            auto disjoint_union(const Graph & other) const -> Graph;

            void check_vertex(Vertex v) const;
            void check_set(const VertexSet & s) const;

            auto operator== (const Graph & other) const -> bool = default;

        private:
            std::vector<VertexSet> _rows;
    };

    /// Ordered vertex list; consecutive vertices adjacent, all distinct.
    struct Path
    {
        std::vector<Vertex> vertices;

        auto length() const -> std::size_t { return vertices.empty() ? 0 : vertices.size() - 1; }
        auto front() const -> Vertex { return vertices.front(); }
        auto back() const -> Vertex { return vertices.back(); }
        auto operator== (const Path &) const -> bool = default;
    };

    /// Ordered vertex list; the last vertex is adjacent to the first.
    struct Cycle
    {
        std::vector<Vertex> vertices;

        auto length() const -> std::size_t { return vertices.size(); }
        auto operator== (const Cycle &) const -> bool = default;
    };

    auto is_path_in(const Graph & g, const Path & p) -> bool;
    auto is_cycle_in(const Graph & g, const Cycle & c) -> bool;
    auto as_set(std::size_t universe, std::span<const Vertex> vertices) -> VertexSet;

    /// Vertices outside `a` with at least one neighbour in `a`.
    auto external_neighborhood(const Graph & g, const VertexSet & a) -> VertexSet;

    auto complement(const Graph & g) -> Graph;

    /// Shortest-path length, std::nullopt when v is unreachable from u.
    auto distance(const Graph & g, Vertex u, Vertex v) -> std::optional<std::size_t>;

    inline constexpr std::size_t unreachable = static_cast<std::size_t>(-1);

    /// BFS distances from `source` inside the vertex set `within` (which must
    /// contain the source); vertices outside or unreachable get `unreachable`.
    auto bfs_distances(const Graph & g, Vertex source, const VertexSet & within) -> std::vector<std::size_t>;

    /// Shortest path between u and v inside `within`, if one exists.
    auto shortest_path_within(const Graph & g, Vertex u, Vertex v, const VertexSet & within) -> std::optional<Path>;

    auto components(const Graph & g) -> std::vector<VertexSet>;
    auto components_within(const Graph & g, const VertexSet & within) -> std::vector<VertexSet>;

    enum class SearchStatus
    {
        found,
        none_found,
        budget_exhausted
    };

    auto to_string(SearchStatus s) -> const char *;

    /// Node budget for exhaustive searches. A zero limit means unlimited.
    struct Budget
    {
        std::uint64_t limit = 0;
        std::uint64_t used = 0;

        static auto unlimited() -> Budget { return Budget{}; }
        static auto nodes(std::uint64_t n) -> Budget { return Budget{n, 0}; }

        /// Charge one node; false once the limit is exceeded.
        auto spend() -> bool
        {
            ++used;
            return limit == 0 || used <= limit;
        }
    };

    struct CycleSearch
    {
        SearchStatus status = SearchStatus::none_found;
        std::optional<Cycle> cycle;
        std::uint64_t nodes = 0;
    };

    /// Looks for a cycle with exactly `length` vertices. none_found is only
    /// reported when the search ran to completion.
    auto find_cycle_of_length(const Graph & g, std::size_t length, Budget budget = Budget::unlimited()) -> CycleSearch;

    /// As find_cycle_of_length, restricted to cycles through `through`.
    auto find_cycle_through(const Graph & g, Vertex through, std::size_t length, Budget budget = Budget::unlimited()) -> CycleSearch;

    struct PathSearch
    {
        SearchStatus status = SearchStatus::none_found;
        std::optional<Path> path;
        std::uint64_t nodes = 0;
    };

    /// Looks for an x-y path on exactly `vertex_count` vertices inside `within`.
    auto find_path_of_order(const Graph & g, Vertex x, Vertex y, std::size_t vertex_count,
            const VertexSet & within, Budget budget = Budget::unlimited()) -> PathSearch;

    /// Indices of a monotone subsequence of length r. Requires
    /// seq.size() >= (r-1)^2 + 1; prefers non-decreasing when both exist.
    auto monotone_subsequence(std::span<const long long> seq, std::size_t r) -> std::vector<std::size_t>;
}
