#pragma once

#include <goodness/graph.hpp>
#include <goodness/multipartite.hpp>

#include <cstddef>
#include <optional>

// Slow, independent reimplementations used as ground truth in tests. None of
// them call into the library beyond Graph/VertexSet accessors.
namespace goodness::oracle
{
    /// Held-Karp style DP over vertex subsets; order <= 20.
    auto has_cycle_of_length(const Graph & g, std::size_t length) -> bool;

    /// Tries every assignment of vertices to a class or to nothing.
    auto complement_contains(const Graph & g, const MultipartiteSpec & spec) -> bool;

    /// Length of a shortest odd cycle via BFS on the parity double cover,
    /// 0 when g is bipartite.
    auto shortest_odd_cycle_length(const Graph & g) -> std::size_t;

    /// Maximum number of vertex-disjoint b1-b2 paths inside `within`, by
    /// push-relabel on the vertex-split network.
    auto max_disjoint_paths(const Graph & g, const VertexSet & b1, const VertexSet & b2, const VertexSet & within)
        -> std::size_t;

    /// Whether removing `cut` leaves no b1-b2 path inside `within`.
    auto separates(const Graph & g, const VertexSet & b1, const VertexSet & b2, const VertexSet & within,
            const VertexSet & cut) -> bool;

    /// R(C_n, spec) by running through every labelled graph of each order up
    /// to max_order (at most 7); nullopt when not settled by then.
    auto ramsey_by_enumeration(std::size_t n, const MultipartiteSpec & spec, std::size_t max_order)
        -> std::optional<std::size_t>;

    /// Whether the values at the given indices are non-decreasing or non-increasing.
    auto is_monotone(const std::vector<long long> & seq, const std::vector<std::size_t> & idx) -> bool;
}
