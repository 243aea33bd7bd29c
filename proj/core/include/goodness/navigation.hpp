#pragma once

#include <goodness/errors.hpp>
#include <goodness/expansion.hpp>
#include <goodness/graph.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace goodness
{
    struct ShortPath
    {
        Path path;
        double bound = 0;               // 44 log k log |g|
        bool bound_checked = false;     // whether the length bound was asserted
        std::vector<std::string> warnings;
    };

    struct ShortPathOptions
    {
        /// The caller has verified that g expands into w with p; enables the
        /// post-hoc length assertion.
        bool expansion_verified = false;
        std::optional<VertexSet> w;
        double length_factor = 44;
    };

    /// An a-b path avoiding c, grown by alternating layers
    /// A_{i+1} = (N(A_i) | A_i) - c from both ends until they meet; meeting
    /// ties are broken by the lowest vertex id. Throws SearchFailure when
    /// the layers stop growing before meeting.
    auto short_path(const Graph & g, const VertexSet & a, const VertexSet & b, const VertexSet & c,
            const ExpansionParams & p, const ShortPathOptions & options = {}) -> ShortPath;

    /// A shortest odd cycle, found by BFS from every vertex. Throws
    /// PreconditionError on bipartite input.
    auto shortest_odd_cycle(const Graph & g) -> Cycle;

    /// Shortest odd cycle inside `within`, or nullopt when G[within] is bipartite.
    auto shortest_odd_cycle_within(const Graph & g, const VertexSet & within) -> std::optional<Cycle>;

    /// Asserts that no vertex has more than 3 neighbours on the cycle (2 when
    /// the cycle has length >= 5) and checks (Delta - 3, beta, d, k)-expansion
    /// into w - V(cycle).
    auto expansion_after_cycle_removal(const Graph & g, const VertexSet & w, const Cycle & cycle,
            const ExpansionParams & p, std::size_t cap, const ExpansionOptions & options = {}) -> ExpansionVerdict;

    struct WingPair
    {
        VertexSet a_set;
        VertexSet b_set;
        Vertex x = 0;
        Vertex y = 0;
        std::size_t radius_bound = 0;
        std::vector<Vertex> parent;     // tree edges inside each wing, roots point to themselves

        /// Tree path from a wing member back to its root.
        auto path_to_root(Vertex v) const -> Path;
    };

    /// Grows disjoint wings A around x and B around y inside w | {x, y} to size
    /// `size` (default ceil(beta d / 2)), each round adding Delta|A_i| fresh
    /// vertices per side and splitting shared neighbours. Throws SearchFailure
    /// when a round stalls.
    auto grow_wings(const Graph & g, const VertexSet & w, Vertex x, Vertex y, const ExpansionParams & p,
            std::optional<std::size_t> size = std::nullopt) -> WingPair;

    struct DisjointPaths
    {
        std::vector<Path> paths;        // filled when count paths exist
        std::optional<VertexSet> cut;   // otherwise a separating vertex set of size < count
        std::size_t max_flow = 0;

        auto found() const -> bool { return ! cut.has_value(); }
    };

    /// Either `count` vertex-disjoint b1-b2 paths (each meeting b1 and b2 only
    /// at its ends) or a vertex cut of size < count, by augmenting paths on
    /// the vertex-split unit network restricted to `within`.
    auto disjoint_paths(const Graph & g, const VertexSet & b1, const VertexSet & b2, std::size_t count,
            const std::optional<VertexSet> & within = std::nullopt) -> DisjointPaths;
}
