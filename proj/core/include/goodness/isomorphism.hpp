#pragma once

#include <goodness/graph.hpp>

#include <cstdint>
#include <vector>

namespace goodness
{
    /// Colour refinement (1-dimensional Weisfeiler-Leman) run to a stable
    /// partition. Colours are hashes, so they are comparable across graphs.
    auto refined_colours(const Graph & g) -> std::vector<std::uint64_t>;

    /// Isomorphism invariant: order, size and the sorted refined colours.
    auto invariant_hash(const Graph & g) -> std::uint64_t;

    /// Exact isomorphism test by backtracking inside refined colour classes.
    auto are_isomorphic(const Graph & a, const Graph & b) -> bool;
}
