#pragma once

#include <goodness/adjuster.hpp>
#include <goodness/constants.hpp>
#include <goodness/errors.hpp>
#include <goodness/graph.hpp>
#include <goodness/multipartite.hpp>

#include <nlohmann/json.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace goodness
{
    struct CycleOrAdjusterOptions
    {
        std::optional<VertexSet> within;
    };

    /// Exactly one of cycle (s >= 2) or adjuster (s = 1) is set.
    struct CycleOrAdjuster
    {
        std::optional<Cycle> cycle;
        std::optional<Adjuster> adjuster;
        nlohmann::json trace = nlohmann::json::array();
    };

    /// Collects adjusters until their short cycles total r_total_factor * mk,
    /// folds them together, then collects and folds long cycles, and merges
    /// the two. For s >= 2 the result is shortened and routed to a cycle of
    /// length exactly n; for s = 1 it is an adjuster with length in
    /// [adjuster_len_low * n, adjuster_len_high * n].
    auto cycle_or_adjuster(const Graph & g, const MultipartiteSpec & spec, std::size_t s, std::size_t n,
            const ConstantsLedger & cfg, const CycleOrAdjusterOptions & options = {}) -> Outcome<CycleOrAdjuster>;

    /// Checks made on one block of the split variant.
    struct BlockCertificate
    {
        VertexSet block;
        double size_threshold = 0;
        bool size_ok = false;
        SearchStatus km_search = SearchStatus::budget_exhausted;   // none_found certifies freeness
        std::size_t connectivity_set_size = 0;
        std::size_t connectivity_paths = 0;
        std::size_t connectivity_checked = 0;
        std::size_t connectivity_passed = 0;

        auto ok() const -> bool
        {
            return size_ok && km_search == SearchStatus::none_found && connectivity_passed == connectivity_checked;
        }
    };

    enum class StabilityVariant
    {
        reduced,    // a large subgraph whose complement avoids the target minus one part
        blocks      // k - 1 large blocks with no edges between them
    };

    struct StabilityOutcome
    {
        StabilityVariant variant = StabilityVariant::blocks;
        // reduced variant
        VertexSet reduced;
        std::optional<MultipartiteSpec> reduced_spec;
        std::size_t removed_part = 1;       // sorted index of the dropped part
        VertexSet core;                     // B with |B| = m_2 and no edges into `reduced`
        // blocks variant
        std::vector<BlockCertificate> blocks;
        VertexSet separator;
        nlohmann::json trace = nlohmann::json::array();
    };

    auto to_json(const StabilityOutcome & s) -> nlohmann::json;

    /// Removes small separators that split off components of order at least
    /// m_2, then certifies k - 1 mutually non-adjacent blocks or finds a set B
    /// of m_2 vertices with |B + N(B)| < n.
    auto stability_decompose(const Graph & g, const MultipartiteSpec & spec, std::size_t n, std::size_t z,
            const ConstantsLedger & cfg) -> Outcome<StabilityOutcome>;

    enum class EmbedOutcome
    {
        cycle_found,
        complement_contains,
        inconclusive
    };

    auto to_string(EmbedOutcome o) -> const char *;

    struct EmbedResult
    {
        EmbedOutcome outcome = EmbedOutcome::inconclusive;
        std::optional<Cycle> cycle;
        std::optional<Embedding> embedding;
        std::string stage;
        std::vector<std::string> notes;
        nlohmann::json trace = nlohmann::json::array();
    };

    auto to_json(const EmbedResult & r) -> nlohmann::json;

    /// Finds a cycle of length exactly n in g or a copy of spec in its
    /// complement. Every returned witness has been re-verified against g.
    auto embed_cycle(const Graph & g, const MultipartiteSpec & spec, std::size_t n, const ConstantsLedger & cfg)
        -> EmbedResult;

    /// Vertices whose removal disconnects their component of g[within].
    auto articulation_points(const Graph & g, const VertexSet & within) -> VertexSet;
}
