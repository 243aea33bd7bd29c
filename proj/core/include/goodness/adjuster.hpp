#pragma once

#include <goodness/constants.hpp>
#include <goodness/errors.hpp>
#include <goodness/expansion.hpp>
#include <goodness/graph.hpp>
#include <goodness/multipartite.hpp>

#include <nlohmann/json.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace goodness
{
    /// Odd cycle with an almost-antipodal marked pair: the two v-w arcs have
    /// (|C|-1)/2 and (|C|+1)/2 edges.
    struct ShortCycle
    {
        Cycle cycle;
        Vertex v = 0;
        Vertex w = 0;

        /// Vertices of the short (or long) arc, listed from v to w.
        auto side(bool long_side) const -> std::vector<Vertex>;
    };

    /// r disjoint short cycles chained by connector paths, paths[i] running
    /// from cycles[i].w to cycles[(i + 1) % r].v. With r = 0 the adjuster is
    /// the plain cycle `loop`. The host graph is passed to every operation
    /// rather than stored.
    struct Adjuster
    {
        std::vector<ShortCycle> cycles;
        std::vector<Path> paths;
        std::optional<Cycle> loop;
        std::size_t cycle_cap = 0;

        static auto from_cycle(Cycle c, std::size_t cap = 0) -> Adjuster;

        auto r() const -> std::size_t { return cycles.size(); }

        /// Length of the longest route.
        auto length() const -> std::size_t;

        auto vertex_set(std::size_t universe) const -> VertexSet;
    };

    auto to_json(const Adjuster & a) -> nlohmann::json;
    auto adjuster_from_json(const nlohmann::json & j) -> Adjuster;

    struct ViolationReport
    {
        std::vector<std::string> violations;

        auto ok() const -> bool { return violations.empty(); }
    };

    auto validate(const Graph & g, const Adjuster & adj) -> ViolationReport;

    struct Route
    {
        std::vector<bool> short_side;   // per short cycle
        Cycle cycle;
    };

    /// The route taking the short side exactly where short_side is set.
    auto realize_route(const Adjuster & adj, const std::vector<bool> & short_side) -> Cycle;

    /// All 2^r routes; refuses r > 20 with SizeError.
    auto routes(const Adjuster & adj) -> std::vector<Route>;

    /// Route of exactly `target` vertices, taking the short side on the
    /// first (length - target) cycles.
    auto route_of_length(const Adjuster & adj, std::size_t target) -> Cycle;

    /// Builds the adjuster that traverses `cycle` and keeps as short cycles
    /// those candidates whose one arc lies contiguously on `cycle` while the
    /// other arc's interior avoids it.
    auto reattach_short_cycles(const Cycle & cycle, const std::vector<ShortCycle> & candidates, std::size_t cap)
        -> Adjuster;

    /// Shortest path between the ends of `p` using only p's vertices; it is
    /// an induced path of g.
    auto shortcut_path(const Graph & g, const Path & p) -> Path;

    struct MergeStats
    {
        std::size_t s = 0;              // paths used after trimming
        std::size_t t = 0;              // monotone pairs available
        std::size_t longest_path = 0;
        std::size_t pair = 0;
        std::string label_class;
        nlohmann::json trace = nlohmann::json::object();
    };

    /// Merges two disjoint adjusters along at least 17 disjoint f1-f2 paths,
    /// keeping one consecutive pair of monotone paths whose loss stays within
    /// (r1+r2)(1-4/sqrt(s)) - 4 short cycles and (l1+l2)(1-4/sqrt(s)) length.
    auto merge_adjusters(const Graph & g, const Adjuster & f1, const Adjuster & f2, const std::vector<Path> & paths,
            MergeStats * stats = nullptr) -> Adjuster;

    struct EfficientMergeOptions
    {
        std::uint64_t budget_nodes = 200'000;  // for the K_{m1,m2}-freeness precondition check
        bool check_freeness = true;
    };

    /// Merges along two disjoint paths, losing at most 2(m1+m2) short cycles
    /// and 2(m1+m2) length, when the complement of each adjuster's vertex set
    /// is K_{m1,m2}-free.
    auto merge_efficient(const Graph & g, const Adjuster & f1, const Adjuster & f2, const Path & p1, const Path & p2,
            std::size_t m1, std::size_t m2, const EfficientMergeOptions & options = {},
            nlohmann::json * trace = nullptr) -> Adjuster;

    /// Shortcuts connector paths (the loop when r = 0) by chords of g until
    /// the length lies in [lo, hi]; r is unchanged. A chordless stretch of
    /// |spec| + chi(spec) - 1 consecutive vertices is reported as a
    /// counterexample to spec-freeness.
    auto shorten_section(const Graph & g, const Adjuster & adj, const MultipartiteSpec & spec, std::size_t lo,
            std::size_t hi) -> Adjuster;

    struct PipelineOptions
    {
        std::optional<VertexSet> within;    // restrict to these vertices
        std::optional<std::size_t> target_size;   // stop growing once |Y| exceeds this
    };

    /// Chains shortest odd cycles of an extracted expander with wing-guided
    /// short paths into an adjuster.
    auto find_adjuster(const Graph & g, const MultipartiteSpec & spec, const ConstantsLedger & cfg,
            const PipelineOptions & options = {}, nlohmann::json * trace = nullptr) -> Outcome<Adjuster>;

    /// Chains edges with wings into a cycle with length in [min_length,
    /// max_length], truncating with chords if it overshoots.
    auto find_long_cycle(const Graph & g, const MultipartiteSpec & spec, const ConstantsLedger & cfg,
            std::size_t min_length, std::size_t max_length, const PipelineOptions & options = {},
            nlohmann::json * trace = nullptr) -> Outcome<Cycle>;
}
