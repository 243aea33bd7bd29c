#pragma once

#include <goodness/graph.hpp>
#include <goodness/multipartite.hpp>

#include <nlohmann/json.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace goodness
{
    /// True iff g has no cycle of length n and its complement has no copy of
    /// spec, both decided exhaustively. Graphs above 128 vertices are refused
    /// with SizeError.
    auto is_ramsey_witness(const Graph & g, std::size_t n, const MultipartiteSpec & spec) -> bool;

    struct RamseyOptions
    {
        std::size_t max_order = 11;
        bool allow_large = false;                   // lift the max_order <= 11 guard
        std::size_t jobs = 1;
        std::optional<std::string> checkpoint_dir;  // level_<N>.json files, resumed when present
    };

    /// One level of the search: all witnesses on `order` vertices, up to isomorphism.
    struct LevelStats
    {
        std::size_t order = 0;
        std::size_t candidates = 0;     // one-vertex extensions tested
        std::size_t witnesses = 0;      // isomorphism classes kept
        double seconds = 0;
        bool resumed = false;
    };

    struct RamseyReport
    {
        std::size_t n = 0;
        MultipartiteSpec spec;
        std::optional<std::size_t> value;       // unset when every order up to max_order has a witness
        std::size_t lower_bound = 0;            // value > lower_bound - 1 is established
        std::optional<Graph> lower_witness;     // on lower_bound - 1 vertices
        std::vector<LevelStats> levels;         // the upper certificate when value is set
        std::size_t formula = 0;                // (k - 1)(n - 1) + sigma
        std::optional<bool> goodness;
        double seconds = 0;

        auto open_above() const -> bool { return ! value.has_value(); }
        /// Timings and resume flags are left out when include_timing is false,
        /// so that reruns produce identical output.
        auto to_json(bool include_timing = true) const -> nlohmann::json;
    };

    /// Smallest N such that no graph on N vertices is a witness, by extending
    /// every witness class on N - 1 vertices with a new vertex in all possible
    /// ways (witnesses are closed under deleting vertices).
    auto exact_ramsey(std::size_t n, const MultipartiteSpec & spec, const RamseyOptions & options = {}) -> RamseyReport;

    /// Reports for every (n, spec) pair of the grid, n-major.
    auto goodness_table(const std::vector<std::size_t> & ns, const std::vector<MultipartiteSpec> & specs,
            const RamseyOptions & options = {}) -> std::vector<RamseyReport>;

    auto table_csv(const std::vector<RamseyReport> & table, bool include_timing = true) -> std::string;
}
