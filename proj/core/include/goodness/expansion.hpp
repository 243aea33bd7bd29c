#pragma once

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
    /// (Delta, beta, d, k) expansion into a set W:
    ///   clause 1: |N(S) & W| >= Delta |S| whenever |S| <= beta d,
    ///   clause 2: |N(S)| >= |S| / (divisor log k) whenever beta d <= |S| <= |G|/2.
    struct ExpansionParams
    {
        double delta = 10;
        double beta = 1;
        double d = 1;
        std::size_t k = 2;
        double divisor = 10;

        void validate() const;
        auto small_limit() const -> std::size_t;      // largest size under clause 1
        auto large_start() const -> std::size_t;      // smallest size under clause 2
        auto clause2_threshold(std::size_t size) const -> double;
    };

    enum class ExpansionStatus
    {
        verified,
        violated
    };

    struct ExpansionVerdict
    {
        ExpansionStatus status = ExpansionStatus::verified;
        std::optional<VertexSet> witness;
        int clause = 0;
        bool heuristic = false;         // the witness came from the sweep above the cap
        std::size_t verified_cap = 0;   // every S with |S| <= verified_cap was checked
        std::size_t requested_cap = 0;
        std::uint64_t nodes = 0;

        auto to_json() const -> nlohmann::json;
    };

    struct ExpansionOptions
    {
        std::uint64_t budget_nodes = 2'000'000;
        std::size_t restarts = 4;
        std::uint64_t seed = 1;
        bool sweep = true;
    };

    /// Exhaustive over |S| <= cap (lowered honestly if the node budget runs
    /// out), then a greedy growth sweep over larger S. `verified` therefore
    /// means "no violation up to verified_cap, none found above".
    auto check_expansion(const Graph & g, const VertexSet & w, const ExpansionParams & p, std::size_t cap,
            const ExpansionOptions & options = {}) -> ExpansionVerdict;

    /// Whether S violates the given clause (1 or 2), recomputed from scratch.
    auto violates_clause(const Graph & g, const VertexSet & w, const ExpansionParams & p, const VertexSet & s,
            int clause) -> bool;

    struct ExtractionParams
    {
        double M = 1;
        double beta = 1;
        double delta = 10;
        double divisor = 10;
        double slack_factor = 1;
        std::size_t cap = 8;
        ExpansionOptions search;

        /// M chosen so that the trimmed order fills `fill` of the host.
        static auto fitted(const ConstantsLedger & c, std::size_t order, const MultipartiteSpec & spec)
            -> ExtractionParams;
    };

    struct ExtractionResult
    {
        VertexSet vertices;             // V(F), in the host's vertex ids
        MultipartiteSpec spec;          // H'
        ExpansionParams params;         // (Delta, beta, m(H'), chi(H'))
        double lower_bound = 0;         // M|H'| log chi(H') - m(H')
        double upper_bound = 0;         // M|H'| log chi(H')
        std::vector<std::string> warnings;
        nlohmann::json trace = nlohmann::json::array();
    };

    /// Finds F inside g and a sub-join H' of spec such that F expands with
    /// parameters (Delta, beta, m(H'), chi(H')) and |F| is sandwiched between
    /// M|H'| log chi(H') - m(H') and M|H'| log chi(H'). Assumes the complement
    /// of g does not contain spec; where that cannot be decided within the
    /// budget the trace says so.
    auto extract_expander(const Graph & g, const MultipartiteSpec & spec, const ExtractionParams & p)
        -> Outcome<ExtractionResult>;

    auto extract_expander(const Graph & g, const VertexSet & within, const MultipartiteSpec & spec,
            const ExtractionParams & p) -> Outcome<ExtractionResult>;
}
