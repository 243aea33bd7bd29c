#pragma once

#include "run_context.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace goodness::cli
{
    // Each command returns its exit code: 0 success, 1 failed or inconclusive.

    struct BurrArgs
    {
        std::size_t n = 0;
        std::string spec;
        std::string format = "graph6";
    };
    auto run_burr(RunContext & ctx, const BurrArgs & a) -> int;

    struct CheckArgs
    {
        GraphSource graph;
        std::size_t n = 0;
        std::string spec;
    };
    auto run_check(RunContext & ctx, const CheckArgs & a) -> int;

    struct ExpandArgs
    {
        GraphSource graph;
        std::string spec;
        std::optional<std::size_t> cap;
    };
    auto run_expand(RunContext & ctx, const ExpandArgs & a) -> int;

    struct AdjusterFindArgs
    {
        GraphSource graph;
        std::string spec;
        std::optional<std::size_t> target_size;
    };
    auto run_adjuster_find(RunContext & ctx, const AdjusterFindArgs & a) -> int;

    struct AdjusterValidateArgs
    {
        GraphSource graph;
        std::string adjuster;
    };
    auto run_adjuster_validate(RunContext & ctx, const AdjusterValidateArgs & a) -> int;

    struct AdjusterMergeArgs
    {
        GraphSource graph;
        std::string first;
        std::string second;
        std::size_t paths = 17;
        bool efficient = false;
        std::size_t m1 = 1;
        std::size_t m2 = 1;
    };
    auto run_adjuster_merge(RunContext & ctx, const AdjusterMergeArgs & a) -> int;

    struct EmbedArgs
    {
        GraphSource graph;
        std::size_t n = 0;
        std::string spec;
    };
    auto run_embed(RunContext & ctx, const EmbedArgs & a) -> int;

    struct RamseyArgs
    {
        std::vector<std::string> n;             // values or ranges "4..7"
        std::vector<std::string> specs;
        std::size_t max_order = 11;
        bool allow_large = false;
        std::string checkpoint;
        bool csv = false;
    };
    auto run_ramsey(RunContext & ctx, const RamseyArgs & a) -> int;

    struct SelftestArgs
    {
        bool extended = true;
        std::optional<std::uint64_t> seed;      // the suite's own default when unset
    };
    auto run_selftest(RunContext & ctx, const SelftestArgs & a) -> int;

    /// "4", "4..7" or "4,5,9" into a sorted list without duplicates.
    auto parse_orders(const std::vector<std::string> & items) -> std::vector<std::size_t>;
}
