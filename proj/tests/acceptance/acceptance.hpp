#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace goodness::acceptance
{
    struct CriterionResult
    {
        std::string id;
        std::string name;
        bool passed = false;
        std::string detail;
        double seconds = 0;
    };

    struct Options
    {
        std::size_t jobs = 1;
        std::uint64_t seed = 20240601;
        bool extended = true;               // also run R(C_6, K_3)
        std::ostream * progress = nullptr;  // per-criterion lines as they finish
    };

    auto burr_suite(const Options & o) -> CriterionResult;
    auto golden_ramsey(const Options & o) -> CriterionResult;
    auto extended_ramsey(const Options & o) -> CriterionResult;
    auto route_law(const Options & o) -> CriterionResult;
    auto merge_bounds(const Options & o) -> CriterionResult;
    auto navigation_oracles(const Options & o) -> CriterionResult;
    auto expansion_suite(const Options & o) -> CriterionResult;
    auto pipeline_smoke(const Options & o) -> CriterionResult;
    auto monotone_suite(const Options & o) -> CriterionResult;

    auto run_all(const Options & o) -> std::vector<CriterionResult>;

    /// "PASS [3] adjuster route law: ... (0.42 s)"
    auto format(const CriterionResult & r) -> std::string;
}
