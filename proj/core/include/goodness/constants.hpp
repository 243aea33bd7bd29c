#pragma once

#include <nlohmann/json.hpp>

#include <cstddef>
#include <cstdint>
#include <string>

namespace goodness
{
    /// Every free numeric constant of the constructions, as overridable
    /// fields. The defaults are the asymptotic values; desk() rescales them so
    /// that the pipelines run on graphs with a few hundred vertices.
    struct ConstantsLedger
    {
        std::string profile = "paper";

        // expansion
        double expansion_divisor = 10;     // |N(S)| >= |S| / (divisor * log k)
        double slack_factor = 1;           // multiplier on the m*Delta*beta slack of a sparse cut
        double delta = 10;
        double M_factor = 1e4;             // M = M_factor * k log k * 2m/m'
        double beta_divisor = 200;         // beta = M / beta_divisor
        double trim_fill = 1.0;            // desk runs cap M so that M|H|log k <= trim_fill * |G|
        std::size_t expansion_cap = 8;
        std::size_t heuristic_restarts = 4;

        // adjusters
        double cycle_cap_factor = 2000;    // |C_i| <= factor * log k * log(km)
        double short_path_factor = 44;     // |P| <= factor * log k * log|G|
        double adjuster_size_factor = 1;   // stop growing once |Y| > factor * mk
        double long_cycle_divisor = 8e5;   // long cycles of length n / (divisor * log^2 k)
        double wing_fraction = 1;          // wings hold at most this fraction of the expander

        // folding adjusters and cycles
        double q_factor = 4.1e18;          // number of disjoint paths per merge
        std::size_t q_min = 17;
        double r_total_factor = 2;         // stop collecting adjusters at r_total >= factor * mk
        double adjuster_len_low = 0.6;
        double adjuster_len_high = 0.7;
        double long_total_low_multi = 4.0 / 3.0;
        double long_total_high_multi = 1.5;
        double long_total_low_single = 2.0 / 3.0;
        double long_total_high_single = 0.75;
        double remainder_fraction = 0.1;   // the n/10 order slack

        // stability
        double block_fraction = 0.95;
        double sep_factor = 4.1e18;        // separator size = sep_factor * log^4 k
        std::size_t sep_max = 0;           // 0: no cap
        std::size_t connectivity_samples = 8;

        // search budgets
        std::uint64_t budget_nodes = 2'000'000;
        std::uint64_t seed = 1;

        static auto paper() -> ConstantsLedger;
        static auto desk() -> ConstantsLedger;

        /// "paper", "desk", or the path of a key = value file (# comments);
        /// a file may start from a profile with `profile = desk`.
        static auto load(const std::string & name_or_path) -> ConstantsLedger;

        void set(const std::string & key, const std::string & value);

        auto q(std::size_t k) const -> std::size_t;
        auto sep_size(std::size_t k) const -> std::size_t;
        auto cycle_cap(std::size_t k, double m) const -> std::size_t;

        auto to_json() const -> nlohmann::json;
    };

    /// Natural logarithm of k, floored at log 2 so that k = 1 never divides by zero.
    auto log_k(std::size_t k) -> double;
}
