#include <goodness/constants.hpp>
#include <goodness/errors.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace goodness
{
    auto log_k(std::size_t k) -> double
    {
        return std::log(std::max<double>(2.0, static_cast<double>(k)));
    }

    auto ConstantsLedger::paper() -> ConstantsLedger
    {
        return ConstantsLedger{};
    }

    auto ConstantsLedger::desk() -> ConstantsLedger
    {
        ConstantsLedger c;
        c.profile = "desk";
        c.delta = 4;
        c.M_factor = 1;
        c.beta_divisor = 0.5;
        c.trim_fill = 0.9;
        c.cycle_cap_factor = 4;
        c.short_path_factor = 44;
        c.adjuster_size_factor = 0.25;
        c.long_cycle_divisor = 4;
        c.wing_fraction = 0.05;
        c.q_factor = 0;
        c.q_min = 17;
        c.r_total_factor = 0.5;
        c.sep_factor = 0;
        c.sep_max = 2;
        c.block_fraction = 0.75;
        c.connectivity_samples = 4;
        c.budget_nodes = 500'000;
        return c;
    }

    namespace
    {
        template <typename T>
        auto parse_number(const std::string & key, const std::string & value) -> T
        {
            std::istringstream in(value);
            T out{};
            in >> out;
            if (! in || ! (in >> std::ws).eof())
                throw InputError("bad value '" + value + "' for constant " + key);
            return out;
        }

        auto trim(std::string s) -> std::string
        {
            auto a = s.find_first_not_of(" \t\r");
            if (a == std::string::npos)
                return {};
            auto b = s.find_last_not_of(" \t\r");
            return s.substr(a, b - a + 1);
        }
    }

    void ConstantsLedger::set(const std::string & key, const std::string & value)
    {
        std::map<std::string, double *> reals{
            {"expansion_divisor", &expansion_divisor}, {"slack_factor", &slack_factor}, {"delta", &delta},
            {"M_factor", &M_factor}, {"beta_divisor", &beta_divisor}, {"trim_fill", &trim_fill},
            {"cycle_cap_factor", &cycle_cap_factor}, {"short_path_factor", &short_path_factor},
            {"adjuster_size_factor", &adjuster_size_factor}, {"long_cycle_divisor", &long_cycle_divisor}, {"wing_fraction", &wing_fraction},
            {"q_factor", &q_factor}, {"r_total_factor", &r_total_factor}, {"adjuster_len_low", &adjuster_len_low},
            {"adjuster_len_high", &adjuster_len_high}, {"long_total_low_multi", &long_total_low_multi},
            {"long_total_high_multi", &long_total_high_multi}, {"long_total_low_single", &long_total_low_single},
            {"long_total_high_single", &long_total_high_single}, {"remainder_fraction", &remainder_fraction},
            {"block_fraction", &block_fraction}, {"sep_factor", &sep_factor}};
        std::map<std::string, std::size_t *> sizes{
            {"expansion_cap", &expansion_cap}, {"heuristic_restarts", &heuristic_restarts}, {"q_min", &q_min},
            {"sep_max", &sep_max}, {"connectivity_samples", &connectivity_samples}};

        if (auto it = reals.find(key); it != reals.end()) {
            auto v = parse_number<double>(key, value);
            if (! (v >= 0) || ! std::isfinite(v))
                throw InputError("constant " + key + " must be a non-negative finite number");
            *it->second = v;
        }
        else if (auto jt = sizes.find(key); jt != sizes.end())
            *jt->second = parse_number<std::size_t>(key, value);
        else if (key == "budget_nodes")
            budget_nodes = parse_number<std::uint64_t>(key, value);
        else if (key == "seed")
            seed = parse_number<std::uint64_t>(key, value);
        else
            throw InputError("unknown constant '" + key + "'");
    }

    auto ConstantsLedger::load(const std::string & name_or_path) -> ConstantsLedger
    {
        if (name_or_path == "paper")
            return paper();
        if (name_or_path == "desk")
            return desk();

        std::ifstream in(name_or_path);
        if (! in)
            throw InputError("cannot open constants file " + name_or_path);
        ConstantsLedger c = paper();
        c.profile = name_or_path;
        std::string line;
        std::size_t line_no = 0;
        bool first = true;
        while (std::getline(in, line)) {
            ++line_no;
            if (auto hash = line.find('#'); hash != std::string::npos)
                line.erase(hash);
            line = trim(line);
            if (line.empty())
                continue;
            auto eq = line.find('=');
            if (eq == std::string::npos)
                throw InputError(name_or_path + ":" + std::to_string(line_no) + ": expected key = value");
            auto key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
            if (key == "profile") {
                if (! first)
                    throw InputError(name_or_path + ":" + std::to_string(line_no) + ": profile must come first");
                if (value != "paper" && value != "desk")
                    throw InputError(name_or_path + ": unknown base profile " + value);
                c = value == "desk" ? desk() : paper();
                c.profile = name_or_path;
            }
            else
                c.set(key, value);
            first = false;
        }
        return c;
    }

    auto ConstantsLedger::q(std::size_t k) const -> std::size_t
    {
        auto l = log_k(k);
        auto value = q_factor * l * l * l * l;
        return std::max<std::size_t>(q_min, static_cast<std::size_t>(std::ceil(std::min(value, 1e15))));
    }

    auto ConstantsLedger::sep_size(std::size_t k) const -> std::size_t
    {
        auto l = log_k(k);
        auto value = static_cast<std::size_t>(std::ceil(std::min(sep_factor * l * l * l * l, 1e15)));
        if (sep_max)
            value = std::min(std::max<std::size_t>(value, sep_max), sep_max);
        return std::max<std::size_t>(value, 1);
    }

    auto ConstantsLedger::cycle_cap(std::size_t k, double m) const -> std::size_t
    {
        auto value = cycle_cap_factor * log_k(k) * std::log(std::max(2.0, static_cast<double>(k) * m));
        return std::max<std::size_t>(3, static_cast<std::size_t>(std::floor(std::min(value, 1e15))));
    }

    auto ConstantsLedger::to_json() const -> nlohmann::json
    {
        return {
            {"profile", profile}, {"expansion_divisor", expansion_divisor}, {"slack_factor", slack_factor},
            {"delta", delta}, {"M_factor", M_factor}, {"beta_divisor", beta_divisor}, {"trim_fill", trim_fill},
            {"expansion_cap", expansion_cap}, {"heuristic_restarts", heuristic_restarts},
            {"cycle_cap_factor", cycle_cap_factor}, {"short_path_factor", short_path_factor},
            {"adjuster_size_factor", adjuster_size_factor}, {"long_cycle_divisor", long_cycle_divisor}, {"wing_fraction", wing_fraction},
            {"q_factor", q_factor}, {"q_min", q_min}, {"r_total_factor", r_total_factor},
            {"adjuster_len_low", adjuster_len_low}, {"adjuster_len_high", adjuster_len_high},
            {"long_total_low_multi", long_total_low_multi}, {"long_total_high_multi", long_total_high_multi},
            {"long_total_low_single", long_total_low_single}, {"long_total_high_single", long_total_high_single},
            {"remainder_fraction", remainder_fraction}, {"block_fraction", block_fraction},
            {"sep_factor", sep_factor}, {"sep_max", sep_max}, {"connectivity_samples", connectivity_samples},
            {"budget_nodes", budget_nodes}, {"seed", seed}};
    }
}
