#pragma once

#include <goodness/constants.hpp>
#include <goodness/graph.hpp>

#include <nlohmann/json.hpp>

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace goodness::cli
{
    /// Flags shared by every subcommand.
    struct CommonFlags
    {
        std::string cfg = "desk";
        std::vector<std::string> overrides;     // key=value pairs applied after the profile
        std::optional<std::uint64_t> seed;
        std::optional<std::uint64_t> budget_nodes;
        std::size_t jobs = 0;                   // 0: available cores
        std::string out = "-";
        std::string manifest;                   // default: <out>/manifest.json, or a brief line on stderr when out is "-"
    };

    /// Where a graph comes from: a graph6/JSON file ("-" for stdin) or G(N, p).
    struct GraphSource
    {
        std::string path;
        std::size_t gnp = 0;
        double p = 0.5;
    };

    /// Loaded configuration, output routing and the run manifest.
    ///
    /// Primary outputs never contain timings, so two runs with the same
    /// manifest write identical bytes. Timings live only in the manifest.
    class RunContext
    {
        public:
            RunContext(std::string command, std::vector<std::string> argv, const CommonFlags & flags);

            auto cfg() const -> const ConstantsLedger & { return _cfg; }
            auto jobs() const -> std::size_t { return _jobs; }
            auto seed() const -> std::uint64_t { return _cfg.seed; }
            auto to_stdout() const -> bool { return _flags.out == "-"; }

            auto load_graph(const GraphSource & source) -> Graph;
            auto read_json(const std::string & path) -> nlohmann::json;

            /// Writes `content` to stdout, or to <out>/<name> when an output
            /// directory was given. Only primary outputs reach stdout in "-"
            /// mode; secondary ones are written to directories only.
            void emit(const std::string & name, const std::string & content, bool primary = true);
            void emit_json(const std::string & name, const nlohmann::json & j, bool primary = true);

            /// Extra manifest fields (verification results and the like).
            void note(const std::string & key, nlohmann::json value);

            void finish(int exit_code);

        private:
            void record_input(const std::string & path, const std::string & bytes);

            std::string _command;
            std::vector<std::string> _argv;
            CommonFlags _flags;
            ConstantsLedger _cfg;
            std::size_t _jobs = 1;
            nlohmann::json _inputs = nlohmann::json::array();
            nlohmann::json _outputs = nlohmann::json::array();
            nlohmann::json _notes = nlohmann::json::object();
            std::chrono::steady_clock::time_point _start;
    };

    auto crc32_hex(const std::string & bytes) -> std::string;
}
