#include "run_context.hpp"

#include <goodness/errors.hpp>
#include <goodness/graph_io.hpp>

#include <boost/crc.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <thread>

namespace goodness::cli
{
    namespace fs = std::filesystem;

    auto crc32_hex(const std::string & bytes) -> std::string
    {
        boost::crc_32_type crc;
        crc.process_bytes(bytes.data(), bytes.size());
        std::ostringstream out;
        out << std::hex << std::setw(8) << std::setfill('0') << crc.checksum();
        return out.str();
    }

    namespace
    {
        auto slurp(const std::string & path) -> std::string
        {
            if (path == "-")
                return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
            std::ifstream in(path, std::ios::binary);
            if (! in)
                throw InputError("cannot open " + path);
            return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
        }

        auto ends_with(const std::string & s, const std::string & suffix) -> bool
        {
            return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
        }
    }

    RunContext::RunContext(std::string command, std::vector<std::string> argv, const CommonFlags & flags) :
        _command(std::move(command)),
        _argv(std::move(argv)),
        _flags(flags),
        _cfg(ConstantsLedger::load(flags.cfg)),
        _start(std::chrono::steady_clock::now())
    {
        for (auto & kv : flags.overrides) {
            auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw InputError("--set expects key=value, got '" + kv + "'");
            _cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
        }
        if (flags.seed)
            _cfg.seed = *flags.seed;
        if (flags.budget_nodes)
            _cfg.budget_nodes = *flags.budget_nodes;
        _jobs = flags.jobs ? flags.jobs : std::max(1u, std::thread::hardware_concurrency());
        if (! to_stdout())
            fs::create_directories(flags.out);
        if (fs::exists(flags.cfg))
            record_input(flags.cfg, slurp(flags.cfg));
    }

    void RunContext::record_input(const std::string & path, const std::string & bytes)
    {
        _inputs.push_back({{"path", path}, {"bytes", bytes.size()}, {"crc32", crc32_hex(bytes)}});
    }

    auto RunContext::load_graph(const GraphSource & source) -> Graph
    {
        if (! source.path.empty() && source.gnp)
            throw InputError("give either --graph or --gnp, not both");
        if (source.gnp) {
            if (! (source.p >= 0 && source.p <= 1))
                throw InputError("--p must lie in [0, 1]");
            // bernoulli_distribution is implementation-defined; compare raw draws instead
            std::mt19937_64 rng(_cfg.seed);
            auto threshold = static_cast<double>(std::mt19937_64::max()) * source.p;
            Graph g(source.gnp);
            for (Vertex u = 0; u < source.gnp; ++u)
                for (Vertex v = u + 1; v < source.gnp; ++v)
                    if (static_cast<double>(rng()) < threshold)
                        g.add_edge(u, v);
            return g;
        }
        if (source.path.empty())
            throw InputError("a graph is required: --graph FILE or --gnp N");
        auto bytes = slurp(source.path);
        record_input(source.path, bytes);
        if (ends_with(source.path, ".json"))
            return graph_from_json(nlohmann::json::parse(bytes));
        std::istringstream in(bytes);
        auto graphs = read_graph6_lines(in);
        if (graphs.empty())
            throw InputError("no graph in " + source.path);
        return graphs.front();
    }

    auto RunContext::read_json(const std::string & path) -> nlohmann::json
    {
        auto bytes = slurp(path);
        record_input(path, bytes);
        try {
            return nlohmann::json::parse(bytes);
        }
        catch (const nlohmann::json::parse_error & e) {
            throw InputError(path + ": " + e.what());
        }
    }

    void RunContext::emit(const std::string & name, const std::string & content, bool primary)
    {
        if (to_stdout()) {
            if (primary)
                std::cout << content << std::flush;
            return;
        }
        auto path = (fs::path(_flags.out) / name).string();
        std::ofstream out(path, std::ios::binary);
        if (! (out << content))
            throw InputError("cannot write " + path);
        _outputs.push_back({{"path", path}, {"bytes", content.size()}, {"crc32", crc32_hex(content)}});
    }

    void RunContext::emit_json(const std::string & name, const nlohmann::json & j, bool primary)
    {
        emit(name, j.dump(2) + "\n", primary);
    }

    void RunContext::note(const std::string & key, nlohmann::json value)
    {
        _notes[key] = std::move(value);
    }

    void RunContext::finish(int exit_code)
    {
        nlohmann::json m{{"tool", "goodness"}, {"command", _command}, {"argv", _argv}, {"inputs", _inputs},
            {"cfg", {{"source", _flags.cfg}, {"overrides", _flags.overrides}, {"constants", _cfg.to_json()}}},
            {"seed", _cfg.seed}, {"budget_nodes", _cfg.budget_nodes}, {"jobs", _jobs}, {"outputs", _outputs},
            {"results", _notes}, {"exit_code", exit_code},
            {"timing", {{"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - _start).count()}}}};
        if (! _flags.manifest.empty()) {
            std::ofstream out(_flags.manifest);
            out << m.dump(2) << '\n';
        }
        else if (! to_stdout()) {
            std::ofstream out(fs::path(_flags.out) / "manifest.json");
            out << m.dump(2) << '\n';
        }
        else {
            // the constants follow from cfg source, overrides and the input checksums
            nlohmann::json brief{{"argv", _argv}, {"inputs", _inputs}, {"seed", _cfg.seed}, {"exit_code", exit_code}};
            std::cerr << "manifest: " << brief.dump() << '\n';
        }
    }
}
