#include <goodness/errors.hpp>
#include <goodness/graph_io.hpp>
#include <goodness/isomorphism.hpp>
#include <goodness/ramsey.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace goodness
{
    auto is_ramsey_witness(const Graph & g, std::size_t n, const MultipartiteSpec & spec) -> bool
    {
        if (g.order() > 128)
            throw SizeError("is_ramsey_witness: order " + std::to_string(g.order()) + " is too large for an exhaustive check");
        if (n < 3)
            throw InputError("is_ramsey_witness: n must be at least 3");
        if (find_cycle_of_length(g, n).status != SearchStatus::none_found)
            return false;
        return complement_contains(g, spec).status == SearchStatus::none_found;
    }

    auto RamseyReport::to_json(bool include_timing) const -> nlohmann::json
    {
        nlohmann::json j{{"n", n}, {"spec", spec.to_string()}, {"parts", spec.parts()}, {"formula", formula},
            {"lower_bound", lower_bound}, {"open_above", open_above()}};
        if (include_timing)
            j["seconds"] = seconds;
        j["value"] = value ? nlohmann::json(*value) : nlohmann::json(nullptr);
        j["goodness"] = goodness ? nlohmann::json(*goodness) : nlohmann::json(nullptr);
        if (lower_witness)
            j["lower_witness"] = {{"order", lower_witness->order()}, {"graph6", to_graph6(*lower_witness)}};
        auto levels_json = nlohmann::json::array();
        for (auto & l : levels) {
            nlohmann::json level{{"order", l.order}, {"candidates", l.candidates}, {"witnesses", l.witnesses}};
            if (include_timing) {
                level["seconds"] = l.seconds;
                level["resumed"] = l.resumed;
            }
            levels_json.push_back(level);
        }
        j[value ? "upper_certificate" : "levels"] = levels_json;
        return j;
    }

    namespace
    {
        constexpr int checkpoint_version = 1;

        struct Level
        {
            std::vector<Graph> graphs;
            LevelStats stats;
        };

        auto extend(const Graph & g, std::uint64_t mask) -> Graph
        {
            auto order = g.order();
            Graph out(order + 1);
            for (auto [u, v] : g.edges())
                out.add_edge(u, v);
            for (Vertex v = 0; v < order; ++v)
                if ((mask >> v) & 1U)
                    out.add_edge(v, static_cast<Vertex>(order));
            return out;
        }

        /// Keeps the first graph of every isomorphism class, in input order.
        class ClassSet
        {
            public:
                auto insert(Graph g) -> bool
                {
                    auto h = invariant_hash(g);
                    auto & bucket = _buckets[h];
                    for (auto i : bucket)
                        if (are_isomorphic(_graphs[i], g))
                            return false;
                    bucket.push_back(_graphs.size());
                    _graphs.push_back(std::move(g));
                    return true;
                }

                auto take() -> std::vector<Graph> { return std::move(_graphs); }

            private:
                std::unordered_map<std::uint64_t, std::vector<std::size_t>> _buckets;
                std::vector<Graph> _graphs;
        };

        /// The previous level's graphs are witnesses, so any cycle or complement
        /// copy in an extension must use the new vertex.
        auto extension_is_witness(const Graph & g, std::size_t n, const MultipartiteSpec & spec) -> bool
        {
            auto v = static_cast<Vertex>(g.order() - 1);
            if (g.order() >= n && find_cycle_through(g, v, n).status != SearchStatus::none_found)
                return false;
            return complement_contains(g, spec).status == SearchStatus::none_found;
        }

        auto next_level(const std::vector<Graph> & previous, std::size_t n, const MultipartiteSpec & spec, std::size_t jobs)
            -> Level
        {
            Level out;
            auto order = previous.empty() ? 0 : previous.front().order();
            out.stats.order = order + 1;
            if (order >= 63)
                throw SizeError("exact_ramsey: level order exceeds 63");
            std::uint64_t masks = std::uint64_t{1} << order;

            std::vector<std::vector<Graph>> found(previous.size());
            std::atomic<std::size_t> cursor{0};
            auto worker = [&] {
                while (true) {
                    auto i = cursor.fetch_add(1);
                    if (i >= previous.size())
                        return;
                    ClassSet local;
                    for (std::uint64_t mask = 0; mask < masks; ++mask) {
                        auto candidate = extend(previous[i], mask);
                        if (extension_is_witness(candidate, n, spec))
                            local.insert(std::move(candidate));
                    }
                    found[i] = local.take();
                }
            };
            std::vector<std::thread> threads;
            for (std::size_t t = 1; t < std::max<std::size_t>(1, jobs); ++t)
                threads.emplace_back(worker);
            worker();
            for (auto & t : threads)
                t.join();

            ClassSet all;
            for (auto & list : found)
                for (auto & g : list)
                    all.insert(std::move(g));
            out.graphs = all.take();
            out.stats.candidates = previous.size() * masks;
            out.stats.witnesses = out.graphs.size();
            return out;
        }

        auto checkpoint_path(const std::string & dir, std::size_t order) -> std::filesystem::path
        {
            return std::filesystem::path(dir) / ("level_" + std::to_string(order) + ".json");
        }

        void write_checkpoint(const std::string & dir, std::size_t n, const MultipartiteSpec & spec, const Level & level)
        {
            std::filesystem::create_directories(dir);
            nlohmann::json j{{"version", checkpoint_version}, {"n", n}, {"spec", spec.parts()}, {"order", level.stats.order},
                {"candidates", level.stats.candidates}, {"seconds", level.stats.seconds}};
            j["graphs"] = nlohmann::json::array();
            for (auto & g : level.graphs)
                j["graphs"].push_back(to_graph6(g));
            auto path = checkpoint_path(dir, level.stats.order);
            auto tmp = path;
            tmp += ".tmp";
            {
                std::ofstream out(tmp);
                out << j.dump() << '\n';
                if (! out)
                    throw InputError("exact_ramsey: cannot write checkpoint " + tmp.string());
            }
            std::filesystem::rename(tmp, path);
        }

        auto read_checkpoint(const std::string & dir, std::size_t n, const MultipartiteSpec & spec, std::size_t order)
            -> std::optional<Level>
        {
            std::ifstream in(checkpoint_path(dir, order));
            if (! in)
                return std::nullopt;
            nlohmann::json j;
            try {
                in >> j;
            }
            catch (const nlohmann::json::exception &) {
                return std::nullopt;
            }
            if (j.value("version", 0) != checkpoint_version || j.value("n", std::size_t{0}) != n ||
                    j.value("order", std::size_t{0}) != order || j["spec"].get<std::vector<std::size_t>>() != spec.parts())
                return std::nullopt;
            Level level;
            for (auto & s : j["graphs"])
                level.graphs.push_back(from_graph6(s.get<std::string>()));
            level.stats = {order, j.value("candidates", std::size_t{0}), level.graphs.size(), j.value("seconds", 0.0), true};
            return level;
        }
    }

    auto exact_ramsey(std::size_t n, const MultipartiteSpec & spec, const RamseyOptions & options) -> RamseyReport
    {
        if (n < 3)
            throw InputError("exact_ramsey: n must be at least 3");
        if (options.max_order > 11 && ! options.allow_large)
            throw SizeError("exact_ramsey: max_order above 11 needs allow_large");
        auto start = std::chrono::steady_clock::now();
        RamseyReport report;
        report.n = n;
        report.spec = spec;
        report.formula = spec.goodness_bound(n);

        std::vector<Graph> current{Graph(0)};
        std::size_t order = 0;
        while (order < options.max_order) {
            auto t0 = std::chrono::steady_clock::now();
            std::optional<Level> level;
            if (options.checkpoint_dir)
                level = read_checkpoint(*options.checkpoint_dir, n, spec, order + 1);
            if (! level) {
                level = next_level(current, n, spec, options.jobs);
                level->stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                if (options.checkpoint_dir)
                    write_checkpoint(*options.checkpoint_dir, n, spec, *level);
            }
            report.levels.push_back(level->stats);
            ++order;
            if (level->graphs.empty()) {
                report.value = order;
                break;
            }
            current = std::move(level->graphs);
        }
        report.lower_bound = report.value ? *report.value : order + 1;
        if (! current.empty() && current.front().order() > 0)
            report.lower_witness = current.front();
        if (report.value) {
            report.goodness = *report.value == report.formula;
            if (report.lower_witness && ! is_ramsey_witness(*report.lower_witness, n, spec))
                throw InternalError("exact_ramsey: lower witness does not verify");
            if (n >= spec.sigma() && *report.value < report.formula)
                throw InternalError("exact_ramsey: value below the Burr lower bound");
        }
        report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return report;
    }

    auto goodness_table(const std::vector<std::size_t> & ns, const std::vector<MultipartiteSpec> & specs,
            const RamseyOptions & options) -> std::vector<RamseyReport>
    {
        std::vector<RamseyReport> out;
        for (auto n : ns)
            for (auto & spec : specs) {
                auto cell = options;
                if (cell.checkpoint_dir)
                    cell.checkpoint_dir = *cell.checkpoint_dir + "/n" + std::to_string(n) + "_" + spec.to_string();
                out.push_back(exact_ramsey(n, spec, cell));
            }
        return out;
    }

    auto table_csv(const std::vector<RamseyReport> & table, bool include_timing) -> std::string
    {
        std::ostringstream out;
        out << "n,spec,value,formula,goodness,lower_bound,open_above" << (include_timing ? ",seconds\n" : "\n");
        for (auto & r : table) {
            out << r.n << ",\"" << r.spec.to_string() << "\",";
            if (r.value)
                out << *r.value;
            out << ',' << r.formula << ',';
            if (r.goodness)
                out << (*r.goodness ? "true" : "false");
            out << ',' << r.lower_bound << ',' << (r.open_above() ? "true" : "false");
            if (include_timing)
                out << ',' << r.seconds;
            out << '\n';
        }
        return out.str();
    }
}
