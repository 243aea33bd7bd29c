#include <goodness/adjuster.hpp>
#include <goodness/navigation.hpp>

#include <algorithm>
#include <cmath>

namespace goodness
{
    namespace
    {
        auto padded_spec(const MultipartiteSpec & spec) -> MultipartiteSpec
        {
            auto floor_part = spec.avg_part_ceil();
            auto parts = spec.parts();
            for (auto & p : parts)
                p = std::max(p, floor_part);
            return MultipartiteSpec(parts);
        }

        auto failure(const std::string & stage, const std::string & message, const nlohmann::json & trace) -> FailureReport
        {
            return FailureReport{stage, message, trace};
        }

        /// Gadgets (short cycles or single edges) chained through wing-guided short paths.
        struct Chain
        {
            const Graph & g;
            const ConstantsLedger & cfg;
            VertexSet region;
            ExpansionParams params;
            std::size_t wing_size = 1;
            nlohmann::json & trace;
            VertexSet used;

            Chain(const Graph & host, const ConstantsLedger & c, VertexSet r, ExpansionParams p, std::size_t wings, nlohmann::json & t) :
                g(host), cfg(c), region(std::move(r)), params(p), wing_size(wings), trace(t), used(host.empty_set())
            {
            }

            std::optional<WingPair> first, last;
            std::vector<std::vector<Vertex>> gadget_arcs;   // entry .. exit as traversed by the long route
            std::vector<Path> links;

            auto reserved() const -> VertexSet
            {
                auto r = used;
                if (first)
                    r |= first->a_set;
                if (last)
                    r |= last->b_set;
                return r;
            }

            auto outside() const -> VertexSet { return g.vertices() - region; }

            auto stitch(const WingPair & from, const WingPair & to, const Path & q) -> Path
            {
                // q runs from to.a_set to from.b_set
                auto head = from.path_to_root(q.back()).vertices;
                std::reverse(head.begin(), head.end());
                auto middle = q.vertices;
                std::reverse(middle.begin(), middle.end());
                head.insert(head.end(), middle.begin() + 1, middle.end());
                auto tail = to.path_to_root(q.front()).vertices;
                head.insert(head.end(), tail.begin() + 1, tail.end());
                Path link{head};
                if (! is_path_in(g, link))
                    throw InternalError("chain: stitched link is not a path");
                return link;
            }

            /// Adds a gadget entered at x and left at y occupying `body`.
            auto add(Vertex x, Vertex y, const VertexSet & body, std::vector<Vertex> arc) -> std::optional<std::string>
            {
                auto w = region - reserved() - body;
                WingPair wings;
                try {
                    wings = grow_wings(g, w, x, y, params, wing_size);
                }
                catch (const SearchFailure & e) {
                    return std::string(e.what());
                }
                if (! first) {
                    first = wings;
                    last = wings;
                    used |= body;
                    gadget_arcs.push_back(std::move(arc));
                    return std::nullopt;
                }
                auto c = outside() | used | first->a_set | wings.b_set | body;
                c -= wings.a_set;
                c -= last->b_set;
                Path link;
                try {
                    auto sp = short_path(g, wings.a_set, last->b_set, c, params);
                    link = stitch(*last, wings, sp.path);
                }
                catch (const SearchFailure & e) {
                    return std::string(e.what());
                }
                used |= body;
                used |= as_set(g.order(), link.vertices);
                links.push_back(std::move(link));
                gadget_arcs.push_back(std::move(arc));
                last = wings;
                return std::nullopt;
            }

            auto lone_detour() const -> std::optional<Path>
            {
                auto x = gadget_arcs.front().front(), y = gadget_arcs.front().back();
                auto allowed = region - used;
                allowed.insert(x);
                std::optional<Path> best;
                for (auto u : g.neighbours(y) & allowed) {
                    if (u == x)
                        continue;
                    auto tail = shortest_path_within(g, u, x, allowed);
                    if (tail && (! best || tail->length() + 1 < best->length())) {
                        Path p{{y}};
                        p.vertices.insert(p.vertices.end(), tail->vertices.begin(), tail->vertices.end());
                        best = std::move(p);
                    }
                }
                return best;
            }

            auto close() -> std::optional<std::string>
            {
                auto c = outside() | used;
                c -= first->a_set;
                c -= last->b_set;
                try {
                    auto sp = short_path(g, first->a_set, last->b_set, c, params);
                    links.push_back(stitch(*last, *first, sp.path));
                }
                catch (const SearchFailure & e) {
                    return std::string(e.what());
                }
                if (gadget_arcs.size() == 1 && links.back().length() < 2) {
                    // a lone gadget closed by its own edge would be a 2-vertex route
                    links.pop_back();
                    auto detour = lone_detour();
                    if (! detour)
                        return std::string("no closing path of length at least 2 for a single gadget");
                    links.push_back(*detour);
                }
                return std::nullopt;
            }
        };

        struct Setup
        {
            ExtractionResult ext;
            ExtractionParams params;
            MultipartiteSpec padded;
        };

        auto setup(const Graph & g, const MultipartiteSpec & spec, const ConstantsLedger & cfg, const VertexSet & within,
                nlohmann::json & trace, const char * stage) -> Outcome<Setup>
        {
            auto padded = padded_spec(spec);
            if (padded.chi() < 2)
                return failure(stage, "spec needs at least two parts", trace);
            auto params = ExtractionParams::fitted(cfg, within.count(), padded);
            trace.push_back({{"stage", "pad"}, {"spec", spec.to_string()}, {"padded", padded.to_string()}, {"M", params.M}});
            auto ext = extract_expander(g, within, padded, params);
            if (! ext.ok()) {
                trace.push_back({{"stage", "extract"}, {"failure", ext.failure().message}, {"trace", ext.failure().trace}});
                return failure(stage, "extract: " + ext.failure().message, trace);
            }
            trace.push_back({{"stage", "extract"}, {"order", ext.value().vertices.count()},
                    {"subspec", ext.value().spec.to_string()}, {"warnings", ext.value().warnings}});
            return Setup{ext.value(), params, padded};
        }

        auto wing_size_for(const ConstantsLedger & cfg, const ExtractionResult & ext) -> std::size_t
        {
            auto by_beta = std::ceil(ext.params.beta * ext.params.d / 2 - 1e-9);
            auto by_fraction = std::floor(cfg.wing_fraction * static_cast<double>(ext.vertices.count()));
            return static_cast<std::size_t>(std::max(1.0, std::min(by_beta, by_fraction)));
        }
    }

    auto find_adjuster(const Graph & g, const MultipartiteSpec & spec, const ConstantsLedger & cfg,
            const PipelineOptions & options, nlohmann::json * trace_out) -> Outcome<Adjuster>
    {
        nlohmann::json trace = nlohmann::json::array();
        auto within = options.within.value_or(g.vertices());
        auto done = [&](auto result) {
            if (trace_out)
                *trace_out = trace;
            return result;
        };

        auto ready = setup(g, spec, cfg, within, trace, "find_adjuster");
        if (! ready.ok())
            return done(Outcome<Adjuster>(ready.failure()));
        auto & [ext, params, padded] = ready.value();
        auto cap = cfg.cycle_cap(padded.chi(), boost::rational_cast<double>(padded.avg_part()));
        auto target = options.target_size.value_or(std::max<std::size_t>(1,
                static_cast<std::size_t>(std::floor(cfg.adjuster_size_factor * static_cast<double>(padded.order())))));

        Chain chain{g, cfg, ext.vertices, ext.params, wing_size_for(cfg, ext), trace};
        std::vector<ShortCycle> cycles;
        trace.push_back({{"stage", "chain"}, {"cycle_cap", cap}, {"target_size", target}, {"wing_size", chain.wing_size}});

        while (chain.used.count() <= target) {
            auto free = chain.region - chain.reserved();
            auto search = free;
            if (! cycles.empty()) {
                auto half = params;
                half.M = params.M / 2;
                auto again = extract_expander(g, free, ext.spec, half);
                if (again.ok())
                    search = again.value().vertices;
                trace.push_back({{"stage", "re-extract"}, {"ok", again.ok()}, {"order", search.count()}});
            }
            auto c = shortest_odd_cycle_within(g, search);
            if (! c) {
                trace.push_back({{"stage", "cycle"}, {"stop", "remaining region is bipartite"}});
                break;
            }
            if (c->length() > cap) {
                trace.push_back({{"stage", "cycle"}, {"stop", "shortest odd cycle exceeds the cap"}, {"length", c->length()}});
                break;
            }
            auto on_c = as_set(g.order(), c->vertices);
            std::size_t limit = c->length() == 3 ? 3 : 2;
            for (auto u : search)
                if (g.neighbours(u).intersection_count(on_c) > limit)
                    throw InternalError("find_adjuster: vertex with too many neighbours on a shortest odd cycle");

            auto & cv = c->vertices;
            auto len = cv.size();
            auto at = static_cast<std::size_t>(std::min_element(cv.begin(), cv.end()) - cv.begin());
            auto half_len = (len - 1) / 2;
            Vertex v = cv[at];
            Vertex w = std::min(cv[(at + half_len) % len], cv[(at + len - half_len) % len]);
            ShortCycle sc{*c, v, w};

            auto err = chain.add(v, w, on_c, sc.side(true));
            trace.push_back({{"stage", "gadget"}, {"cycle_length", len}, {"v", v}, {"w", w},
                    {"result", err ? *err : std::string("ok")}, {"used", chain.used.count()}});
            if (err)
                break;
            cycles.push_back(sc);
        }
        if (cycles.empty())
            return done(Outcome<Adjuster>(failure("find_adjuster", "no short cycle gadget could be placed", trace)));
        if (auto err = chain.close())
            return done(Outcome<Adjuster>(failure("find_adjuster", "closing path: " + *err, trace)));

        // links[i] joins gadget i to gadget i + 1; the closing link joins the last to the first.
        Adjuster adj;
        adj.cycle_cap = cap;
        adj.cycles = cycles;
        adj.paths = chain.links;
        auto report = validate(g, adj);
        if (! report.ok())
            throw InternalError("find_adjuster: constructed adjuster is invalid: " + report.violations.front());
        trace.push_back({{"stage", "done"}, {"r", adj.r()}, {"length", adj.length()}});
        return done(Outcome<Adjuster>(adj));
    }

    auto find_long_cycle(const Graph & g, const MultipartiteSpec & spec, const ConstantsLedger & cfg,
            std::size_t min_length, std::size_t max_length, const PipelineOptions & options, nlohmann::json * trace_out)
        -> Outcome<Cycle>
    {
        nlohmann::json trace = nlohmann::json::array();
        auto done = [&](auto result) {
            if (trace_out)
                *trace_out = trace;
            return result;
        };
        if (min_length < 3 || min_length > max_length)
            throw InputError("find_long_cycle: window must satisfy 3 <= min <= max");
        auto within = options.within.value_or(g.vertices());

        auto ready = setup(g, spec, cfg, within, trace, "find_long_cycle");
        if (! ready.ok())
            return done(Outcome<Cycle>(ready.failure()));
        auto & ext = ready.value().ext;

        Chain chain{g, cfg, ext.vertices, ext.params, wing_size_for(cfg, ext), trace};
        std::size_t length = 0;
        while (length + 1 < min_length) {
            auto free = chain.region - chain.reserved();
            std::optional<std::pair<Vertex, Vertex>> edge;
            for (auto x : free) {
                auto nb = g.neighbours(x) & free;
                if (! nb.empty()) {
                    edge = {x, nb.first()};
                    break;
                }
            }
            if (! edge) {
                trace.push_back({{"stage", "edge"}, {"stop", "no free edge left"}});
                break;
            }
            auto [x, y] = *edge;
            VertexSet body(g.order(), {x, y});
            auto err = chain.add(x, y, body, {x, y});
            trace.push_back({{"stage", "edge"}, {"x", x}, {"y", y}, {"result", err ? *err : std::string("ok")}});
            if (err)
                break;
            length = chain.gadget_arcs.size();
            for (auto & l : chain.links)
                length += l.length();
        }
        if (chain.gadget_arcs.empty())
            return done(Outcome<Cycle>(failure("find_long_cycle", "no edge gadget could be placed", trace)));
        if (auto err = chain.close())
            return done(Outcome<Cycle>(failure("find_long_cycle", "closing path: " + *err, trace)));

        Cycle cycle;
        for (std::size_t i = 0; i < chain.gadget_arcs.size(); ++i) {
            cycle.vertices.insert(cycle.vertices.end(), chain.gadget_arcs[i].begin(), chain.gadget_arcs[i].end());
            auto & l = chain.links[i].vertices;
            cycle.vertices.insert(cycle.vertices.end(), l.begin() + 1, l.end() - 1);
        }
        if (! is_cycle_in(g, cycle))
            throw InternalError("find_long_cycle: chained walk is not a cycle");
        trace.push_back({{"stage", "closed"}, {"length", cycle.length()}});
        if (cycle.length() < min_length)
            return done(Outcome<Cycle>(failure("find_long_cycle", "closed cycle shorter than the window", trace)));
        if (cycle.length() > max_length) {
            try {
                cycle = *shorten_section(g, Adjuster::from_cycle(cycle), spec, min_length, max_length).loop;
            }
            catch (const SearchFailure & e) {
                trace.push_back({{"stage", "truncate"}, {"failure", e.what()}});
                return done(Outcome<Cycle>(failure("find_long_cycle", std::string("truncate: ") + e.what(), trace)));
            }
            trace.push_back({{"stage", "truncate"}, {"length", cycle.length()}});
        }
        return done(Outcome<Cycle>(cycle));
    }
}
