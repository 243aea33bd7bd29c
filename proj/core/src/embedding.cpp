#include <goodness/embedding.hpp>
#include <goodness/expansion.hpp>
#include <goodness/graph_io.hpp>
#include <goodness/navigation.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

namespace goodness
{
    namespace
    {
        auto ceil_size(double x) -> std::size_t
        {
            return static_cast<std::size_t>(std::max(0.0, std::ceil(x - 1e-9)));
        }

        auto floor_size(double x) -> std::size_t
        {
            return static_cast<std::size_t>(std::max(0.0, std::floor(x + 1e-9)));
        }

        auto second_part(const MultipartiteSpec & spec) -> std::size_t
        {
            return spec.part(std::min<std::size_t>(1, spec.chi() - 1));
        }

        auto pair_spec(const MultipartiteSpec & spec) -> MultipartiteSpec
        {
            return MultipartiteSpec({spec.part(0), second_part(spec)});
        }

        /// `count` disjoint a-b paths inside `within`, each replaced by an induced path.
        auto linking_paths(const Graph & g, const VertexSet & a, const VertexSet & b, std::size_t count,
                const VertexSet & within, nlohmann::json & trace, const char * stage) -> std::optional<std::vector<Path>>
        {
            auto dp = disjoint_paths(g, a, b, count, within | a | b);
            if (! dp.found()) {
                trace.push_back({{"stage", stage}, {"paths_needed", count}, {"max_flow", dp.max_flow}});
                return std::nullopt;
            }
            std::vector<Path> out;
            std::size_t longest = 0;
            for (auto & p : dp.paths) {
                auto s = shortcut_path(g, p);
                longest = std::max(longest, s.length());
                out.push_back(std::move(s));
            }
            trace.push_back({{"stage", stage}, {"paths", out.size()}, {"longest", longest}});
            return out;
        }

        struct Connectivity
        {
            std::size_t set_size = 0, paths = 0, checked = 0, passed = 0;
        };

        /// Random disjoint pairs of `set_size`-sets inside `block` must be joined
        /// by `paths` disjoint paths within the block.
        auto sample_connectivity(const Graph & g, const VertexSet & block, std::size_t set_size, std::size_t paths,
                std::size_t samples, std::uint64_t seed) -> Connectivity
        {
            Connectivity c{set_size, paths, 0, 0};
            auto members = block.to_vector();
            if (members.size() < 2 * set_size)
                return c;
            std::mt19937_64 rng(seed);
            for (std::size_t i = 0; i < samples; ++i) {
                std::shuffle(members.begin(), members.end(), rng);
                VertexSet b1(g.order()), b2(g.order());
                for (std::size_t j = 0; j < set_size; ++j) {
                    b1.insert(members[j]);
                    b2.insert(members[set_size + j]);
                }
                ++c.checked;
                if (disjoint_paths(g, b1, b2, paths, block).found())
                    ++c.passed;
            }
            return c;
        }

        auto verified(const Graph & g, const Cycle & c, std::size_t n) -> bool
        {
            return c.length() == n && is_cycle_in(g, c);
        }
    }

    auto articulation_points(const Graph & g, const VertexSet & within) -> VertexSet
    {
        auto order = g.order();
        VertexSet result(order);
        std::vector<std::vector<Vertex>> adj(order);
        for (auto v : within)
            adj[v] = (g.neighbours(v) & within).to_vector();
        std::vector<std::size_t> disc(order, 0), low(order, 0), next(order, 0);
        std::vector<Vertex> parent(order, static_cast<Vertex>(order));
        std::size_t timer = 0;
        std::vector<Vertex> stack;
        for (auto root : within) {
            if (disc[root])
                continue;
            disc[root] = low[root] = ++timer;
            std::size_t children = 0;
            stack.push_back(root);
            while (! stack.empty()) {
                auto v = stack.back();
                if (next[v] < adj[v].size()) {
                    auto u = adj[v][next[v]++];
                    if (! disc[u]) {
                        parent[u] = v;
                        disc[u] = low[u] = ++timer;
                        if (v == root)
                            ++children;
                        stack.push_back(u);
                    }
                    else if (u != parent[v])
                        low[v] = std::min(low[v], disc[u]);
                    continue;
                }
                stack.pop_back();
                if (v == root)
                    continue;
                auto p = parent[v];
                low[p] = std::min(low[p], low[v]);
                if (p != root && low[v] >= disc[p])
                    result.insert(p);
            }
            if (children > 1)
                result.insert(root);
        }
        return result;
    }

    namespace
    {
        auto count_big(const Graph & g, const VertexSet & a, std::size_t m2) -> std::size_t
        {
            std::size_t count = 0;
            for (auto & c : components_within(g, a))
                if (c.count() >= m2)
                    ++count;
            return count;
        }

        struct SeparatorSearch
        {
            std::optional<VertexSet> x;
            bool budget_exhausted = false;
        };

        /// A set of at most max_size vertices whose removal increases the number
        /// of components of order >= m2. The last vertex removed is always an
        /// articulation point of what remains, so only those are branched on.
        auto find_separator(const Graph & g, const VertexSet & a, std::size_t m2, std::size_t max_size, Budget & budget)
            -> SeparatorSearch
        {
            SeparatorSearch out;
            auto base = count_big(g, a, m2);
            std::function<bool(VertexSet &, Vertex, std::size_t)> search = [&](VertexSet & removed, Vertex start, std::size_t left) {
                if (! budget.spend()) {
                    out.budget_exhausted = true;
                    return false;
                }
                auto rest = a - removed;
                for (auto v : articulation_points(g, rest)) {
                    rest.erase(v);
                    if (count_big(g, rest, m2) > base) {
                        removed.insert(v);
                        out.x = removed;
                        return true;
                    }
                    rest.insert(v);
                }
                if (left < 2)
                    return false;
                for (auto u : rest) {
                    if (u < start)
                        continue;
                    removed.insert(u);
                    if (search(removed, u + 1, left - 1))
                        return true;
                    removed.erase(u);
                    if (out.budget_exhausted)
                        return false;
                }
                return false;
            };
            VertexSet removed(g.order());
            search(removed, 0, max_size);
            return out;
        }

        auto closed_neighbourhood(const Graph & g, const VertexSet & b) -> VertexSet
        {
            return b | external_neighborhood(g, b);
        }

        /// B with |B| = size minimising |B + N(B)|: exhaustive when the number
        /// of subsets fits the budget, otherwise greedy from every seed.
        auto min_closed_neighbourhood(const Graph & g, std::size_t size, std::uint64_t budget, bool & exhaustive)
            -> std::optional<VertexSet>
        {
            auto order = g.order();
            if (size == 0 || size > order)
                return std::nullopt;
            double subsets = 1;
            for (std::size_t i = 0; i < size; ++i)
                subsets = subsets * static_cast<double>(order - i) / static_cast<double>(i + 1);
            std::optional<VertexSet> best;
            std::size_t best_size = order + 1;
            auto consider = [&](const VertexSet & b) {
                auto s = closed_neighbourhood(g, b).count();
                if (s < best_size) {
                    best_size = s;
                    best = b;
                }
            };
            exhaustive = subsets <= static_cast<double>(budget);
            if (exhaustive) {
                VertexSet b(order);
                std::function<void(Vertex, std::size_t)> rec = [&](Vertex start, std::size_t left) {
                    if (left == 0) {
                        consider(b);
                        return;
                    }
                    for (Vertex v = start; v + left <= order; ++v) {
                        b.insert(v);
                        rec(v + 1, left - 1);
                        b.erase(v);
                    }
                };
                rec(0, size);
                return best;
            }
            for (Vertex seed = 0; seed < order; ++seed) {
                VertexSet b(order, {seed});
                while (b.count() < size) {
                    Vertex pick = static_cast<Vertex>(order);
                    std::size_t pick_size = order + 1;
                    for (Vertex u = 0; u < order; ++u) {
                        if (b.contains(u))
                            continue;
                        auto c = b;
                        c.insert(u);
                        auto s = closed_neighbourhood(g, c).count();
                        if (s < pick_size) {
                            pick_size = s;
                            pick = u;
                        }
                    }
                    b.insert(pick);
                }
                consider(b);
            }
            return best;
        }

        struct Analysis
        {
            VertexSet a, separator;
            std::vector<VertexSet> big;     // largest first
            std::size_t small_total = 0;
        };

        auto analyse(const Graph & g, const MultipartiteSpec & spec, const ConstantsLedger & cfg, nlohmann::json & trace)
            -> Analysis
        {
            auto k = spec.chi();
            auto m2 = second_part(spec);
            auto sep = cfg.sep_size(k);
            Analysis out{g.vertices(), g.empty_set(), {}, 0};
            for (std::size_t round = 0; round < k; ++round) {
                auto budget = Budget::nodes(std::max<std::uint64_t>(1000, cfg.budget_nodes / 100));
                auto found = find_separator(g, out.a, m2, sep, budget);
                nlohmann::json entry{{"stage", "separator"}, {"round", round}, {"max_size", sep}};
                if (found.budget_exhausted)
                    entry["note"] = "separator search budget exhausted; proceeding as if none exists";
                if (! found.x) {
                    entry["result"] = "none";
                    trace.push_back(entry);
                    break;
                }
                entry["removed"] = to_json(*found.x);
                trace.push_back(entry);
                out.a -= *found.x;
                out.separator |= *found.x;
            }
            for (auto & c : components_within(g, out.a)) {
                if (c.count() >= m2)
                    out.big.push_back(c);
                else
                    out.small_total += c.count();
            }
            std::stable_sort(out.big.begin(), out.big.end(),
                    [](const VertexSet & x, const VertexSet & y) { return x.count() > y.count(); });
            nlohmann::json sizes = nlohmann::json::array();
            for (auto & c : out.big)
                sizes.push_back(c.count());
            trace.push_back({{"stage", "components"}, {"big", sizes}, {"small_total", out.small_total},
                    {"separator", out.separator.count()}});
            return out;
        }

        auto decompose(const Graph & g, const MultipartiteSpec & spec, std::size_t n, const ConstantsLedger & cfg,
                Analysis & analysis, nlohmann::json & trace) -> Outcome<StabilityOutcome>
        {
            auto k = spec.chi();
            auto m2 = second_part(spec);
            analysis = analyse(g, spec, cfg, trace);
            StabilityOutcome out;
            out.separator = analysis.separator;

            if (k >= 2 && analysis.big.size() == k - 1) {
                auto km = pair_spec(spec);
                auto q = cfg.sep_size(k);
                bool all_ok = true;
                for (std::size_t i = 0; i < analysis.big.size(); ++i) {
                    for (std::size_t j = i + 1; j < analysis.big.size(); ++j)
                        for (auto v : analysis.big[i])
                            if (g.neighbours(v).intersects(analysis.big[j]))
                                throw InternalError("stability_decompose: components of g[A] are adjacent");
                    BlockCertificate cert;
                    cert.block = analysis.big[i];
                    cert.size_threshold = cfg.block_fraction * static_cast<double>(n);
                    cert.size_ok = static_cast<double>(cert.block.count()) >= cert.size_threshold;
                    cert.km_search = complement_contains(g, km, Budget::nodes(cfg.budget_nodes), cert.block).status;
                    auto conn = sample_connectivity(g, cert.block, m2 + q, q, cfg.connectivity_samples, cfg.seed + i);
                    cert.connectivity_set_size = conn.set_size;
                    cert.connectivity_paths = conn.paths;
                    cert.connectivity_checked = conn.checked;
                    cert.connectivity_passed = conn.passed;
                    trace.push_back({{"stage", "certificate"}, {"block", i}, {"size", cert.block.count()},
                            {"size_ok", cert.size_ok}, {"km_search", to_string(cert.km_search)},
                            {"connectivity", {{"checked", conn.checked}, {"passed", conn.passed},
                                {"set_size", conn.set_size}, {"paths", conn.paths}, {"method", "sampled"}}}});
                    all_ok = all_ok && cert.ok();
                    out.blocks.push_back(std::move(cert));
                }
                if (all_ok) {
                    out.variant = StabilityVariant::blocks;
                    out.trace = trace;
                    return out;
                }
                out.blocks.clear();
            }

            bool exhaustive = false;
            auto b = min_closed_neighbourhood(g, m2, cfg.budget_nodes, exhaustive);
            if (b) {
                auto closed = closed_neighbourhood(g, *b);
                trace.push_back({{"stage", "reduction"}, {"closed_neighbourhood", closed.count()}, {"n", n},
                        {"search", exhaustive ? "exhaustive" : "greedy"}});
                if (closed.count() < n && k >= 2) {
                    out.variant = StabilityVariant::reduced;
                    out.reduced = g.vertices() - closed;
                    out.core = *b;
                    out.removed_part = std::min<std::size_t>(1, k - 1);
                    auto parts = spec.parts();
                    parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(out.removed_part));
                    if (! parts.empty())
                        out.reduced_spec = MultipartiteSpec(parts);
                    out.trace = trace;
                    return out;
                }
            }
            return FailureReport{"stability_decompose", "neither variant could be certified", trace};
        }
    }

    auto to_json(const StabilityOutcome & s) -> nlohmann::json
    {
        nlohmann::json j;
        j["separator"] = to_json(s.separator);
        if (s.variant == StabilityVariant::reduced) {
            j["variant"] = "reduced";
            j["reduced"] = to_json(s.reduced);
            j["core"] = to_json(s.core);
            j["removed_part"] = s.removed_part;
            if (s.reduced_spec)
                j["reduced_spec"] = to_json(*s.reduced_spec);
        }
        else {
            j["variant"] = "blocks";
            j["blocks"] = nlohmann::json::array();
            for (auto & b : s.blocks)
                j["blocks"].push_back({{"vertices", to_json(b.block)}, {"size_threshold", b.size_threshold},
                        {"size_ok", b.size_ok}, {"km_search", to_string(b.km_search)},
                        {"connectivity", {{"set_size", b.connectivity_set_size}, {"paths", b.connectivity_paths},
                            {"checked", b.connectivity_checked}, {"passed", b.connectivity_passed}}}});
        }
        j["trace"] = s.trace;
        return j;
    }

    auto stability_decompose(const Graph & g, const MultipartiteSpec & spec, std::size_t n, std::size_t z,
            const ConstantsLedger & cfg) -> Outcome<StabilityOutcome>
    {
        auto k = spec.chi();
        if (n < 3)
            throw InputError("stability_decompose: n must be at least 3");
        if (k < 2)
            throw InputError("stability_decompose: spec needs at least two parts");
        if (g.order() < (k - 1) * (n - 1) + z)
            throw PreconditionError("stability_decompose: graph order below (k-1)(n-1)+z");
        nlohmann::json trace = nlohmann::json::array();
        // hypotheses are checked under budget and reported, not enforced
        auto cc = complement_contains(g, spec, Budget::nodes(cfg.budget_nodes));
        auto cyc = find_cycle_of_length(g, n, Budget::nodes(cfg.budget_nodes));
        nlohmann::json pre{{"stage", "precheck"}, {"complement", to_string(cc.status)}, {"cycle", to_string(cyc.status)}};
        if (cc.status == SearchStatus::found)
            pre["warning"] = "complement contains " + spec.to_string();
        if (cyc.status == SearchStatus::found)
            pre["warning_cycle"] = "graph contains C_" + std::to_string(n);
        trace.push_back(pre);
        Analysis analysis;
        return decompose(g, spec, n, cfg, analysis, trace);
    }

    auto cycle_or_adjuster(const Graph & g, const MultipartiteSpec & spec, std::size_t s, std::size_t n,
            const ConstantsLedger & cfg, const CycleOrAdjusterOptions & options) -> Outcome<CycleOrAdjuster>
    {
        if (s < 1 || n < 3)
            throw InputError("cycle_or_adjuster: need s >= 1 and n >= 3");
        auto w = options.within.value_or(g.vertices());
        auto nd = static_cast<double>(n);
        if (static_cast<double>(w.count()) < static_cast<double>(s) * nd - cfg.remainder_fraction * nd)
            throw PreconditionError("cycle_or_adjuster: region smaller than s*n - n/10");

        CycleOrAdjuster out;
        auto & trace = out.trace;
        auto fail = [&](const std::string & message) { return Outcome<CycleOrAdjuster>(FailureReport{"cycle_or_adjuster", message, trace}); };
        auto k = spec.chi();
        auto mk = spec.order();
        auto m2 = second_part(spec);
        auto q = cfg.q(k);
        auto floor_size_v = m2 + q;

        auto conn = sample_connectivity(g, w, floor_size_v, q, cfg.connectivity_samples, cfg.seed);
        trace.push_back({{"stage", "connectivity"}, {"method", "sampled"}, {"set_size", conn.set_size},
                {"paths", conn.paths}, {"checked", conn.checked}, {"passed", conn.passed}});

        // adjusters
        auto r_target = std::max<std::size_t>(1, ceil_size(cfg.r_total_factor * static_cast<double>(mk)));
        auto size_target = std::max(floor_size(cfg.adjuster_size_factor * static_cast<double>(mk)), floor_size_v);
        std::optional<Adjuster> fold;
        std::size_t r_total = 0;
        bool chain_holds = true;
        for (std::size_t round = 0; round < 64 && r_total < r_target; ++round) {
            auto used = fold ? fold->vertex_set(g.order()) : g.empty_set();
            nlohmann::json sub;
            auto found = find_adjuster(g, spec, cfg, {w - used, size_target}, &sub);
            if (! found.ok()) {
                trace.push_back({{"stage", "adjuster"}, {"round", round}, {"failure", found.failure().message}});
                break;
            }
            auto f = found.value();
            trace.push_back({{"stage", "adjuster"}, {"round", round}, {"r", f.r()}, {"length", f.length()}});
            if (! fold) {
                fold = f;
                r_total += f.r();
                continue;
            }
            auto paths = linking_paths(g, fold->vertex_set(g.order()), f.vertex_set(g.order()), q, w, trace, "adjuster paths");
            if (! paths)
                break;
            MergeStats stats;
            auto merged = merge_adjusters(g, *fold, f, *paths, &stats);
            auto before = fold->r() + f.r();
            auto factor = 1 - 4 / std::sqrt(static_cast<double>(stats.s));
            if (merged.r() > before || static_cast<double>(merged.r()) < static_cast<double>(before) * factor - 4)
                throw InternalError("cycle_or_adjuster: merge left the short-cycle window");
            r_total += f.r();
            fold = merged;
            trace.push_back({{"stage", "fold adjuster"}, {"r", merged.r()}, {"length", merged.length()}, {"s", stats.s}});
        }
        if (! fold)
            return fail("no adjuster found");
        chain_holds = 4 * fold->r() >= 3 * r_total;
        trace.push_back({{"stage", "adjusters done"}, {"r_total", r_total}, {"r_folded", fold->r()}, {"r_target", r_target},
                {"three_quarters_chain", chain_holds}});

        // long cycles
        auto l2 = log_k(k) * log_k(k);
        auto lo_base = std::max<std::size_t>({3, floor_size_v, ceil_size(nd / (cfg.long_cycle_divisor * l2))});
        auto hi_base = lo_base + 2 * mk;
        std::size_t total_lo, total_hi;
        if (s >= 2) {
            total_lo = ceil_size(cfg.long_total_low_multi * nd);
            total_hi = floor_size(cfg.long_total_high_multi * nd);
        }
        else {
            total_lo = ceil_size(cfg.long_total_low_single * nd);
            total_hi = floor_size(cfg.long_total_high_single * nd);
        }
        auto fold_set = fold->vertex_set(g.order());
        std::optional<Cycle> long_fold;
        std::size_t total = 0;
        for (std::size_t round = 0; round < 64 && total < total_lo; ++round) {
            auto hi = std::min(hi_base, total_hi - std::min(total_hi, total));
            auto lo = std::min(lo_base, hi);
            if (lo < 3)
                break;
            auto used = fold_set;
            if (long_fold)
                used |= as_set(g.order(), long_fold->vertices);
            nlohmann::json sub;
            auto found = find_long_cycle(g, spec, cfg, lo, hi, {w - used, std::nullopt}, &sub);
            if (! found.ok()) {
                trace.push_back({{"stage", "long cycle"}, {"round", round}, {"window", {lo, hi}}, {"failure", found.failure().message}});
                break;
            }
            auto c = found.value();
            trace.push_back({{"stage", "long cycle"}, {"round", round}, {"window", {lo, hi}}, {"length", c.length()}});
            if (! long_fold) {
                long_fold = c;
                total += c.length();
                continue;
            }
            auto paths = linking_paths(g, as_set(g.order(), long_fold->vertices), as_set(g.order(), c.vertices), q,
                    w - fold_set, trace, "cycle paths");
            if (! paths)
                break;
            auto merged = merge_adjusters(g, Adjuster::from_cycle(*long_fold), Adjuster::from_cycle(c), *paths);
            total += c.length();
            auto cap = total + 2 * mk + 2 * m2;
            if (merged.length() > cap) {
                try {
                    merged = shorten_section(g, merged, spec, total, cap);
                }
                catch (const SearchFailure & e) {
                    trace.push_back({{"stage", "truncate"}, {"failure", e.what()}});
                }
            }
            long_fold = realize_route(merged, {});
            trace.push_back({{"stage", "fold cycle"}, {"length", long_fold->length()}, {"total", total}});
        }
        if (! long_fold)
            return fail("no long cycle found");

        // final merge: the cycle part becomes a section without short cycles
        auto paths = linking_paths(g, fold_set, as_set(g.order(), long_fold->vertices), q, w, trace, "final paths");
        if (! paths)
            return fail("too few disjoint paths between the adjuster and the long cycle");
        auto merged = merge_adjusters(g, *fold, Adjuster::from_cycle(*long_fold), *paths);
        trace.push_back({{"stage", "final merge"}, {"r", merged.r()}, {"length", merged.length()}});

        try {
            if (s >= 2) {
                if (merged.length() < n)
                    return fail("merged adjuster is shorter than n");
                auto hi = n + std::min(merged.r(), mk + k);
                auto shortened = shorten_section(g, merged, spec, n, hi);
                if (shortened.length() - shortened.r() > n)
                    return fail("shortened adjuster cannot reach n");
                auto cycle = route_of_length(shortened, n);
                if (! verified(g, cycle, n))
                    throw InternalError("cycle_or_adjuster: routed cycle does not verify");
                trace.push_back({{"stage", "route"}, {"r", shortened.r()}, {"length", shortened.length()}, {"n", n}});
                out.cycle = cycle;
            }
            else {
                auto lo = ceil_size(cfg.adjuster_len_low * nd);
                auto hi = floor_size(cfg.adjuster_len_high * nd);
                if (merged.length() < lo)
                    return fail("merged adjuster is shorter than the window");
                auto shortened = shorten_section(g, merged, spec, lo, hi);
                if (! validate(g, shortened).ok())
                    throw InternalError("cycle_or_adjuster: shortened adjuster does not validate");
                trace.push_back({{"stage", "window"}, {"r", shortened.r()}, {"length", shortened.length()}, {"window", {lo, hi}}});
                out.adjuster = shortened;
            }
        }
        catch (const SearchFailure & e) {
            return fail(std::string("shorten: ") + e.what());
        }
        return out;
    }

    auto to_string(EmbedOutcome o) -> const char *
    {
        switch (o) {
            case EmbedOutcome::cycle_found: return "cycle-found";
            case EmbedOutcome::complement_contains: return "complement-contains-H";
            case EmbedOutcome::inconclusive: return "inconclusive";
        }
        return "?";
    }

    auto to_json(const EmbedResult & r) -> nlohmann::json
    {
        nlohmann::json j{{"outcome", to_string(r.outcome)}, {"stage", r.stage}, {"notes", r.notes}, {"trace", r.trace}};
        if (r.cycle)
            j["cycle"] = to_json(*r.cycle);
        if (r.embedding)
            j["embedding"] = to_json(*r.embedding);
        return j;
    }

    namespace
    {
        const char * stand_in_note = "stand-in: direct budgeted search for a path of order exactly n replaces an external result";
        const char * boundary_note = "external-result boundary: direct budgeted cycle search used as a stand-in";

        class Driver
        {
            public:
                explicit Driver(const ConstantsLedger & cfg) : _cfg(cfg) { }

                auto run(const Graph & g, const MultipartiteSpec & spec, std::size_t n, std::size_t depth) -> EmbedResult
                {
                    EmbedResult r;
                    auto k = spec.chi();
                    r.trace.push_back({{"stage", "start"}, {"order", g.order()}, {"spec", spec.to_string()}, {"n", n}, {"depth", depth}});

                    if (k == 1) {
                        if (g.order() >= spec.part(0)) {
                            Embedding e{{VertexSet(g.order())}};
                            for (Vertex v = 0; v < spec.part(0); ++v)
                                e.classes[0].insert(v);
                            return embedding_found(g, spec, std::move(r), e, "single part");
                        }
                        r.stage = "single part";
                        r.notes.push_back("fewer vertices than the only part");
                        return r;
                    }
                    if (g.order() < spec.goodness_bound(n))
                        return extremal(g, spec, n, std::move(r));

                    auto cc = complement_contains(g, spec, Budget::nodes(_cfg.budget_nodes));
                    r.trace.push_back({{"stage", "complement"}, {"status", to_string(cc.status)}, {"nodes", cc.nodes}});
                    if (cc.status == SearchStatus::found)
                        return embedding_found(g, spec, std::move(r), *cc.embedding, "complement");
                    if (cc.status == SearchStatus::budget_exhausted)
                        r.notes.push_back("complement search budget exhausted");

                    Analysis analysis;
                    nlohmann::json st = nlohmann::json::array();
                    auto dec = decompose(g, spec, n, _cfg, analysis, st);
                    r.trace.push_back({{"stage", "stability"}, {"ok", dec.ok()}, {"trace", st}});
                    if (dec.ok()) {
                        auto & d = dec.value();
                        if (d.variant == StabilityVariant::reduced)
                            return reduced(g, spec, n, depth, d, std::move(r));
                        if (auto done = blocks(g, spec, n, d, r))
                            return *done;
                    }
                    else if (auto done = fallback(g, spec, n, analysis, r))
                        return *done;
                    if (r.stage.empty())
                        r.stage = dec.ok() ? "blocks" : "stability";
                    return r;
                }

            private:
                auto embedding_found(const Graph & g, const MultipartiteSpec & spec, EmbedResult r, const Embedding & e,
                        const std::string & stage) -> EmbedResult
                {
                    if (! verify_embedding(g, spec, e))
                        throw InternalError("embed_cycle: embedding does not verify");
                    r.outcome = EmbedOutcome::complement_contains;
                    r.embedding = e;
                    r.stage = stage;
                    return r;
                }

                auto cycle_found(const Graph & g, std::size_t n, EmbedResult r, const Cycle & c, const std::string & stage)
                    -> EmbedResult
                {
                    if (! verified(g, c, n))
                        throw InternalError("embed_cycle: cycle does not verify");
                    r.outcome = EmbedOutcome::cycle_found;
                    r.cycle = c;
                    r.stage = stage;
                    return r;
                }

                auto extremal(const Graph & g, const MultipartiteSpec & spec, std::size_t n, EmbedResult r) -> EmbedResult
                {
                    r.notes.push_back("extremal graph: order " + std::to_string(g.order()) + " is below the goodness bound " +
                            std::to_string(spec.goodness_bound(n)) + ", so no witness is guaranteed");
                    auto cc = complement_contains(g, spec, Budget::nodes(_cfg.budget_nodes));
                    if (cc.status == SearchStatus::found)
                        return embedding_found(g, spec, std::move(r), *cc.embedding, "extremal graph");
                    auto cyc = find_cycle_of_length(g, n, Budget::nodes(_cfg.budget_nodes));
                    if (cyc.status == SearchStatus::found)
                        return cycle_found(g, n, std::move(r), *cyc.cycle, "extremal graph");
                    r.trace.push_back({{"stage", "extremal graph"}, {"complement", to_string(cc.status)}, {"cycle", to_string(cyc.status)}});
                    if (cc.status == SearchStatus::none_found && cyc.status == SearchStatus::none_found)
                        r.notes.push_back("complete searches found neither witness");
                    r.stage = "extremal graph";
                    return r;
                }

                auto reduced(const Graph & g, const MultipartiteSpec & spec, std::size_t n, std::size_t depth,
                        const StabilityOutcome & d, EmbedResult r) -> EmbedResult
                {
                    std::vector<Vertex> original;
                    auto sub_graph = g.induced(d.reduced, &original);
                    auto sub = run(sub_graph, *d.reduced_spec, n, depth + 1);
                    r.trace.push_back({{"stage", "recursion"}, {"order", sub_graph.order()}, {"spec", d.reduced_spec->to_string()},
                            {"outcome", to_string(sub.outcome)}, {"trace", sub.trace}});
                    r.notes.insert(r.notes.end(), sub.notes.begin(), sub.notes.end());
                    if (sub.outcome == EmbedOutcome::cycle_found) {
                        Cycle c;
                        for (auto v : sub.cycle->vertices)
                            c.vertices.push_back(original[v]);
                        return cycle_found(g, n, std::move(r), c, "recursion: " + sub.stage);
                    }
                    if (sub.outcome == EmbedOutcome::complement_contains) {
                        Embedding e;
                        for (auto & cls : sub.embedding->classes) {
                            VertexSet mapped(g.order());
                            for (auto v : cls)
                                mapped.insert(original[v]);
                            e.classes.push_back(mapped);
                        }
                        e.classes.insert(e.classes.begin() + static_cast<std::ptrdiff_t>(d.removed_part), d.core);
                        return embedding_found(g, spec, std::move(r), e, "recursion: " + sub.stage);
                    }
                    r.stage = "recursion: " + sub.stage;
                    return r;
                }

                auto blocks(const Graph & g, const MultipartiteSpec & spec, std::size_t n, const StabilityOutcome & d,
                        EmbedResult & r) -> std::optional<EmbedResult>
                {
                    auto km = pair_spec(spec);
                    std::vector<VertexSet> cores;
                    for (auto & b : d.blocks) {
                        auto params = ExtractionParams::fitted(_cfg, b.block.count(), km);
                        auto ext = extract_expander(g, b.block, km, params);
                        cores.push_back(ext.ok() ? ext.value().vertices : b.block);
                        r.trace.push_back({{"stage", "block expander"}, {"ok", ext.ok()}, {"order", cores.back().count()}});
                    }
                    for (std::size_t i = 0; i < cores.size(); ++i)
                        for (std::size_t j = i + 1; j < cores.size(); ++j) {
                            auto dp = disjoint_paths(g, cores[i], cores[j], 2);
                            r.trace.push_back({{"stage", "linkage"}, {"pair", {i, j}}, {"linked", dp.found()}});
                            if (! dp.found())
                                continue;
                            if (auto c = linked(g, spec, n, d.blocks[i].block, d.blocks[j].block, r))
                                return cycle_found(g, n, r, *c, "linked blocks");
                        }
                    for (std::size_t i = 0; i < cores.size(); ++i) {
                        auto others = g.empty_set();
                        for (std::size_t j = 0; j < cores.size(); ++j)
                            if (j != i)
                                others |= cores[j];
                        std::optional<Vertex> cut;
                        if (! others.empty()) {
                            auto dp = disjoint_paths(g, cores[i], others, 2);
                            if (dp.found())
                                continue;
                            if (dp.cut->count() == 1)
                                cut = dp.cut->first();
                        }
                        if (auto c = single_block(g, n, cores[i], cut, r))
                            return cycle_found(g, n, r, *c, "single block");
                    }
                    return std::nullopt;
                }

                auto linked(const Graph & g, const MultipartiteSpec & spec, std::size_t n, const VertexSet & a,
                        const VertexSet & b, EmbedResult & r) -> std::optional<Cycle>
                {
                    auto km = pair_spec(spec);
                    try {
                        auto fa = cycle_or_adjuster(g, km, 1, n, _cfg, {a});
                        auto fb = cycle_or_adjuster(g, km, 1, n, _cfg, {b});
                        r.trace.push_back({{"stage", "block adjusters"}, {"first", fa.ok()}, {"second", fb.ok()}});
                        if (! fa.ok() || ! fb.ok())
                            return std::nullopt;
                        auto & f = *fa.value().adjuster;
                        auto & other = *fb.value().adjuster;
                        auto c = route_of_length(other, other.length());
                        auto paths = linking_paths(g, f.vertex_set(g.order()), as_set(g.order(), c.vertices), 2,
                                g.vertices(), r.trace, "block paths");
                        if (! paths)
                            return std::nullopt;
                        EfficientMergeOptions opts;
                        opts.budget_nodes = _cfg.budget_nodes;
                        auto merged = merge_efficient(g, f, Adjuster::from_cycle(c, f.cycle_cap), (*paths)[0], (*paths)[1],
                                km.part(0), km.part(1), opts);
                        r.trace.push_back({{"stage", "efficient merge"}, {"r", merged.r()}, {"length", merged.length()}});
                        if (merged.length() < n)
                            return std::nullopt;
                        auto hi = n + std::min(merged.r(), spec.order() + spec.chi());
                        auto shortened = shorten_section(g, merged, spec, n, hi);
                        if (shortened.length() - shortened.r() > n)
                            return std::nullopt;
                        return route_of_length(shortened, n);
                    }
                    catch (const SearchFailure & e) {
                        r.trace.push_back({{"stage", "linked"}, {"failure", e.what()}});
                    }
                    catch (const PreconditionError & e) {
                        r.trace.push_back({{"stage", "linked"}, {"failure", e.what()}});
                    }
                    return std::nullopt;
                }

                auto single_block(const Graph & g, std::size_t n, const VertexSet & core, std::optional<Vertex> cut,
                        EmbedResult & r) -> std::optional<Cycle>
                {
                    auto rest = g.vertices();
                    if (cut)
                        rest.erase(*cut);
                    VertexSet region(g.order());
                    std::size_t best = 0;
                    for (auto & c : components_within(g, rest)) {
                        auto overlap = c.intersection_count(core);
                        if (overlap > best) {
                            best = overlap;
                            region = c;
                        }
                    }
                    if (cut)
                        region.insert(*cut);
                    auto inner = core & region;
                    r.notes.push_back(stand_in_note);
                    for (auto x : inner) {
                        auto nb = g.neighbours(x) & inner;
                        if (nb.empty())
                            continue;
                        auto y = nb.first();
                        auto found = find_path_of_order(g, x, y, n, region, Budget::nodes(_cfg.budget_nodes));
                        r.trace.push_back({{"stage", "single block"}, {"method", "stand-in"}, {"x", x}, {"y", y},
                                {"status", to_string(found.status)}, {"nodes", found.nodes}});
                        if (found.status == SearchStatus::found)
                            return Cycle{found.path->vertices};
                        return std::nullopt;
                    }
                    return std::nullopt;
                }

                /// Stability gave neither variant; try every large component of
                /// g[A] with the largest part plus the few smallest ones.
                auto fallback(const Graph & g, const MultipartiteSpec & spec, std::size_t n, const Analysis & analysis,
                        EmbedResult & r) -> std::optional<EmbedResult>
                {
                    auto k = spec.chi();
                    auto t = analysis.big.size();
                    auto & p = spec.parts();
                    auto max_j = t <= k ? k - t + 1 : 1;
                    for (std::size_t i = 1; i <= std::min(t, k); ++i) {
                        auto & block = analysis.big[i - 1];
                        auto h = [&](std::size_t j) {
                            std::vector<std::size_t> parts{p[k - i]};
                            for (std::size_t l = 0; l + 1 < j; ++l)
                                parts.push_back(p[k - t - 1 - l]);
                            return MultipartiteSpec(parts);
                        };
                        std::size_t s_i = 1;
                        bool known = true;
                        for (std::size_t j = 2; j <= max_j; ++j) {
                            auto cc = complement_contains(g, h(j), Budget::nodes(_cfg.budget_nodes), block);
                            if (cc.status == SearchStatus::found) {
                                s_i = j;
                                continue;
                            }
                            known = cc.status == SearchStatus::none_found;
                            break;
                        }
                        r.trace.push_back({{"stage", "component"}, {"index", i}, {"order", block.count()}, {"s", s_i}, {"exact", known}});
                        auto nd = static_cast<double>(n);
                        if (s_i >= 2 && s_i + 1 <= max_j &&
                                static_cast<double>(block.count()) >= static_cast<double>(s_i) * nd - _cfg.remainder_fraction * nd) {
                            try {
                                auto co = cycle_or_adjuster(g, h(s_i + 1), s_i, n, _cfg, {block});
                                r.trace.push_back({{"stage", "cycle_or_adjuster"}, {"ok", co.ok()},
                                        {"trace", co.ok() ? co.value().trace : co.failure().trace}});
                                if (co.ok() && co.value().cycle)
                                    return cycle_found(g, n, r, *co.value().cycle, "cycle_or_adjuster");
                            }
                            catch (const PreconditionError & e) {
                                r.trace.push_back({{"stage", "cycle_or_adjuster"}, {"failure", e.what()}});
                            }
                        }
                        r.notes.push_back(boundary_note);
                        std::vector<Vertex> original;
                        auto sub = g.induced(block, &original);
                        auto found = find_cycle_of_length(sub, n, Budget::nodes(_cfg.budget_nodes));
                        r.trace.push_back({{"stage", "component cycle"}, {"method", "stand-in"}, {"status", to_string(found.status)},
                                {"nodes", found.nodes}});
                        if (found.status == SearchStatus::found) {
                            Cycle c;
                            for (auto v : found.cycle->vertices)
                                c.vertices.push_back(original[v]);
                            return cycle_found(g, n, r, c, "component stand-in");
                        }
                        if (found.status == SearchStatus::budget_exhausted)
                            r.notes.push_back("budget exhausted in component cycle search");
                    }
                    return std::nullopt;
                }

                const ConstantsLedger & _cfg;
        };
    }

    auto embed_cycle(const Graph & g, const MultipartiteSpec & spec, std::size_t n, const ConstantsLedger & cfg) -> EmbedResult
    {
        if (n < 3)
            throw InputError("embed_cycle: n must be at least 3");
        Driver driver(cfg);
        auto r = driver.run(g, spec, n, 0);
        if (r.outcome == EmbedOutcome::inconclusive && r.stage.empty())
            r.stage = "unknown";
        return r;
    }
}
