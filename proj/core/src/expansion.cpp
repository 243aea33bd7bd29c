#include <goodness/expansion.hpp>

#include "set_search.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace goodness
{
    namespace
    {
        constexpr double eps = 1e-9;

        auto floor_ll(double x) -> long long { return static_cast<long long>(std::floor(x + eps)); }
        auto ceil_ll(double x) -> long long { return static_cast<long long>(std::ceil(x - eps)); }
    }

    void ExpansionParams::validate() const
    {
        // Delta = 0 leaves clause 1 vacuous, which is what losing 3 from Delta <= 3 means.
        if (! (delta >= 0) || ! (beta > 0) || ! (d > 0))
            throw InputError("expansion parameters: Delta must be non-negative, beta and d positive");
        if (k < 2)
            throw InputError("expansion parameter k must be at least 2");
        if (! (divisor > 0))
            throw InputError("expansion divisor must be positive");
    }

    auto ExpansionParams::small_limit() const -> std::size_t
    {
        return static_cast<std::size_t>(std::max<long long>(0, floor_ll(beta * d)));
    }

    auto ExpansionParams::large_start() const -> std::size_t
    {
        return static_cast<std::size_t>(std::max<long long>(1, ceil_ll(beta * d)));
    }

    auto ExpansionParams::clause2_threshold(std::size_t size) const -> double
    {
        return static_cast<double>(size) / (divisor * std::log(static_cast<double>(k)));
    }

    auto ExpansionVerdict::to_json() const -> nlohmann::json
    {
        nlohmann::json j{{"status", status == ExpansionStatus::verified ? "verified-up-to-cap" : "violated"},
            {"verified_cap", verified_cap}, {"requested_cap", requested_cap}, {"nodes", nodes}};
        if (witness) {
            j["witness"] = witness->to_vector();
            j["clause"] = clause;
            j["heuristic"] = heuristic;
        }
        return j;
    }

    auto violates_clause(const Graph & g, const VertexSet & w, const ExpansionParams & p, const VertexSet & s,
            int clause) -> bool
    {
        auto size = s.count();
        auto n = external_neighborhood(g, s);
        if (clause == 1)
            return size <= p.small_limit() && static_cast<double>(n.intersection_count(w)) < p.delta * static_cast<double>(size) - eps;
        if (clause == 2)
            return size >= p.large_start() && size <= g.order() / 2 && static_cast<double>(n.count()) < p.clause2_threshold(size) - eps;
        throw InputError("clause must be 1 or 2");
    }

    auto check_expansion(const Graph & g, const VertexSet & w, const ExpansionParams & p, std::size_t cap,
            const ExpansionOptions & options) -> ExpansionVerdict
    {
        p.validate();
        g.check_set(w);
        if (cap < 1)
            throw InputError("check_expansion: cap must be at least 1");

        ExpansionVerdict verdict;
        verdict.requested_cap = cap;
        auto all = g.vertices();
        auto half = g.order() / 2;
        auto small = p.small_limit();
        auto large = p.large_start();
        Budget budget = Budget::nodes(options.budget_nodes);

        // Largest allowed neighbour count for a violator of each clause at a given size.
        auto clause1_max = [&](std::size_t c) { return ceil_ll(p.delta * static_cast<double>(c)) - 1; };
        auto clause2_max = [&](std::size_t c) { return ceil_ll(p.clause2_threshold(c)) - 1; };

        auto violated = [&](VertexSet s, int clause, bool heuristic) {
            verdict.status = ExpansionStatus::violated;
            verdict.witness = std::move(s);
            verdict.clause = clause;
            verdict.heuristic = heuristic;
            verdict.nodes = budget.used;
            return verdict;
        };

        std::size_t completed = 0;
        for (std::size_t c = 1; c <= cap; ++c) {
            if (c > g.order()) {
                completed = cap;
                break;
            }
            bool exhausted = false;
            VertexSet found;
            if (c <= small) {
                detail::ExactSetSearch search(g, all, w, budget);
                auto status = search.run(c, clause1_max(c), found);
                if (status == SearchStatus::found)
                    return violated(found, 1, false);
                exhausted = status == SearchStatus::budget_exhausted;
            }
            if (! exhausted && c >= large && c <= half) {
                detail::ExactSetSearch search(g, all, all, budget);
                auto status = search.run(c, clause2_max(c), found);
                if (status == SearchStatus::found)
                    return violated(found, 2, false);
                exhausted = status == SearchStatus::budget_exhausted;
            }
            if (exhausted)
                break;
            completed = c;
        }
        verdict.verified_cap = completed;

        if (options.sweep) {
            // Unions of components have no external neighbours at all.
            auto comps = components(g);
            std::sort(comps.begin(), comps.end(), [](auto & a, auto & b) { return a.count() < b.count(); });
            VertexSet acc = g.empty_set();
            for (auto & comp : comps) {
                for (auto * candidate : {&comp, &acc}) {
                    if (candidate == &acc)
                        acc |= comp;
                    auto c = candidate->count();
                    if (c > completed && c >= large && c <= half && clause2_max(c) >= 0)
                        return violated(*candidate, 2, true);
                }
            }

            auto seeds = detail::sweep_seeds(g, all, options.restarts, options.seed);
            if (small > completed)
                for (auto seed : seeds) {
                    auto hit = detail::grow_greedy(g, all, w, seed, small, [&](const VertexSet & s, std::size_t count) {
                        auto c = s.count();
                        return c > completed && static_cast<long long>(count) <= clause1_max(c);
                    });
                    if (hit)
                        return violated(*hit, 1, true);
                }
            if (half >= std::max(large, completed + 1))
                for (auto seed : seeds) {
                    auto hit = detail::grow_greedy(g, all, all, seed, half, [&](const VertexSet & s, std::size_t count) {
                        auto c = s.count();
                        return c > completed && c >= large && static_cast<long long>(count) <= clause2_max(c);
                    });
                    if (hit)
                        return violated(*hit, 2, true);
                }
        }
        verdict.nodes = budget.used;
        return verdict;
    }

    auto ExtractionParams::fitted(const ConstantsLedger & c, std::size_t order, const MultipartiteSpec & spec)
        -> ExtractionParams
    {
        ExtractionParams p;
        auto h = static_cast<double>(spec.order());
        auto k = static_cast<double>(spec.chi());
        p.M = c.trim_fill * static_cast<double>(order) / (h * std::log(k));
        p.delta = c.delta;
        // keep M >= 10 beta Delta so the sparse-cut slack stays below |F| / (10 k log k)
        p.beta = std::max(1.0, std::min(p.M / c.beta_divisor, p.M / (10 * p.delta)));
        p.divisor = c.expansion_divisor;
        p.slack_factor = c.slack_factor;
        p.cap = c.expansion_cap;
        p.search.budget_nodes = c.budget_nodes;
        p.search.restarts = c.heuristic_restarts;
        p.search.seed = c.seed;
        return p;
    }

    namespace
    {
        auto first_n(const VertexSet & s, std::size_t n) -> VertexSet
        {
            VertexSet result(s.universe());
            for (auto v : s) {
                if (n-- == 0)
                    break;
                result.insert(v);
            }
            return result;
        }

        auto number(double x) -> std::string
        {
            std::ostringstream out;
            out << x;
            return out.str();
        }

        void parameter_warnings(const ExtractionParams & p, std::size_t k, std::vector<std::string> & warnings)
        {
            auto check = [&](bool ok, const std::string & what) {
                if (! ok)
                    warnings.push_back("parameter inequality violated: " + what);
            };
            check(p.M >= 60 * p.beta - eps, "M >= 60 beta (M=" + number(p.M) + ", beta=" + number(p.beta) + ")");
            check(60 * p.beta >= 240 * p.delta - eps, "60 beta >= 240 Delta");
            check(p.M >= 10 * p.beta * p.delta - eps, "M >= 10 beta Delta");
            check(p.M >= 4.0 * static_cast<double>(k) - eps, "M >= 4k");
            check(p.beta >= 10 * std::log(static_cast<double>(k)) - eps, "beta >= 10 log k");
        }

        struct Extractor
        {
            const Graph & g;
            const ExtractionParams & p;
            nlohmann::json trace = nlohmann::json::array();

            auto fail(const std::string & message, nlohmann::json state) -> FailureReport
            {
                trace.push_back({{"case", "stuck"}, {"state", std::move(state)}});
                return FailureReport{"extract_expander", message, trace};
            }

            /// S inside u with ceil(m) <= |S| <= |u|/2 and |N(S) & u| <= |S|/(div log k) + slack m Delta beta.
            auto sparse_cut(const VertexSet & u, const MultipartiteSpec & spec) -> std::optional<VertexSet>
            {
                auto m = boost::rational_cast<double>(spec.avg_part());
                auto lo = spec.avg_part_ceil();
                auto half = u.count() / 2;
                if (lo > half)
                    return std::nullopt;
                auto logk = std::log(static_cast<double>(spec.chi()));
                auto slack = p.slack_factor * m * p.delta * p.beta;
                auto max_allowed = [&](std::size_t c) {
                    return floor_ll(static_cast<double>(c) / (p.divisor * logk) + slack);
                };

                auto comps = components_within(g, u);
                std::sort(comps.begin(), comps.end(), [](auto & a, auto & b) { return a.count() < b.count(); });
                VertexSet acc = g.empty_set();
                for (auto & comp : comps) {
                    if (comp.count() >= lo && comp.count() <= half)
                        return comp;
                    acc |= comp;
                    if (acc.count() >= lo && acc.count() <= half)
                        return acc;
                }

                for (std::size_t c = lo; c <= std::min(half, p.cap); ++c) {
                    VertexSet found;
                    Budget local = Budget::nodes(p.search.budget_nodes);
                    detail::ExactSetSearch search(g, u, u, local);
                    auto status = search.run(c, max_allowed(c), found);
                    if (status == SearchStatus::found)
                        return found;
                    if (status == SearchStatus::budget_exhausted)
                        break;
                }

                for (auto seed : detail::sweep_seeds(g, u, p.search.restarts, p.search.seed)) {
                    auto hit = detail::grow_greedy(g, u, u, seed, half, [&](const VertexSet & s, std::size_t count) {
                        return s.count() >= lo && static_cast<long long>(count) <= max_allowed(s.count());
                    });
                    if (hit)
                        return hit;
                }
                return std::nullopt;
            }

            /// Largest X inside u with |X| <= 2m and |N(X) & u| <= Delta |X| (possibly empty).
            auto low_expansion_set(const VertexSet & u, const MultipartiteSpec & spec) -> VertexSet
            {
                auto limit = static_cast<std::size_t>(std::max<long long>(0, floor_ll(2 * boost::rational_cast<double>(spec.avg_part()))));
                limit = std::min(limit, u.count());
                auto max_allowed = [&](std::size_t c) { return floor_ll(p.delta * static_cast<double>(c)); };

                std::optional<VertexSet> best;
                if (limit > p.cap)
                    for (auto seed : detail::sweep_seeds(g, u, p.search.restarts, p.search.seed)) {
                        detail::grow_greedy(g, u, u, seed, limit, [&](const VertexSet & s, std::size_t count) {
                            auto c = s.count();
                            if (c > p.cap && static_cast<long long>(count) <= max_allowed(c) && (! best || c > best->count()))
                                best = s;
                            return false;
                        });
                    }
                if (best)
                    return *best;
                for (std::size_t c = std::min(limit, p.cap); c >= 1; --c) {
                    VertexSet found;
                    Budget local = Budget::nodes(p.search.budget_nodes);
                    detail::ExactSetSearch search(g, u, u, local);
                    if (search.run(c, max_allowed(c), found) == SearchStatus::found)
                        return found;
                }
                return g.empty_set();
            }

            auto run(VertexSet u, MultipartiteSpec spec, std::vector<std::string> warnings) -> Outcome<ExtractionResult>
            {
                while (true) {
                    auto k = spec.chi();
                    if (k < 2)
                        return fail("sub-join has fewer than two parts", {{"spec", spec.to_string()}});
                    auto h = static_cast<double>(spec.order());
                    auto logk = std::log(static_cast<double>(k));
                    auto target = M_target(h, logk);
                    if (u.count() < target)
                        return fail("order below M|H|log chi(H)",
                                {{"order", u.count()}, {"required", target}, {"spec", spec.to_string()}});

                    auto trimmed = first_n(u, target);
                    trace.push_back({{"case", "trim"}, {"from", u.count()}, {"to", target}, {"spec", spec.to_string()},
                            {"m_threshold", spec.avg_part_ceil()}});

                    if (auto s = sparse_cut(trimmed, spec)) {
                        auto ns = external_neighborhood(g, *s) & trimmed;
                        auto t_set = trimmed - ns - *s;
                        nlohmann::json step{{"case", "sparse_cut"}, {"S", s->count()}, {"N_S", ns.count()},
                            {"T", t_set.count()}};
                        if (s->count() >= spec.order()) {
                            auto M = p.M;
                            std::size_t t = 1;
                            for (std::size_t c = 1; c <= k; ++c)
                                if (static_cast<double>(t_set.count()) >= M * static_cast<double>(smallest_parts(spec, c).order()) * std::log(static_cast<double>(c)) - eps)
                                    t = c;
                            std::size_t s_count = 0;
                            std::vector<std::size_t> s_indices;
                            for (std::size_t c = 1; t + c <= k; ++c) {
                                std::vector<std::size_t> idx;
                                for (std::size_t i = t; i < t + c; ++i)
                                    idx.push_back(i);
                                auto hs = sub_join(spec, idx);
                                if (static_cast<double>(s->count()) >= M * static_cast<double>(hs.order()) * std::log(static_cast<double>(c)) - eps) {
                                    s_count = c;
                                    s_indices = idx;
                                }
                            }
                            step["branch"] = "large_S";
                            step["t"] = t;
                            step["s"] = s_count;
                            if (s_count + t != k)
                                step["note"] = "s + t != k at this scale";

                            auto side_budget = Budget::nodes(p.search.budget_nodes);
                            auto ht = smallest_parts(spec, t);
                            auto t_status = t >= 2 ? complement_contains(g, ht, side_budget, t_set).status : SearchStatus::found;
                            SearchStatus s_status = SearchStatus::found;
                            MultipartiteSpec hs;
                            if (s_count >= 2) {
                                hs = sub_join(spec, s_indices);
                                auto s_budget = Budget::nodes(p.search.budget_nodes);
                                s_status = complement_contains(g, hs, s_budget, *s).status;
                            }
                            step["T_side"] = to_string(t_status);
                            step["S_side"] = to_string(s_status);

                            if (t_status == SearchStatus::none_found) {
                                step["chosen"] = "T";
                                u = t_set;
                                spec = ht;
                            }
                            else if (s_status == SearchStatus::none_found) {
                                step["chosen"] = "S";
                                u = *s;
                                spec = hs;
                            }
                            else if (t_status == SearchStatus::budget_exhausted) {
                                step["chosen"] = "T";
                                step["note_choice"] = "both sides inconclusive, preferring T";
                                u = t_set;
                                spec = ht;
                            }
                            else if (s_status == SearchStatus::budget_exhausted) {
                                step["chosen"] = "S";
                                step["note_choice"] = "S side inconclusive, T side contains H_t";
                                u = *s;
                                spec = hs;
                            }
                            else {
                                trace.push_back(step);
                                return fail("both sides contain their sub-joins in the complement", step);
                            }
                        }
                        else {
                            step["branch"] = "small_S";
                            std::vector<std::size_t> idx;
                            for (std::size_t i = 1; i < k; ++i)
                                idx.push_back(i);
                            if (idx.size() < 2) {
                                trace.push_back(step);
                                return fail("dropping the smallest part leaves fewer than two parts", step);
                            }
                            step["chosen"] = "T";
                            u = t_set;
                            spec = sub_join(spec, idx);
                        }
                        step["subspec"] = spec.to_string();
                        trace.push_back(step);
                        continue;
                    }

                    auto x = low_expansion_set(trimmed, spec);
                    auto f = trimmed - x;
                    trace.push_back({{"case", "final"}, {"X", x.count()}, {"F", f.count()}});

                    ExtractionResult result;
                    result.vertices = f;
                    result.spec = spec;
                    result.params = ExpansionParams{p.delta, p.beta, boost::rational_cast<double>(spec.avg_part()), k, p.divisor};
                    result.upper_bound = p.M * h * logk;
                    result.lower_bound = result.upper_bound - boost::rational_cast<double>(spec.avg_part());
                    if (static_cast<double>(f.count()) < result.lower_bound - eps)
                        warnings.push_back("lower size bound fails: |X| >= m(H')");
                    result.warnings = std::move(warnings);
                    result.trace = trace;
                    return result;
                }
            }

            auto M_target(double h, double logk) const -> std::size_t
            {
                return static_cast<std::size_t>(std::max<long long>(0, floor_ll(p.M * h * logk)));
            }
        };
    }

    auto extract_expander(const Graph & g, const VertexSet & within, const MultipartiteSpec & spec,
            const ExtractionParams & p) -> Outcome<ExtractionResult>
    {
        g.check_set(within);
        if (spec.chi() < 2)
            throw PreconditionError("extract_expander needs a spec with at least two parts");
        if (! (p.M > 0) || ! (p.beta > 0) || ! (p.delta > 0))
            throw InputError("extract_expander: M, beta and delta must be positive");

        std::vector<std::string> warnings;
        parameter_warnings(p, spec.chi(), warnings);

        auto pre_budget = Budget::nodes(std::max<std::uint64_t>(1, p.search.budget_nodes / 10));
        auto pre = complement_contains(g, spec, pre_budget, within);
        if (pre.status == SearchStatus::found)
            warnings.push_back("complement contains " + spec.to_string() + "; the freeness precondition fails");
        else if (pre.status == SearchStatus::budget_exhausted)
            warnings.push_back("spec-freeness of the complement not decided within budget");

        Extractor ex{g, p};
        ex.trace.push_back({{"case", "start"}, {"order", within.count()}, {"spec", spec.to_string()}, {"M", p.M},
                {"beta", p.beta}, {"delta", p.delta}, {"precondition", to_string(pre.status)},
                {"note", "set-size thresholds use ceil(m)"}});
        return ex.run(within, spec, std::move(warnings));
    }

    auto extract_expander(const Graph & g, const MultipartiteSpec & spec, const ExtractionParams & p)
        -> Outcome<ExtractionResult>
    {
        return extract_expander(g, g.vertices(), spec, p);
    }
}
