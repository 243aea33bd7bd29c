#include "acceptance.hpp"

#include "../support/generators.hpp"
#include "../support/oracles.hpp"

#include <goodness/adjuster.hpp>
#include <goodness/constants.hpp>
#include <goodness/embedding.hpp>
#include <goodness/errors.hpp>
#include <goodness/expansion.hpp>
#include <goodness/multipartite.hpp>
#include <goodness/navigation.hpp>
#include <goodness/ramsey.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

namespace goodness::acceptance
{
    namespace
    {
        using Clock = std::chrono::steady_clock;

        /// Collects the first few failure messages of a criterion.
        struct Tally
        {
            std::size_t checked = 0;
            std::size_t failed = 0;
            std::vector<std::string> first;

            void fail(const std::string & why)
            {
                ++failed;
                if (first.size() < 3)
                    first.push_back(why);
            }

            auto summary(const std::string & what) const -> std::string
            {
                std::ostringstream out;
                out << checked - failed << "/" << checked << " " << what;
                for (auto & f : first)
                    out << "; " << f;
                return out.str();
            }
        };

        template <typename F>
        auto timed(std::string id, std::string name, F && body) -> CriterionResult
        {
            CriterionResult r{std::move(id), std::move(name), false, "", 0};
            auto t0 = Clock::now();
            try {
                body(r);
            }
            catch (const std::exception & e) {
                r.passed = false;
                r.detail += std::string(r.detail.empty() ? "" : "; ") + "exception: " + e.what();
            }
            r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
            return r;
        }

        /// Every sorted part tuple with k parts of size at most `largest`.
        void specs_with(std::size_t k, std::size_t largest, std::vector<std::size_t> & prefix,
                std::vector<MultipartiteSpec> & out)
        {
            if (prefix.size() == k) {
                out.emplace_back(prefix);
                return;
            }
            for (std::size_t p = prefix.empty() ? 1 : prefix.back(); p <= largest; ++p) {
                prefix.push_back(p);
                specs_with(k, largest, prefix, out);
                prefix.pop_back();
            }
        }

        /// Longest route computed from the parts: long sides plus connectors.
        auto expected_length(const Adjuster & a) -> std::size_t
        {
            if (a.loop)
                return a.loop->vertices.size();
            std::size_t total = 0;
            for (auto & c : a.cycles)
                total += (c.cycle.length() + 1) / 2;
            for (auto & p : a.paths)
                total += p.vertices.size() - 1;
            return total;
        }

        auto all_vertices(std::size_t n, const Adjuster & a) -> VertexSet
        {
            VertexSet s(n);
            if (a.loop)
                for (auto v : a.loop->vertices)
                    s.insert(v);
            for (auto & c : a.cycles)
                for (auto v : c.cycle.vertices)
                    s.insert(v);
            for (auto & p : a.paths)
                for (auto v : p.vertices)
                    s.insert(v);
            return s;
        }

        auto cycle_ok(const Graph & g, const Cycle & c, std::size_t length) -> bool
        {
            if (c.vertices.size() != length || length < 3)
                return false;
            std::set<Vertex> distinct(c.vertices.begin(), c.vertices.end());
            if (distinct.size() != length)
                return false;
            for (std::size_t i = 0; i < length; ++i) {
                auto u = c.vertices[i], v = c.vertices[(i + 1) % length];
                if (u >= g.order() || v >= g.order() || ! g.adjacent(u, v))
                    return false;
            }
            return true;
        }

        auto embedding_ok(const Graph & g, const MultipartiteSpec & spec, const Embedding & e) -> bool
        {
            if (e.classes.size() != spec.chi())
                return false;
            std::vector<int> owner(g.order(), -1);
            for (std::size_t i = 0; i < e.classes.size(); ++i) {
                if (e.classes[i].count() != spec.part(i))
                    return false;
                for (auto v : e.classes[i]) {
                    if (owner[v] >= 0)
                        return false;
                    owner[v] = static_cast<int>(i);
                }
            }
            for (auto [u, v] : g.edges())
                if (owner[u] >= 0 && owner[v] >= 0 && owner[u] != owner[v])
                    return false;
            return true;
        }

        auto ramsey_cell(std::size_t n, const char * spec_text, std::size_t expected, bool good, const Options & o,
                Tally & tally, std::ostringstream & notes)
        {
            auto spec = MultipartiteSpec::parse(spec_text);
            RamseyOptions ro;
            ro.jobs = o.jobs;
            auto report = exact_ramsey(n, spec, ro);
            ++tally.checked;
            auto cell = "R(C_" + std::to_string(n) + "," + spec.to_string() + ")";
            notes << " " << cell << "=" << (report.value ? std::to_string(*report.value) : "open");
            if (report.value != expected) {
                tally.fail(cell + " expected " + std::to_string(expected));
                return;
            }
            if (report.formula != spec.goodness_bound(n) || report.goodness != good) {
                tally.fail(cell + " goodness flag wrong");
                return;
            }
            if (! report.lower_witness || report.lower_witness->order() != expected - 1
                    || ! is_ramsey_witness(*report.lower_witness, n, spec)) {
                tally.fail(cell + " lower witness does not verify");
                return;
            }
            auto reached = std::any_of(report.levels.begin(), report.levels.end(),
                    [&](const LevelStats & l) { return l.order == expected && l.witnesses == 0; });
            if (! reached) {
                tally.fail(cell + " no exhausted level at the value");
                return;
            }
            // second route: every labelled graph, small enough cells only
            if (expected <= 7) {
                auto brute = oracle::ramsey_by_enumeration(n, spec, 7);
                notes << " (enumeration " << (brute ? std::to_string(*brute) : "open") << ")";
                if (brute != report.value)
                    tally.fail(cell + " full enumeration disagrees");
            }
        }
    }

    auto burr_suite(const Options &) -> CriterionResult
    {
        return timed("1", "burr construction suite", [](CriterionResult & r) {
            Tally tally;
            std::vector<MultipartiteSpec> specs;
            for (std::size_t k = 1; k <= 4; ++k) {
                std::vector<std::size_t> prefix;
                specs_with(k, 3, prefix, specs);
            }
            for (std::size_t n = 4; n <= 12; ++n)
                for (auto & spec : specs) {
                    if (n < spec.sigma())
                        continue;
                    ++tally.checked;
                    auto g = burr_graph(n, spec);
                    auto order = (n - 1) * (spec.chi() - 1) + spec.sigma() - 1;
                    if (g.order() != order)
                        tally.fail("order of " + spec.to_string() + " n=" + std::to_string(n));
                    else if (! is_ramsey_witness(g, n, spec))
                        tally.fail("not a witness: " + spec.to_string() + " n=" + std::to_string(n));
                }
            r.passed = tally.failed == 0 && tally.checked == 9 * specs.size();
            r.detail = tally.summary("(n, spec) cells are exact witnesses of order (n-1)(k-1)+sigma-1");
        });
    }

    auto golden_ramsey(const Options & o) -> CriterionResult
    {
        return timed("2", "exact Ramsey golden values", [&](CriterionResult & r) {
            Tally tally;
            std::ostringstream notes;
            ramsey_cell(4, "K_3", 7, true, o, tally, notes);
            ramsey_cell(5, "K_3", 9, true, o, tally, notes);
            ramsey_cell(3, "K_3", 6, false, o, tally, notes);
            ramsey_cell(4, "K_{2,2}", 6, false, o, tally, notes);
            r.passed = tally.failed == 0;
            r.detail = tally.summary("cells match;" + notes.str());
        });
    }

    auto extended_ramsey(const Options & o) -> CriterionResult
    {
        return timed("2x", "exact Ramsey extended value", [&](CriterionResult & r) {
            Tally tally;
            std::ostringstream notes;
            ramsey_cell(6, "K_3", 11, true, o, tally, notes);
            r.passed = tally.failed == 0;
            r.detail = tally.summary("cells match;" + notes.str());
        });
    }

    auto route_law(const Options & o) -> CriterionResult
    {
        return timed("3", "adjuster route law", [&](CriterionResult & r) {
            gen::Rng rng(o.seed ^ 0x3);
            gen::AdjusterShape shape;
            Tally tally;
            for (std::size_t trial = 0; trial < 1200; ++trial) {
                auto rr = trial % 7;
                auto planted = gen::random_adjuster(rr, shape, rng);
                auto & adj = planted.adj;
                ++tally.checked;
                auto tag = "trial " + std::to_string(trial) + " r=" + std::to_string(rr);
                if (! validate(planted.g, adj).ok()) {
                    tally.fail(tag + ": generated adjuster rejected");
                    continue;
                }
                auto len = expected_length(adj);
                if (adj.length() != len) {
                    tally.fail(tag + ": length " + std::to_string(adj.length()) + " != " + std::to_string(len));
                    continue;
                }
                auto all = routes(adj);
                if (all.size() != (std::size_t{1} << rr)) {
                    tally.fail(tag + ": wrong route count");
                    continue;
                }
                std::set<std::size_t> lengths;
                bool cycles = true;
                for (auto & route : all) {
                    lengths.insert(route.cycle.length());
                    cycles = cycles && cycle_ok(planted.g, route.cycle, route.cycle.length());
                }
                std::set<std::size_t> want;
                for (std::size_t x = len - rr; x <= len; ++x)
                    want.insert(x);
                if (! cycles)
                    tally.fail(tag + ": a route is not a host cycle");
                else if (lengths != want)
                    tally.fail(tag + ": route lengths are not the r+1 integers below the length");
            }
            r.passed = tally.failed == 0 && tally.checked >= 1000;
            r.detail = tally.summary("adjusters with r <= 6 obey the route law");
        });
    }

    auto merge_bounds(const Options & o) -> CriterionResult
    {
        return timed("4", "merge bounds", [&](CriterionResult & r) {
            gen::Rng rng(o.seed ^ 0x4);
            Tally plain, efficient;
            const double eps = 1e-9;

            gen::AdjusterShape wide;
            wide.max_connector = 12;
            wide.loop_max = 60;
            while (plain.checked < 250) {
                auto r1 = std::uniform_int_distribution<std::size_t>(0, 5)(rng);
                auto r2 = std::uniform_int_distribution<std::size_t>(0, 5)(rng);
                auto count = std::uniform_int_distribution<std::size_t>(17, 28)(rng);
                auto t = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
                auto inst = gen::planted_merge(r1, r2, count, t, false, 0, wide, rng);
                if (inst.paths.size() < 17)
                    continue;
                ++plain.checked;
                auto tag = "instance " + std::to_string(plain.checked);
                try {
                    auto merged = merge_adjusters(inst.g, inst.f1, inst.f2, inst.paths);
                    auto s = static_cast<double>(inst.paths.size());
                    auto rs = static_cast<double>(inst.f1.r() + inst.f2.r());
                    auto ls = static_cast<double>(expected_length(inst.f1) + expected_length(inst.f2));
                    auto shrink = 1 - 4 / std::sqrt(s);
                    auto rm = static_cast<double>(merged.r()), lm = static_cast<double>(expected_length(merged));
                    VertexSet allowed = all_vertices(inst.g.order(), inst.f1) | all_vertices(inst.g.order(), inst.f2);
                    for (auto & p : inst.paths)
                        for (auto v : p.vertices)
                            allowed.insert(v);
                    if (! validate(inst.g, merged).ok())
                        plain.fail(tag + ": merged adjuster invalid");
                    else if (! all_vertices(inst.g.order(), merged).is_subset_of(allowed))
                        plain.fail(tag + ": merged adjuster leaves F1 + F2 + paths");
                    else if (rm < rs * shrink - 4 - eps || rm > rs)
                        plain.fail(tag + ": r outside its window");
                    else if (lm < ls * shrink - eps || lm > ls + 2.0 * static_cast<double>(inst.t) + eps)
                        plain.fail(tag + ": length outside its window");
                }
                catch (const std::exception & e) {
                    plain.fail(tag + ": " + e.what());
                }
            }

            gen::AdjusterShape dense_shape;
            dense_shape.max_connector = 6;
            dense_shape.loop_max = 30;
            dense_shape.noise = 2;
            while (efficient.checked < 250) {
                auto r1 = std::uniform_int_distribution<std::size_t>(0, 4)(rng);
                auto r2 = std::uniform_int_distribution<std::size_t>(0, 4)(rng);
                auto t = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
                auto density = std::uniform_real_distribution<double>(0.75, 0.97)(rng);
                auto inst = gen::planted_merge(r1, r2, 2, t, true, density, dense_shape, rng);
                if (inst.paths.size() < 2)
                    continue;
                ++efficient.checked;
                auto tag = "efficient " + std::to_string(efficient.checked);
                try {
                    auto merged = merge_efficient(inst.g, inst.f1, inst.f2, inst.paths[0], inst.paths[1], inst.m1, inst.m2);
                    auto loss = 2.0 * static_cast<double>(inst.m1 + inst.m2);
                    auto rs = static_cast<double>(inst.f1.r() + inst.f2.r());
                    auto ls = static_cast<double>(expected_length(inst.f1) + expected_length(inst.f2));
                    auto rm = static_cast<double>(merged.r()), lm = static_cast<double>(expected_length(merged));
                    if (! validate(inst.g, merged).ok())
                        efficient.fail(tag + ": merged adjuster invalid");
                    else if (rm < rs - loss - eps)
                        efficient.fail(tag + ": r below r1+r2-2(m1+m2)");
                    else if (lm < ls - loss - eps || lm > ls + 2.0 * static_cast<double>(inst.t) + eps)
                        efficient.fail(tag + ": length " + std::to_string(expected_length(merged)) + " outside ["
                                + std::to_string(ls - loss) + ", " + std::to_string(ls + 2.0 * static_cast<double>(inst.t)) + "]");
                }
                catch (const std::exception & e) {
                    efficient.fail(tag + ": " + e.what());
                }
            }
            r.passed = plain.failed == 0 && efficient.failed == 0 && plain.checked >= 200 && efficient.checked >= 200;
            r.detail = plain.summary("merge_adjusters instances within bounds") + " | "
                + efficient.summary("merge_efficient instances within bounds");
        });
    }

    auto navigation_oracles(const Options & o) -> CriterionResult
    {
        return timed("5", "navigation oracles", [&](CriterionResult & r) {
            gen::Rng rng(o.seed ^ 0x5);
            Tally odd, menger;
            while (odd.checked < 500) {
                auto n = std::uniform_int_distribution<std::size_t>(3, 60)(rng);
                auto p = std::uniform_real_distribution<double>(0.02, 0.5)(rng);
                auto g = gen::random_graph(n, p, rng);
                auto want = oracle::shortest_odd_cycle_length(g);
                if (want == 0)
                    continue;
                ++odd.checked;
                auto c = shortest_odd_cycle(g);
                if (c.length() != want || ! cycle_ok(g, c, want))
                    odd.fail("order " + std::to_string(n) + ": got " + std::to_string(c.length()) + ", oracle "
                            + std::to_string(want));
            }
            while (menger.checked < 500) {
                auto n = std::uniform_int_distribution<std::size_t>(4, 40)(rng);
                auto p = std::uniform_real_distribution<double>(0.03, 0.4)(rng);
                auto g = gen::random_graph(n, p, rng);
                std::vector<Vertex> order(n);
                for (std::size_t i = 0; i < n; ++i)
                    order[i] = static_cast<Vertex>(i);
                std::shuffle(order.begin(), order.end(), rng);
                auto s1 = std::uniform_int_distribution<std::size_t>(1, std::min<std::size_t>(5, n / 2))(rng);
                auto s2 = std::uniform_int_distribution<std::size_t>(1, std::min<std::size_t>(5, n / 2))(rng);
                VertexSet b1(n), b2(n);
                for (std::size_t i = 0; i < s1; ++i)
                    b1.insert(order[i]);
                for (std::size_t i = s1; i < s1 + s2; ++i)
                    b2.insert(order[i]);
                VertexSet within = g.vertices();
                if (rng() % 2)
                    for (std::size_t i = s1 + s2; i < n; ++i)
                        if (rng() % 4 == 0)
                            within.erase(order[i]);
                auto count = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
                ++menger.checked;
                auto tag = "graph " + std::to_string(menger.checked);
                auto flow = oracle::max_disjoint_paths(g, b1, b2, within);
                auto got = disjoint_paths(g, b1, b2, count, within);
                if (got.found()) {
                    bool good = got.paths.size() == count && flow >= count;
                    VertexSet used(n);
                    for (auto & path : got.paths) {
                        good = good && is_path_in(g, path) && b1.contains(path.front()) && b2.contains(path.back());
                        for (std::size_t i = 0; i < path.vertices.size(); ++i) {
                            auto v = path.vertices[i];
                            good = good && within.contains(v) && ! used.contains(v);
                            if (i > 0 && i + 1 < path.vertices.size())
                                good = good && ! b1.contains(v) && ! b2.contains(v);
                            used.insert(v);
                        }
                    }
                    if (! good)
                        menger.fail(tag + ": paths invalid or more than the max flow " + std::to_string(flow));
                }
                else {
                    auto & cut = *got.cut;
                    if (flow >= count)
                        menger.fail(tag + ": cut reported but max flow is " + std::to_string(flow));
                    else if (cut.count() != flow || got.max_flow != flow)
                        menger.fail(tag + ": cut size " + std::to_string(cut.count()) + " vs max flow " + std::to_string(flow));
                    else if (! oracle::separates(g, b1, b2, within, cut))
                        menger.fail(tag + ": cut does not separate");
                }
            }
            r.passed = odd.failed == 0 && menger.failed == 0;
            r.detail = odd.summary("shortest odd cycles agree with parity BFS") + " | "
                + menger.summary("disjoint_paths results agree with push-relabel");
        });
    }

    auto expansion_suite(const Options & o) -> CriterionResult
    {
        return timed("6", "expander extraction on G(N,1/2)", [&](CriterionResult & r) {
            auto cfg = ConstantsLedger::desk();
            std::ostringstream notes;
            bool all = true;
            for (std::size_t big : {200u, 500u, 1000u}) {
                auto k = static_cast<std::size_t>(std::floor(2 * std::log2(static_cast<double>(big)))) + 1;
                MultipartiteSpec spec(std::vector<std::size_t>(k, 1));
                std::size_t succeeded = 0, expanding = 0, sandwiched = 0;
                for (std::uint64_t seed = 0; seed < 100; ++seed) {
                    gen::Rng rng(o.seed + 1000 * big + seed);
                    auto g = gen::random_graph(big, 0.5, rng);
                    auto p = ExtractionParams::fitted(cfg, big, spec);
                    p.search.seed = seed;
                    auto res = extract_expander(g, spec, p);
                    if (! res.ok())
                        continue;
                    ++succeeded;
                    auto & f = res.value();
                    auto sub = g.induced(f.vertices);
                    auto verdict = check_expansion(sub, sub.vertices(), f.params, 8, ExpansionOptions{});
                    if (verdict.status == ExpansionStatus::verified && verdict.verified_cap >= 8)
                        ++expanding;
                    auto h = static_cast<double>(f.spec.order());
                    auto upper = p.M * h * std::log(std::max<double>(2, static_cast<double>(f.spec.chi())));
                    auto lower = upper - h / static_cast<double>(f.spec.chi());
                    auto size = static_cast<double>(f.vertices.count());
                    if (f.spec.chi() >= 2 && lower - 1e-9 <= size && size <= upper + 1e-9)
                        ++sandwiched;
                }
                notes << " N=" << big << ": " << succeeded << "/100 extracted, " << expanding << " expand to cap 8, "
                      << sandwiched << " sandwiched;";
                all = all && succeeded >= 95 && expanding == succeeded && sandwiched == succeeded;
            }
            r.passed = all;
            r.detail = notes.str().substr(1);
        });
    }

    auto pipeline_smoke(const Options & o) -> CriterionResult
    {
        return timed("7", "embed_cycle pipeline smoke", [&](CriterionResult & r) {
            auto cfg = ConstantsLedger::desk();
            cfg.seed = o.seed;
            Tally tally;

            struct Case { std::size_t order, n; const char * spec; };
            for (auto c : {Case{10, 5, "K_3"}, Case{12, 12, "K_3"}, Case{40, 17, "K_{1,2,2}"}, Case{60, 30, "K_{1,1}"}}) {
                ++tally.checked;
                auto spec = MultipartiteSpec::parse(c.spec);
                auto res = embed_cycle(Graph::complete(c.order), spec, c.n, cfg);
                if (res.outcome != EmbedOutcome::cycle_found || ! res.cycle
                        || ! cycle_ok(Graph::complete(c.order), *res.cycle, c.n))
                    tally.fail("K_" + std::to_string(c.order) + " n=" + std::to_string(c.n) + ": " + to_string(res.outcome));
            }

            struct Empty { std::size_t n; const char * spec; };
            for (auto c : {Empty{5, "K_3"}, Empty{8, "K_{2,3}"}, Empty{6, "K_{1,2,2,3}"}}) {
                ++tally.checked;
                auto spec = MultipartiteSpec::parse(c.spec);
                Graph g(spec.goodness_bound(c.n));
                auto res = embed_cycle(g, spec, c.n, cfg);
                if (res.outcome != EmbedOutcome::complement_contains || ! res.embedding
                        || ! embedding_ok(g, spec, *res.embedding))
                    tally.fail("empty graph for " + spec.to_string() + ": " + to_string(res.outcome));
            }

            struct Extremal { std::size_t n; const char * spec; std::size_t value; };
            for (auto c : {Extremal{4, "K_3", 7}, Extremal{5, "K_3", 9}, Extremal{4, "K_{2,2}", 6}}) {
                ++tally.checked;
                auto spec = MultipartiteSpec::parse(c.spec);
                auto g = burr_graph(c.n, spec);
                auto res = embed_cycle(g, spec, c.n, cfg);
                RamseyOptions ro;
                ro.jobs = o.jobs;
                auto report = exact_ramsey(c.n, spec, ro);
                auto tag = "burr " + spec.to_string() + " n=" + std::to_string(c.n);
                if (res.outcome != EmbedOutcome::inconclusive || res.stage != "extremal graph")
                    tally.fail(tag + ": " + to_string(res.outcome) + " at " + res.stage);
                else if (report.value != c.value || g.order() >= *report.value)
                    tally.fail(tag + ": oracle value disagrees");
                else if (! is_ramsey_witness(g, c.n, spec))
                    tally.fail(tag + ": a witness exists although the oracle says none");
            }
            r.passed = tally.failed == 0;
            r.detail = tally.summary("pipeline cases return the expected verified outcome");
        });
    }

    auto monotone_suite(const Options & o) -> CriterionResult
    {
        return timed("8", "monotone subsequences", [&](CriterionResult & r) {
            gen::Rng rng(o.seed ^ 0x8);
            Tally tally;
            for (std::size_t len = 1; len <= 10; ++len) {
                auto size = (len - 1) * (len - 1) + 1;
                for (std::size_t trial = 0; trial < 10'000; ++trial) {
                    long long range = trial % 2 ? 1'000'000 : static_cast<long long>(len) + 1;
                    std::uniform_int_distribution<long long> value(-range, range);
                    std::vector<long long> seq(size);
                    for (auto & x : seq)
                        x = value(rng);
                    ++tally.checked;
                    auto idx = monotone_subsequence(seq, len);
                    if (idx.size() < len || ! oracle::is_monotone(seq, idx))
                        tally.fail("r=" + std::to_string(len) + " trial " + std::to_string(trial));
                }
            }
            r.passed = tally.failed == 0;
            r.detail = tally.summary("sequences of length (r-1)^2+1 yield a monotone run of length r");
        });
    }

    auto run_all(const Options & o) -> std::vector<CriterionResult>
    {
        std::vector<CriterionResult (*)(const Options &)> suite{
            burr_suite, golden_ramsey, route_law, merge_bounds, navigation_oracles, expansion_suite, pipeline_smoke,
            monotone_suite};
        if (o.extended)
            suite.insert(suite.begin() + 2, extended_ramsey);
        std::vector<CriterionResult> out;
        for (auto run : suite) {
            out.push_back(run(o));
            if (o.progress)
                *o.progress << format(out.back()) << std::endl;
        }
        return out;
    }

    auto format(const CriterionResult & r) -> std::string
    {
        std::ostringstream out;
        out << (r.passed ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << ": " << r.detail << " ("
            << std::fixed << std::setprecision(2) << r.seconds << " s)";
        return out.str();
    }
}
