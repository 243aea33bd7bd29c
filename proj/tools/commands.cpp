#include "commands.hpp"

#include "acceptance.hpp"

#include <goodness/adjuster.hpp>
#include <goodness/embedding.hpp>
#include <goodness/errors.hpp>
#include <goodness/expansion.hpp>
#include <goodness/graph_io.hpp>
#include <goodness/multipartite.hpp>
#include <goodness/navigation.hpp>
#include <goodness/ramsey.hpp>

#include <algorithm>
#include <iostream>
#include <set>

namespace goodness::cli
{
    namespace
    {
        auto route_range(const Adjuster & adj) -> nlohmann::json
        {
            // every route length from length - r up to length is realised
            return {{"min", adj.length() - adj.r()}, {"max", adj.length()}};
        }

        auto params_json(const ExpansionParams & p) -> nlohmann::json
        {
            return {{"delta", p.delta}, {"beta", p.beta}, {"d", p.d}, {"k", p.k}, {"divisor", p.divisor}};
        }

        auto failure_json(const FailureReport & f) -> nlohmann::json
        {
            return {{"status", "failed"}, {"stage", f.stage}, {"message", f.message}, {"trace", f.trace}};
        }

        auto to_size(const std::string & text) -> std::size_t
        {
            std::size_t used = 0;
            unsigned long long v = 0;
            try {
                v = std::stoull(text, &used);
            }
            catch (const std::exception &) {
                used = 0;
            }
            if (used != text.size() || text.empty() || text.front() == '-')
                throw InputError("expected a non-negative integer, got '" + text + "'");
            return v;
        }
    }

    auto parse_orders(const std::vector<std::string> & items) -> std::vector<std::size_t>
    {
        std::set<std::size_t> out;
        for (auto & item : items) {
            std::size_t start = 0;
            while (start <= item.size()) {
                auto comma = item.find(',', start);
                auto piece = item.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
                auto dots = piece.find("..");
                if (dots == std::string::npos)
                    out.insert(to_size(piece));
                else {
                    auto lo = to_size(piece.substr(0, dots)), hi = to_size(piece.substr(dots + 2));
                    if (lo > hi)
                        throw InputError("empty range '" + piece + "'");
                    for (auto v = lo; v <= hi; ++v)
                        out.insert(v);
                }
                if (comma == std::string::npos)
                    break;
                start = comma + 1;
            }
        }
        return {out.begin(), out.end()};
    }

    auto run_burr(RunContext & ctx, const BurrArgs & a) -> int
    {
        auto spec = MultipartiteSpec::parse(a.spec);
        auto g = burr_graph(a.n, spec);
        bool verified = false;
        std::string note;
        try {
            verified = is_ramsey_witness(g, a.n, spec);
            note = verified ? "witness verified" : "NOT a witness";
        }
        catch (const SizeError & e) {
            note = std::string("not verified: ") + e.what();
        }
        auto expected = (a.n - 1) * (spec.chi() - 1) + spec.sigma() - 1;
        nlohmann::json j{{"n", a.n}, {"spec", spec.to_string()}, {"order", g.order()}, {"expected_order", expected},
            {"witness", verified}, {"graph6", to_graph6(g)}, {"graph", to_json(g)}};

        if (ctx.to_stdout())
            ctx.emit("burr", a.format == "json" ? j.dump(2) + "\n" : to_graph6(g) + "\n");
        else {
            ctx.emit("burr.g6", to_graph6(g) + "\n");
            ctx.emit_json("burr.json", j);
        }
        ctx.note("witness", verified);
        std::cerr << "burr: " << spec.chi() - 1 << " x K_" << a.n - 1 << " + K_" << spec.sigma() - 1 << " on "
                  << g.order() << " vertices, " << note << '\n';
        return verified && g.order() == expected ? 0 : 1;
    }

    auto run_check(RunContext & ctx, const CheckArgs & a) -> int
    {
        auto spec = MultipartiteSpec::parse(a.spec);
        auto g = ctx.load_graph(a.graph);
        auto witness = is_ramsey_witness(g, a.n, spec);
        nlohmann::json j{{"order", g.order()}, {"n", a.n}, {"spec", spec.to_string()}, {"witness", witness}};
        std::string reason;
        if (! witness) {
            auto copy = complement_contains(g, spec);
            if (copy.embedding) {
                j["complement_copy"] = to_json(*copy.embedding);
                reason = "complement contains " + spec.to_string();
            }
            else {
                j["contains_cycle"] = true;
                reason = "contains C_" + std::to_string(a.n);
            }
        }
        ctx.emit_json("check.json", j);
        ctx.note("witness", witness);
        std::cerr << "check: " << g.order() << " vertices, witness=" << (witness ? "true" : "false")
                  << (reason.empty() ? "" : " (" + reason + ")") << '\n';
        return witness ? 0 : 1;
    }

    auto run_expand(RunContext & ctx, const ExpandArgs & a) -> int
    {
        auto spec = MultipartiteSpec::parse(a.spec);
        auto g = ctx.load_graph(a.graph);
        auto params = ExtractionParams::fitted(ctx.cfg(), g.order(), spec);
        auto cap = a.cap.value_or(ctx.cfg().expansion_cap);
        auto res = extract_expander(g, spec, params);
        if (! res.ok()) {
            ctx.emit_json("expand.json", failure_json(res.failure()));
            ctx.note("extracted", false);
            std::cerr << "expand: no expander (" << res.failure().stage << ": " << res.failure().message << ")\n";
            return 1;
        }
        auto & f = res.value();
        auto sub = g.induced(f.vertices);
        auto verdict = check_expansion(sub, sub.vertices(), f.params, cap, params.search);
        auto size = static_cast<double>(f.vertices.count());
        bool sandwich = size >= f.lower_bound - 1e-9 && size <= f.upper_bound + 1e-9;
        bool verified = verdict.status == ExpansionStatus::verified && verdict.verified_cap >= cap;

        nlohmann::json j{{"status", "extracted"}, {"order", f.vertices.count()}, {"vertices", to_json(f.vertices)},
            {"spec", f.spec.to_string()}, {"params", params_json(f.params)}, {"M", params.M},
            {"lower_bound", f.lower_bound}, {"upper_bound", f.upper_bound}, {"sandwich", sandwich},
            {"verdict", verdict.to_json()}, {"warnings", f.warnings}, {"trace", f.trace}};
        ctx.emit_json("expand.json", j);
        ctx.note("expansion_verified", verified);
        ctx.note("sandwich", sandwich);
        std::cerr << "expand: F has " << f.vertices.count() << " of " << g.order() << " vertices for "
                  << f.spec.to_string() << ", expansion " << (verified ? "verified" : "NOT verified") << " up to "
                  << verdict.verified_cap << ", size bounds " << (sandwich ? "hold" : "FAIL") << '\n';
        return verified && sandwich ? 0 : 1;
    }

    auto run_adjuster_find(RunContext & ctx, const AdjusterFindArgs & a) -> int
    {
        auto spec = MultipartiteSpec::parse(a.spec);
        auto g = ctx.load_graph(a.graph);
        PipelineOptions options;
        options.target_size = a.target_size;
        nlohmann::json trace = nlohmann::json::array();
        auto res = find_adjuster(g, spec, ctx.cfg(), options, &trace);
        if (! res.ok()) {
            ctx.emit_json("adjuster.json", failure_json(res.failure()));
            ctx.note("found", false);
            std::cerr << "adjuster: none found (" << res.failure().stage << ": " << res.failure().message << ")\n";
            return 1;
        }
        auto & adj = res.value();
        auto report = validate(g, adj);
        nlohmann::json j{{"status", "found"}, {"adjuster", to_json(adj)}, {"valid", report.ok()},
            {"violations", report.violations}, {"routes", route_range(adj)}, {"trace", trace}};
        ctx.emit_json("adjuster.json", j);
        ctx.note("valid", report.ok());
        std::cerr << "adjuster: r = " << adj.r() << ", length " << adj.length() << ", "
                  << (report.ok() ? "re-validated" : "FAILED validation") << '\n';
        return report.ok() ? 0 : 1;
    }

    auto run_adjuster_validate(RunContext & ctx, const AdjusterValidateArgs & a) -> int
    {
        auto g = ctx.load_graph(a.graph);
        auto j_in = ctx.read_json(a.adjuster);
        auto adj = adjuster_from_json(j_in.contains("adjuster") ? j_in["adjuster"] : j_in);
        auto report = validate(g, adj);
        nlohmann::json j{{"valid", report.ok()}, {"violations", report.violations}, {"r", adj.r()}};
        if (report.ok()) {
            j["length"] = adj.length();
            j["routes"] = route_range(adj);
        }
        ctx.emit_json("validate.json", j);
        ctx.note("valid", report.ok());
        std::cerr << "validate: " << (report.ok() ? "valid" : "invalid") << " adjuster with r = " << adj.r();
        for (auto & v : report.violations)
            std::cerr << "\n  " << v;
        std::cerr << '\n';
        return report.ok() ? 0 : 1;
    }

    auto run_adjuster_merge(RunContext & ctx, const AdjusterMergeArgs & a) -> int
    {
        auto g = ctx.load_graph(a.graph);
        auto read = [&](const std::string & path) {
            auto j = ctx.read_json(path);
            return adjuster_from_json(j.contains("adjuster") ? j["adjuster"] : j);
        };
        auto f1 = read(a.first), f2 = read(a.second);
        for (auto * f : {&f1, &f2}) {
            auto report = validate(g, *f);
            if (! report.ok())
                throw InputError("input adjuster is invalid: " + report.violations.front());
        }
        auto count = a.efficient ? std::size_t{2} : a.paths;
        auto dp = disjoint_paths(g, f1.vertex_set(g.order()), f2.vertex_set(g.order()), count);
        if (! dp.found()) {
            ctx.emit_json("merge.json", {{"status", "separated"}, {"max_flow", dp.max_flow}, {"cut", to_json(*dp.cut)}});
            ctx.note("merged", false);
            std::cerr << "merge: only " << dp.max_flow << " disjoint paths between the adjusters, " << count
                      << " needed\n";
            return 1;
        }
        nlohmann::json j{{"status", "merged"}, {"efficient", a.efficient}};
        Adjuster merged;
        if (a.efficient) {
            nlohmann::json trace = nlohmann::json::object();
            merged = merge_efficient(g, f1, f2, dp.paths[0], dp.paths[1], a.m1, a.m2, {}, &trace);
            j["trace"] = trace;
        }
        else {
            MergeStats stats;
            merged = merge_adjusters(g, f1, f2, dp.paths, &stats);
            j["stats"] = {{"s", stats.s}, {"t", stats.t}, {"longest_path", stats.longest_path}, {"pair", stats.pair},
                {"label_class", stats.label_class}, {"trace", stats.trace}};
        }
        auto report = validate(g, merged);
        j["adjuster"] = to_json(merged);
        j["valid"] = report.ok();
        j["violations"] = report.violations;
        j["inputs"] = {{"r1", f1.r()}, {"r2", f2.r()}, {"l1", f1.length()}, {"l2", f2.length()}};
        ctx.emit_json("merge.json", j);
        ctx.note("valid", report.ok());
        std::cerr << "merge: r " << f1.r() << " + " << f2.r() << " -> " << merged.r() << ", length " << f1.length()
                  << " + " << f2.length() << " -> " << merged.length() << ", "
                  << (report.ok() ? "re-validated" : "FAILED validation") << '\n';
        return report.ok() ? 0 : 1;
    }

    auto run_embed(RunContext & ctx, const EmbedArgs & a) -> int
    {
        auto spec = MultipartiteSpec::parse(a.spec);
        auto g = ctx.load_graph(a.graph);
        auto result = embed_cycle(g, spec, a.n, ctx.cfg());
        bool verified = false;
        if (result.cycle)
            verified = is_cycle_in(g, *result.cycle) && result.cycle->length() == a.n;
        else if (result.embedding)
            verified = verify_embedding(g, spec, *result.embedding);
        auto j = to_json(result);
        j["verified"] = verified;
        ctx.emit_json("embed.json", j);
        ctx.note("outcome", to_string(result.outcome));
        ctx.note("verified", verified);
        std::cerr << "embed: " << to_string(result.outcome) << " at stage " << result.stage;
        if (result.outcome != EmbedOutcome::inconclusive)
            std::cerr << (verified ? ", witness re-verified" : ", witness FAILED re-verification");
        std::cerr << '\n';
        return verified ? 0 : 1;
    }

    auto run_ramsey(RunContext & ctx, const RamseyArgs & a) -> int
    {
        auto ns = parse_orders(a.n);
        std::vector<MultipartiteSpec> specs;
        for (auto & s : a.specs)
            specs.push_back(MultipartiteSpec::parse(s));
        RamseyOptions options;
        options.max_order = a.max_order;
        options.allow_large = a.allow_large;
        options.jobs = ctx.jobs();
        if (! a.checkpoint.empty())
            options.checkpoint_dir = a.checkpoint;

        auto table = goodness_table(ns, specs, options);
        std::size_t closed = 0, verified = 0;
        auto reports = nlohmann::json::array();
        for (auto & r : table) {
            closed += r.value ? 1 : 0;
            if (r.lower_witness && is_ramsey_witness(*r.lower_witness, r.n, r.spec)
                    && r.lower_witness->order() + 1 == r.lower_bound)
                ++verified;
            reports.push_back(r.to_json(false));
            std::cerr << "ramsey: R(C_" << r.n << ", " << r.spec.to_string() << ") ";
            if (r.value)
                std::cerr << "= " << *r.value << ", formula " << r.formula << ", goodness "
                          << (*r.goodness ? "holds" : "fails") << '\n';
            else
                std::cerr << "> " << a.max_order << " (open above, lower bound " << r.lower_bound << ")\n";
        }

        bool single = table.size() == 1;
        if (ctx.to_stdout())
            ctx.emit("ramsey", a.csv ? table_csv(table, false) : (single ? reports[0] : reports).dump(2) + "\n");
        else {
            ctx.emit_json("ramsey.json", single ? reports[0] : reports);
            ctx.emit("ramsey.csv", table_csv(table, false));
        }
        ctx.note("cells", table.size());
        ctx.note("closed", closed);
        ctx.note("lower_witnesses_verified", verified);
        return closed == table.size() && verified == table.size() ? 0 : 1;
    }

    auto run_selftest(RunContext & ctx, const SelftestArgs & a) -> int
    {
        acceptance::Options options;
        options.jobs = ctx.jobs();
        if (a.seed)
            options.seed = *a.seed;
        options.extended = a.extended;
        options.progress = &std::cerr;
        auto results = acceptance::run_all(options);
        auto j = nlohmann::json::array();
        std::size_t passed = 0;
        for (auto & r : results) {
            passed += r.passed ? 1 : 0;
            j.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
        }
        ctx.emit_json("selftest.json", j);
        ctx.note("passed", passed);
        ctx.note("criteria", results.size());
        std::cerr << "selftest: " << passed << "/" << results.size() << " criteria passed\n";
        return passed == results.size() ? 0 : 1;
    }
}
