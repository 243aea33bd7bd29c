#include "commands.hpp"
#include "run_context.hpp"

#include <goodness/errors.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <functional>
#include <iostream>

using namespace goodness;
using namespace goodness::cli;

namespace
{
    constexpr int exit_usage = 2;

    void add_graph_source(CLI::App * app, GraphSource & source)
    {
        app->add_option("--graph", source.path, "graph6 or .json graph file, - for stdin");
        app->add_option("--gnp", source.gnp, "use a G(N, p) random graph on N vertices, seeded by --seed");
        app->add_option("--p", source.p, "edge probability for --gnp")->capture_default_str();
    }
}

int main(int argc, char ** argv)
{
    CLI::App app{"Cycles versus complete multipartite graphs: constructions, verifiers and exact search"};
    app.require_subcommand(1);
    app.fallthrough();

    CommonFlags flags;
    app.add_option("--cfg", flags.cfg, "constants profile: paper, desk, or a key = value file")->capture_default_str();
    app.add_option("--set", flags.overrides, "override one constant, key=value (repeatable)");
    app.add_option("--seed", flags.seed, "random seed");
    app.add_option("--budget-nodes", flags.budget_nodes, "search node budget");
    app.add_option("--jobs", flags.jobs, "worker threads (default: available cores)");
    app.add_option("--out", flags.out, "output directory, or - for stdout")->capture_default_str();
    app.add_option("--manifest", flags.manifest, "where to write the run manifest");

    std::function<int(RunContext &)> action;
    std::string command;
    auto bind = [&](CLI::App * sub, std::string name, auto run, auto & args) {
        sub->callback([&action, &command, name, run, &args] {
            command = name;
            action = [run, &args](RunContext & ctx) { return run(ctx, args); };
        });
    };

    BurrArgs burr;
    auto * burr_cmd = app.add_subcommand("burr", "emit the disjoint-cliques lower-bound graph and verify it");
    burr_cmd->add_option("--n", burr.n, "cycle length")->required()->check(CLI::PositiveNumber);
    burr_cmd->add_option("--H", burr.spec, "target, e.g. K_3 or K_{2,3}")->required();
    burr_cmd->add_option("--format", burr.format, "stdout format")->check(CLI::IsMember({"graph6", "json"}))
        ->capture_default_str();
    bind(burr_cmd, "burr", run_burr, burr);

    CheckArgs check;
    auto * check_cmd = app.add_subcommand("check", "decide exhaustively whether a graph is a Ramsey witness");
    add_graph_source(check_cmd, check.graph);
    check_cmd->add_option("--n", check.n, "cycle length")->required()->check(CLI::PositiveNumber);
    check_cmd->add_option("--H", check.spec, "target")->required();
    bind(check_cmd, "check", run_check, check);

    ExpandArgs expand;
    auto * expand_cmd = app.add_subcommand("expand", "extract an expanding subgraph and re-check its expansion");
    add_graph_source(expand_cmd, expand.graph);
    expand_cmd->add_option("--H", expand.spec, "target whose complement-freeness is assumed")->required();
    expand_cmd->add_option("--cap", expand.cap, "exhaustive expansion check up to this set size");
    bind(expand_cmd, "expand", run_expand, expand);

    auto * adjuster_cmd = app.add_subcommand("adjuster", "find, validate or merge adjusters");
    adjuster_cmd->require_subcommand(1);
    AdjusterFindArgs find;
    auto * find_cmd = adjuster_cmd->add_subcommand("find", "build an adjuster inside an extracted expander");
    add_graph_source(find_cmd, find.graph);
    find_cmd->add_option("--H", find.spec, "target")->required();
    find_cmd->add_option("--target-size", find.target_size, "stop growing once the adjuster has this many vertices");
    bind(find_cmd, "adjuster find", run_adjuster_find, find);

    AdjusterValidateArgs check_adj;
    auto * validate_cmd = adjuster_cmd->add_subcommand("validate", "check an adjuster JSON file against a graph");
    add_graph_source(validate_cmd, check_adj.graph);
    validate_cmd->add_option("--adjuster", check_adj.adjuster, "adjuster JSON")->required();
    bind(validate_cmd, "adjuster validate", run_adjuster_validate, check_adj);

    AdjusterMergeArgs merge;
    auto * merge_cmd = adjuster_cmd->add_subcommand("merge", "merge two disjoint adjusters along disjoint paths");
    add_graph_source(merge_cmd, merge.graph);
    merge_cmd->add_option("--first", merge.first, "first adjuster JSON")->required();
    merge_cmd->add_option("--second", merge.second, "second adjuster JSON")->required();
    merge_cmd->add_option("--paths", merge.paths, "number of disjoint paths to route (at least 17)")
        ->check(CLI::Range(17, 1 << 20))->capture_default_str();
    merge_cmd->add_flag("--efficient", merge.efficient, "two-path merge for K_{m1,m2}-free complements");
    merge_cmd->add_option("--m1", merge.m1, "smaller part size for --efficient")->capture_default_str();
    merge_cmd->add_option("--m2", merge.m2, "larger part size for --efficient")->capture_default_str();
    bind(merge_cmd, "adjuster merge", run_adjuster_merge, merge);

    EmbedArgs embed;
    auto * embed_cmd = app.add_subcommand("embed", "find C_n in the graph or the target in its complement");
    add_graph_source(embed_cmd, embed.graph);
    embed_cmd->add_option("--n", embed.n, "cycle length")->required()->check(CLI::PositiveNumber);
    embed_cmd->add_option("--H", embed.spec, "target")->required();
    bind(embed_cmd, "embed", run_embed, embed);

    RamseyArgs ramsey;
    auto * ramsey_cmd = app.add_subcommand("ramsey", "exact R(C_n, H) by exhaustive search; several cells give a table");
    ramsey_cmd->add_option("--n", ramsey.n, "cycle lengths: 5, 4..7 or 4,6")->required();
    ramsey_cmd->add_option("--H", ramsey.specs, "targets (repeatable)")->required();
    ramsey_cmd->add_option("--max-order", ramsey.max_order, "largest order searched")->capture_default_str();
    ramsey_cmd->add_flag("--allow-large", ramsey.allow_large, "lift the 11-vertex guard");
    ramsey_cmd->add_option("--checkpoint", ramsey.checkpoint, "directory for level_<N>.json checkpoints");
    ramsey_cmd->add_flag("--csv", ramsey.csv, "CSV instead of JSON on stdout");
    bind(ramsey_cmd, "ramsey", run_ramsey, ramsey);

    SelftestArgs selftest;
    auto * selftest_cmd = app.add_subcommand("selftest", "run the acceptance suite");
    selftest_cmd->add_flag("--no-extended{false}", selftest.extended, "skip R(C_6, K_3)");
    bind(selftest_cmd, "selftest", run_selftest, selftest);

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp & e) {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp & e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError & e) {
        app.exit(e);
        return exit_usage;
    }
    if (! action) {
        std::cerr << app.help();
        return exit_usage;
    }
    selftest.seed = flags.seed;

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        RunContext ctx(command, args, flags);
        int code = 1;
        try {
            code = action(ctx);
        }
        catch (const InputError & e) {
            std::cerr << "error: " << e.what() << '\n';
            ctx.finish(exit_usage);
            return exit_usage;
        }
        catch (const std::exception & e) {
            std::cerr << command << ": " << e.what() << '\n';
            ctx.finish(1);
            return 1;
        }
        ctx.finish(code);
        return code;
    }
    catch (const InputError & e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const std::exception & e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
