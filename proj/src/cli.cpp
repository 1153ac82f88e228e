#include "opk/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "opk/check_harness.hpp"
#include "opk/errors.hpp"
#include "opk/gadgets.hpp"
#include "opk/json_io.hpp"
#include "opk/kernelize.hpp"
#include "opk/oracle.hpp"
#include "opk/p2.hpp"

namespace opk {

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitParse = 2;
constexpr int kExitBudget = 3;

struct Budgets {
    OracleBudget oracle;
    KernelBudgets kernels;
};

Budgets budgets_from_env() {
    Budgets b;
    if (const char* env = std::getenv("OPK_BUDGET")) {
        const long long value = std::atoll(env);
        if (value > 0) {
            b.oracle.enum_budget.max_nodes = value;
            b.oracle.max_catalog = value;
            b.kernels.enum_budget.max_nodes = value;
        }
    }
    return b;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open \"" + path + "\"");
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) throw ParseError("malformed JSON in \"" + path + "\"");
    return j;
}

void write_output(const json& j, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << j.dump(2) << "\n";
        return;
    }
    std::ofstream file(path);
    if (!file) throw ParseError("cannot write \"" + path + "\"");
    file << j.dump(2) << "\n";
}

// `solve` accepts the pseudo-variant "p2-membership" (a graph instance with
// an implicit {P2} family) and routes it to the polynomial solver.
int cmd_solve(const std::string& input, const std::string& output, std::ostream& out) {
    const Budgets budgets = budgets_from_env();
    json raw = read_json_file(input);
    json result;
    if (raw.is_object() && raw.value("kind", "") == "graph" &&
        raw.value("variant", "") == "p2-membership") {
        raw["variant"] = "vertex-membership";
        if (!raw.contains("family") || raw["family"].empty())
            raw["family"] = json::array({json{{"n", 2}, {"edges", json::array({json::array({0, 1})})}}});
        ParsedInstance inst = parse_instance(raw);
        auto sol = solve_p2_membership(inst.graph->g, inst.graph->t, inst.graph->k);
        result["decision"] = sol ? "yes" : "no";
        result["witness"] = sol ? serialize_solution(*inst.graph, *sol) : json(nullptr);
    } else {
        ParsedInstance inst = parse_instance(raw);
        if (inst.is_set()) {
            auto sol = solve_set_exact(*inst.set, budgets.oracle);
            result["decision"] = sol ? "yes" : "no";
            result["witness"] = sol ? serialize_solution(*inst.set, *sol) : json(nullptr);
        } else {
            auto sol = solve_graph_exact(*inst.graph, budgets.oracle);
            result["decision"] = sol ? "yes" : "no";
            result["witness"] = sol ? serialize_solution(*inst.graph, *sol) : json(nullptr);
        }
    }
    write_output(result, output, out);
    return kExitOk;
}

int cmd_kernelize(const std::string& input, const std::string& output, bool with_trace,
                  bool with_stats, std::ostream& out) {
    const Budgets budgets = budgets_from_env();
    ParsedInstance inst = parse_instance_file(input);

    json main_out;
    ReductionTrace trace;
    KernelStats stats;
    json early = nullptr;

    if (inst.is_set()) {
        KernelOutcome k = kernelize_set(*inst.set, budgets.kernels);
        trace = k.trace;
        stats = k.stats;
        if (k.early_solution) {
            early = serialize_solution(*inst.set, *k.early_solution);
            main_out = json{{"early_solution", early}};
        } else {
            main_out = serialize_set_instance(*k.reduced);
        }
    } else {
        GraphKernelOutcome k = kernelize_graph(*inst.graph, budgets.kernels);
        trace = k.trace;
        stats = k.stats;
        if (k.early_solution) {
            early = serialize_solution(*inst.graph, *k.early_solution);
            main_out = json{{"early_solution", early}};
        } else {
            main_out = serialize_graph_instance(*k.reduced);
        }
    }

    write_output(main_out, output, out);
    if (with_trace) {
        json t = trace_to_json(trace, early);
        write_output(t, output.empty() ? "" : output + ".trace.json", out);
    }
    if (with_stats) {
        json s = stats_to_json(stats);
        write_output(s, output.empty() ? "" : output + ".stats.json", out);
    }
    return kExitOk;
}

int cmd_verify(const std::string& instance_path, const std::string& solution_path,
               std::ostream& out) {
    ParsedInstance inst = parse_instance_file(instance_path);
    PackingSolution sol = parse_solution(inst, read_json_file(solution_path));
    std::string why;
    const bool ok = inst.is_set() ? check_set_solution(*inst.set, sol, &why)
                                  : check_graph_solution(*inst.graph, sol, &why);
    if (ok) {
        out << "valid\n";
        return kExitOk;
    }
    out << "invalid: " << why << "\n";
    return kExitInvalid;
}

int cmd_stats(const std::string& input, std::ostream& out) {
    const Budgets budgets = budgets_from_env();
    ParsedInstance inst = parse_instance_file(input);
    json report;
    if (inst.is_set()) {
        report = json{{"kind", "set"},
                      {"elements", inst.set->element_count()},
                      {"sets", inst.set->sets.size()},
                      {"r", inst.set->r},
                      {"t", inst.set->t},
                      {"k", inst.set->k}};
    } else {
        const GraphInstance& gi = *inst.graph;
        SubgraphCatalog cat = enumerate_subgraphs(gi.g, gi.family, variant_is_induced(gi.variant),
                                                  budgets.kernels.enum_budget);
        Collections col = derive_collections(cat);
        SubgraphCatalog deduped = dedupe_by_vertex_set(cat);
        report = json{{"kind", "graph"},
                      {"n", gi.g.n},
                      {"m", gi.g.edges.size()},
                      {"catalog", cat.entries.size()},
                      {"catalog_deduped", deduped.entries.size()},
                      {"edge_sets", col.edge_sets.size()},
                      {"vertex_sets", col.vertex_sets.size()},
                      {"t", gi.t},
                      {"k", gi.k}};
    }
    out << report.dump(2) << "\n";
    return kExitOk;
}

int cmd_gen(const std::string& what, std::uint64_t seed, const std::string& mode,
            const std::string& variant, const std::string& input, int t, int k,
            const std::string& output, std::ostream& out) {
    SplitMix64 rng(seed);
    json result;
    if (what == "random-set") {
        const SetMode m = mode == "membership" ? SetMode::membership : SetMode::overlap;
        result = serialize_set_instance(random_set_instance(rng, m));
    } else if (what == "random-graph") {
        auto v = variant_from_string(variant.empty() ? "vertex-overlap" : variant);
        if (!v) throw ParseError("unknown variant \"" + variant + "\"");
        result = serialize_graph_instance(random_graph_instance(rng, *v));
    } else if (what == "p3-lift" || what == "c3-lift" || what == "star-overlap") {
        if (input.empty()) throw ParseError(what + " requires --input with a graph instance");
        ParsedInstance src = parse_instance_file(input);
        if (src.is_set()) throw ParseError(what + " requires a graph instance");
        const Graph& g = src.graph->g;
        const int use_t = t >= 0 ? t : src.graph->t;
        const int use_k = k >= 0 ? k : src.graph->k;
        GraphInstance lifted;
        if (what == "p3-lift") {
            LiftedInstance lift = lift_p3_membership(g, use_k, use_t);
            lifted = GraphInstance{lift.graph, GraphFamily{{make_path(3)}}, use_t + 1, lift.k_new,
                                   GraphVariant::vertex_membership};
        } else if (what == "c3-lift") {
            LiftedInstance lift = lift_c3_edge_membership(g, use_k, use_t);
            lifted = GraphInstance{lift.graph, GraphFamily{{make_clique(3)}}, use_t + 1, lift.k_new,
                                   GraphVariant::edge_membership};
        } else {
            StarGadget gadget = star_overlap_gadget(g, use_t);
            lifted = GraphInstance{gadget.graph, GraphFamily{{gadget.pattern}}, use_t, use_k,
                                   GraphVariant::vertex_overlap};
        }
        result = serialize_graph_instance(lifted);
    } else {
        throw ParseError("unknown generator \"" + what + "\"");
    }
    write_output(result, output, out);
    return kExitOk;
}

int cmd_check(int trials, std::uint64_t seed, const std::string& variants_csv, int max_n,
              int max_sets, bool quiet, std::ostream& out) {
    CheckOptions opt;
    opt.trials = trials;
    opt.seed = seed;
    opt.max_n = max_n;
    opt.max_sets = max_sets;
    opt.verbose = !quiet;
    opt.budgets = budgets_from_env().kernels;
    opt.oracle = budgets_from_env().oracle;
    opt.variants.clear();
    std::stringstream ss(variants_csv);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (token.empty()) continue;
        if (!is_known_check_variant(token)) throw ParseError("unknown check variant \"" + token + "\"");
        opt.variants.push_back(token);
    }
    if (opt.variants.empty()) opt.variants = {"set-overlap"};

    CheckReport report = run_check(opt);
    out << report.text;
    return report.failures == 0 ? kExitOk : kExitInvalid;
}

}  // namespace

json trace_to_json(const ReductionTrace& trace, const json& early_solution) {
    auto label_sets = [](const std::vector<std::vector<std::string>>& sets) {
        json out = json::array();
        for (const auto& s : sets) out.push_back(s);
        return out;
    };
    json f = json::object();
    for (const auto& [i, value] : trace.f_table) f[std::to_string(i)] = value;
    return json{{"R", label_sets(trace.R)},
                {"extra", label_sets(trace.extra)},
                {"M", label_sets(trace.M)},
                {"O_removed", trace.O_removed},
                {"f_table", f},
                {"early_solution", early_solution}};
}

json stats_to_json(const KernelStats& stats) {
    return json{{"elements_before", stats.elements_before},
                {"elements_after", stats.elements_after},
                {"sets_before", stats.sets_before},
                {"sets_after", stats.sets_after},
                {"bound", stats.bound},
                {"early_solution", stats.early_solution}};
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"kernelization toolkit for packing problems with bounded overlap"};
    app.require_subcommand(1);

    std::string input, output, solution_path;
    bool with_trace = false, with_stats = false, quiet = false;
    std::uint64_t seed = 0;
    int trials = 100, max_n = 12, max_sets = 20, gen_t = -1, gen_k = -1;
    std::string variants = "set-overlap", mode = "overlap", variant, generator;

    CLI::App* solve = app.add_subcommand("solve", "decide an instance exactly");
    solve->add_option("input", input, "instance JSON file")->required();
    solve->add_option("-o,--output", output, "write the result here instead of stdout");

    CLI::App* kernelize = app.add_subcommand("kernelize", "reduce an instance to a kernel");
    kernelize->add_option("input", input, "instance JSON file")->required();
    kernelize->add_option("-o,--output", output, "write the reduced instance here");
    kernelize->add_flag("--trace", with_trace, "also emit the reduction trace");
    kernelize->add_flag("--stats", with_stats, "also emit kernelization statistics");

    CLI::App* verify = app.add_subcommand("verify", "validate a solution against an instance");
    verify->add_option("instance", input, "instance JSON file")->required();
    verify->add_option("solution", solution_path, "solution JSON file")->required();

    CLI::App* gen = app.add_subcommand("gen", "generate instances");
    gen->add_option("generator", generator,
                    "one of: random-set, random-graph, p3-lift, c3-lift, star-overlap")
        ->required();
    gen->add_option("--seed", seed, "RNG seed");
    gen->add_option("--mode", mode, "random-set mode: overlap or membership");
    gen->add_option("--variant", variant, "random-graph variant");
    gen->add_option("--input", input, "source graph instance for the lifts");
    gen->add_option("--t", gen_t, "override t for the lifts");
    gen->add_option("--k", gen_k, "override k for the lifts");
    gen->add_option("-o,--output", output, "write the instance here");

    CLI::App* check = app.add_subcommand("check", "run randomized soundness checks");
    check->add_option("--trials", trials, "number of trials");
    check->add_option("--seed", seed, "RNG seed");
    check->add_option("--variants", variants, "comma-separated variant list");
    check->add_option("--max-n", max_n, "largest universe / vertex count");
    check->add_option("--max-sets", max_sets, "largest set collection");
    check->add_flag("--quiet", quiet, "summary only");

    CLI::App* stats = app.add_subcommand("stats", "report instance statistics");
    stats->add_option("input", input, "instance JSON file")->required();

    std::vector<const char*> argv;
    argv.push_back("opk");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << "error: " << e.what() << "\n";
        return kExitParse;
    }

    try {
        if (solve->parsed()) return cmd_solve(input, output, out);
        if (kernelize->parsed()) return cmd_kernelize(input, output, with_trace, with_stats, out);
        if (verify->parsed()) return cmd_verify(input, solution_path, out);
        if (gen->parsed()) return cmd_gen(generator, seed, mode, variant, input, gen_t, gen_k, output, out);
        if (check->parsed()) return cmd_check(trials, seed, variants, max_n, max_sets, quiet, out);
        if (stats->parsed()) return cmd_stats(input, out);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const BudgetError& e) {
        err << "budget error (" << e.parameter << "): " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitParse;
}

}  // namespace opk
