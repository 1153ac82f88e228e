#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "opk/cli.hpp"
#include "opk/json_io.hpp"

using namespace opk;
using nlohmann::json;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = std::string("/tmp/opk_test_") + name;
    std::ofstream out(path);
    out << content;
    return path;
}

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string worked_example_path(int t) {
    const json j = serialize_set_instance(fixtures::worked_example_instance(t));
    return write_temp("worked_example.json", j.dump());
}

}  // namespace

TEST_CASE("solve reports decisions with witnesses") {
    const std::string path = worked_example_path(2);
    CliRun run = cli({"solve", path});
    CHECK(run.code == 0);
    const json result = json::parse(run.out);
    CHECK(result["decision"] == "yes");
    CHECK(result["witness"]["sets"].size() == 2);
}

TEST_CASE("solve exit codes for parse and budget failures") {
    const std::string bad = write_temp("bad.json", "{broken");
    CHECK(cli({"solve", bad}).code == 2);

    const std::string missing = write_temp("missing.json", R"({"kind":"set"})");
    CHECK(cli({"solve", missing}).code == 2);

    setenv("OPK_BUDGET", "1", 1);
    const std::string graph = write_temp("budget.json",
        serialize_graph_instance(GraphInstance{fixtures::host_graph(), fixtures::c4_k4_family(),
                                               1, 2, GraphVariant::vertex_overlap})
            .dump());
    CliRun run = cli({"solve", graph});
    unsetenv("OPK_BUDGET");
    CHECK(run.code == 3);
    CHECK(run.err.find("budget") != std::string::npos);
}

TEST_CASE("solve routes the p2-membership pseudo-variant") {
    json j = json{{"kind", "graph"},
                  {"n", 6},
                  {"edges", json::array({json::array({0, 1}), json::array({0, 2}),
                                         json::array({0, 3}), json::array({0, 4}),
                                         json::array({0, 5})})},
                  {"family", json::array()},
                  {"t", 2},
                  {"k", 2},
                  {"variant", "p2-membership"}};
    const std::string path = write_temp("p2.json", j.dump());
    CliRun run = cli({"solve", path});
    CHECK(run.code == 0);
    CHECK(json::parse(run.out)["decision"] == "yes");

    j["k"] = 3;
    const std::string no_path = write_temp("p2no.json", j.dump());
    CHECK(json::parse(cli({"solve", no_path}).out)["decision"] == "no");
}

TEST_CASE("kernelize writes a reduced instance and keeps k for membership") {
    SetInstance inst = fixtures::make_set_instance(
        fixtures::letters(8),
        {{"a", "b", "c", "d"}, {"b", "c", "e", "f"}, {"b", "c", "g", "h"}}, 4, 2, 3,
        SetMode::membership);
    const std::string path = write_temp("membership.json", serialize_set_instance(inst).dump());
    CliRun run = cli({"kernelize", path, "--stats"});
    CHECK(run.code == 0);
    // Output is two JSON documents: the instance (or early solution), then stats.
    const auto split = run.out.find("}\n{");
    REQUIRE(split != std::string::npos);
    const json first = json::parse(run.out.substr(0, split + 2));
    const json stats = json::parse(run.out.substr(split + 2));
    if (first.contains("early_solution")) {
        CHECK(stats["early_solution"] == true);
    } else {
        CHECK(first["k"] == 3);
        CHECK(stats["elements_after"] <= stats["bound"]);
    }
}

TEST_CASE("kernelize emits the trace schema") {
    const std::string path = worked_example_path(1);
    CliRun run = cli({"kernelize", path, "--trace"});
    CHECK(run.code == 0);
    const auto split = run.out.find("}\n{");
    REQUIRE(split != std::string::npos);
    const json trace = json::parse(run.out.substr(split + 2));
    CHECK(trace.contains("R"));
    CHECK(trace.contains("extra"));
    CHECK(trace.contains("M"));
    CHECK(trace.contains("O_removed"));
    CHECK(trace.contains("f_table"));
    CHECK(trace.contains("early_solution"));
    CHECK(trace["f_table"]["2"] == 4);
}

TEST_CASE("verify accepts valid solutions and rejects violations") {
    const std::string path = worked_example_path(2);
    const std::string good =
        write_temp("good_sol.json", R"({"sets":[["b","c","d","e"],["e","f","g","i"]]})");
    CHECK(cli({"verify", path, good}).code == 0);

    const std::string overlapping =
        write_temp("bad_sol.json", R"({"sets":[["a","b","c","e"],["b","c","d","e"]]})");
    CliRun run = cli({"verify", path, overlapping});
    CHECK(run.code == 1);
    CHECK(run.out.find("invalid") != std::string::npos);

    const std::string unknown = write_temp("unk_sol.json", R"({"sets":[["a","b","c","d"]]})");
    CHECK(cli({"verify", path, unknown}).code == 1);
}

TEST_CASE("gen is reproducible and emits parseable instances") {
    CliRun a = cli({"gen", "random-set", "--seed", "9"});
    CliRun b = cli({"gen", "random-set", "--seed", "9"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    parse_instance_text(a.out);

    CliRun g = cli({"gen", "random-graph", "--seed", "4", "--variant", "edge-overlap"});
    CHECK(g.code == 0);
    parse_instance_text(g.out);

    const std::string base = write_temp(
        "base_graph.json",
        serialize_graph_instance(GraphInstance{make_path(4), GraphFamily{{make_path(3)}}, 1, 1,
                                               GraphVariant::vertex_membership})
            .dump());
    CliRun lift = cli({"gen", "p3-lift", "--input", base});
    CHECK(lift.code == 0);
    ParsedInstance lifted = parse_instance_text(lift.out);
    CHECK(lifted.graph->t == 2);
    CHECK(lifted.graph->k == 1 + 4);
}

TEST_CASE("check runs trials and reports deterministically") {
    CliRun a = cli({"check", "--trials", "6", "--seed", "7", "--variants",
                    "set-overlap,set-membership"});
    CliRun b = cli({"check", "--trials", "6", "--seed", "7", "--variants",
                    "set-overlap,set-membership"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("0 failures") != std::string::npos);

    CHECK(cli({"check", "--trials", "0"}).code == 0);
    CHECK(cli({"check", "--trials", "1", "--variants", "nonsense"}).code == 2);
}

TEST_CASE("stats reports catalog sizes") {
    const std::string path = write_temp(
        "stats_graph.json",
        serialize_graph_instance(GraphInstance{fixtures::host_graph(), fixtures::c4_k4_family(),
                                               1, 2, GraphVariant::vertex_overlap})
            .dump());
    CliRun run = cli({"stats", path});
    CHECK(run.code == 0);
    const json report = json::parse(run.out);
    CHECK(report["catalog"] == 6);
    CHECK(report["catalog_deduped"] == 3);
    CHECK(report["edge_sets"] == 6);
    CHECK(report["vertex_sets"] == 3);
}
