#include <doctest.h>

#include <algorithm>
#include <set>

#include "fixtures.hpp"
#include "opk/gadgets.hpp"
#include "opk/subgraph.hpp"

using namespace opk;

namespace {

bool contains_entry(const SubgraphCatalog& cat, const Subgraph& h) {
    return std::find(cat.entries.begin(), cat.entries.end(), h) != cat.entries.end();
}

}  // namespace

TEST_CASE("host graph C4 enumeration matches the worked example") {
    SubgraphCatalog cat = enumerate_subgraphs(fixtures::host_graph(), fixtures::c4_family(), false);
    // One C4 on {a,b,c,d}, one on {b,c,g,h}, and three on the K4 {b,c,e,f}.
    CHECK(cat.entries.size() == 5);
    CHECK(contains_entry(cat, Subgraph{{0, 1, 2, 3}, {{0, 1}, {0, 3}, {1, 2}, {2, 3}}}));
    CHECK(contains_entry(cat, Subgraph{{1, 2, 6, 7}, {{1, 2}, {1, 6}, {2, 7}, {6, 7}}}));
    int on_k4 = 0;
    for (const auto& h : cat.entries)
        if (h.vertices == std::vector<int>{1, 2, 4, 5}) ++on_k4;
    CHECK(on_k4 == 3);
}

TEST_CASE("single-vertex family yields one entry per vertex") {
    GraphFamily k1{{make_clique(1)}};
    SubgraphCatalog cat = enumerate_subgraphs(fixtures::host_graph(), k1, false);
    CHECK(cat.entries.size() == 8);
}

TEST_CASE("triangle-free host has no K3 entries") {
    Graph square = make_cycle(4);
    SubgraphCatalog cat = enumerate_subgraphs(square, GraphFamily{{make_clique(3)}}, false);
    CHECK(cat.entries.empty());
}

TEST_CASE("dedupe keeps one entry per vertex set with the smallest edge set") {
    SubgraphCatalog cat =
        enumerate_subgraphs(fixtures::host_graph(), fixtures::c4_k4_family(), false);
    CHECK(cat.entries.size() == 6);  // 5 C4s + the K4
    SubgraphCatalog deduped = dedupe_by_vertex_set(cat);
    CHECK(deduped.deduped);
    CHECK(deduped.entries.size() == 3);  // {a,b,c,d}, {b,c,e,f}, {b,c,g,h}
    std::set<std::vector<int>> vsets;
    for (const auto& h : deduped.entries) {
        CHECK(vsets.insert(h.vertices).second);
        // On {b,c,e,f} the K4's edge list sorts below all three C4s.
        if (h.vertices == std::vector<int>{1, 2, 4, 5})
            CHECK(h.edges ==
                  std::vector<Edge>{{1, 2}, {1, 4}, {1, 5}, {2, 4}, {2, 5}, {4, 5}});
    }

    CHECK(dedupe_by_vertex_set(deduped).entries == deduped.entries);
    CHECK(dedupe_by_vertex_set(SubgraphCatalog{}).entries.empty());
}

TEST_CASE("derived collections over the host graph") {
    SubgraphCatalog cat =
        enumerate_subgraphs(fixtures::host_graph(), fixtures::c4_k4_family(), false);
    Collections col = derive_collections(cat);
    // The five C4 edge sets plus the K4's full edge set.
    CHECK(col.edge_sets.size() == 6);
    CHECK(col.vertex_sets.size() == 3);
    auto has_edge_set = [&](const std::vector<Edge>& e) {
        return std::find(col.edge_sets.begin(), col.edge_sets.end(), e) != col.edge_sets.end();
    };
    CHECK(has_edge_set({{0, 1}, {0, 3}, {1, 2}, {2, 3}}));                    // ab,ad,bc,dc
    CHECK(has_edge_set({{1, 2}, {1, 6}, {2, 7}, {6, 7}}));                    // bg,bc,gh,hc
    CHECK(has_edge_set({{1, 2}, {1, 4}, {2, 5}, {4, 5}}));                    // be,ef,cf,bc
    CHECK(has_edge_set({{1, 4}, {1, 5}, {2, 4}, {2, 5}}));                    // be,ce,cf,bf
    CHECK(has_edge_set({{1, 2}, {1, 4}, {1, 5}, {2, 4}, {2, 5}, {4, 5}}));    // the K4

    SubgraphCatalog single;
    single.entries = {cat.entries.front()};
    Collections one = derive_collections(single);
    CHECK(one.edge_sets.size() == 1);
    CHECK(one.vertex_sets.size() == 1);
}

TEST_CASE("C4 entries for the NISV example have three vertex sets") {
    SubgraphCatalog cat = enumerate_subgraphs(fixtures::host_graph(), fixtures::c4_family(), false);
    Collections col = derive_collections(cat);
    CHECK(col.vertex_sets.size() == 3);
}

TEST_CASE("induced entries are the plain entries with the full induced edge set") {
    const Graph g = fixtures::host_graph();
    SubgraphCatalog plain = enumerate_subgraphs(g, fixtures::c4_k4_family(), false);
    SubgraphCatalog induced = enumerate_subgraphs(g, fixtures::c4_k4_family(), true);
    for (const auto& h : induced.entries) {
        CHECK(contains_entry(plain, h));
        auto [sub, map] = g.induced(h.vertices);
        CHECK(sub.edges.size() == h.edges.size());
    }
    // The C4s on {b,c,e,f} are not induced; both 4-cycles elsewhere are.
    CHECK(induced.entries.size() == 3);  // C4 abcd, C4 bghc, K4 becf
}

TEST_CASE("every catalog entry is isomorphic to a family member") {
    SubgraphCatalog cat =
        enumerate_subgraphs(fixtures::host_graph(), fixtures::c4_k4_family(), false);
    for (const auto& h : cat.entries) CHECK(subgraph_matches_family(h, fixtures::c4_k4_family()));
    Subgraph path{{0, 1, 2}, {{0, 1}, {1, 2}}};
    CHECK_FALSE(subgraph_matches_family(path, fixtures::c4_k4_family()));
}

TEST_CASE("patterns with isolated vertices embed") {
    Graph pattern = Graph::from_edges(3, {{0, 1}});  // an edge plus an isolated vertex
    Graph host = Graph::from_edges(4, {{0, 1}, {2, 3}});
    SubgraphCatalog cat = enumerate_subgraphs(host, GraphFamily{{pattern}}, false);
    // Choose one of 2 edges and one of the 2 vertices off that edge.
    CHECK(cat.entries.size() == 4);
    for (const auto& h : cat.entries) {
        CHECK(h.vertices.size() == 3);
        CHECK(h.edges.size() == 1);
    }
}
