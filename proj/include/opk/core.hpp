#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace opk {

using Edge = std::pair<int, int>;  // stored with first < second

/// Simple undirected graph over dense vertex ids [0, n).
struct Graph {
    int n = 0;
    std::vector<Edge> edges;  // sorted, no duplicates, no loops

    static Graph from_edges(int n, std::vector<Edge> edges);

    bool has_edge(int u, int v) const;
    int degree(int v) const;
    std::vector<std::vector<int>> adjacency() const;

    // Subgraph induced by `vertices` (need not be sorted); vertices are
    // re-indexed 0..|vertices|-1 in ascending original order. The returned
    // map gives new index -> original vertex id.
    std::pair<Graph, std::vector<int>> induced(const std::vector<int>& vertices) const;

    // Vertices with degree zero.
    std::vector<int> isolated_vertices() const;

    bool operator==(const Graph& other) const = default;
};

/// Finite family of pattern graphs.
struct GraphFamily {
    std::vector<Graph> members;

    int max_vertices() const;  // r(H)
    int max_edges() const;     // m(H)

    bool operator==(const GraphFamily& other) const = default;
};

enum class SetMode { overlap, membership };

/// Set-packing instance: universe of interned labels, sets as sorted index
/// vectors over the universe order.
struct SetInstance {
    std::vector<std::string> universe;
    std::vector<std::vector<int>> sets;  // each sorted; list sorted lexicographically
    int r = 0;
    int t = 0;
    int k = 0;
    SetMode mode = SetMode::overlap;

    int element_count() const { return static_cast<int>(universe.size()); }
    const std::string& label(int idx) const { return universe[static_cast<std::size_t>(idx)]; }
    std::vector<std::string> labels_of(const std::vector<int>& set) const;

    // Checks every structural invariant (arity, element range, distinctness,
    // t range for the mode); throws ParseError on violation.
    void validate() const;
};

enum class GraphVariant {
    vertex_membership,
    vertex_membership_isv,
    induced_membership,
    edge_membership,
    edge_membership_nisv,
    vertex_overlap,
    induced_overlap,
    edge_overlap,
    clique_edge_overlap,
};

const char* to_string(GraphVariant v);
std::optional<GraphVariant> variant_from_string(const std::string& s);

bool variant_is_membership(GraphVariant v);
bool variant_is_induced(GraphVariant v);
// Variants whose solution constraint lives on edges rather than vertices.
bool variant_is_edge_based(GraphVariant v);

struct GraphInstance {
    Graph g;
    GraphFamily family;
    int t = 0;
    int k = 0;
    GraphVariant variant = GraphVariant::vertex_overlap;

    void validate() const;
};

/// One H-subgraph of the host graph: vertex set plus edge set, both sorted.
/// `vertices` may be a superset of the edge endpoints when the pattern has
/// isolated vertices.
struct Subgraph {
    std::vector<int> vertices;
    std::vector<Edge> edges;

    bool operator==(const Subgraph& other) const = default;
    auto operator<=>(const Subgraph& other) const = default;
};

/// A candidate solution: `sets` for set instances, `subgraphs` for graph
/// instances; the unused field stays empty.
struct PackingSolution {
    std::vector<std::vector<int>> sets;
    std::vector<Subgraph> subgraphs;
};

struct KernelStats {
    long long elements_before = 0;
    long long elements_after = 0;
    long long sets_before = 0;
    long long sets_after = 0;
    long long bound = 0;  // claimed size bound for elements_after
    bool early_solution = false;
};

// Solution validators. On failure, `why` (when non-null) receives a
// diagnostic for the first violated condition.
bool check_set_overlap(const SetInstance& inst, const PackingSolution& sol,
                       std::string* why = nullptr);
bool check_set_membership(const SetInstance& inst, const PackingSolution& sol,
                          std::string* why = nullptr);
bool check_set_solution(const SetInstance& inst, const PackingSolution& sol,
                        std::string* why = nullptr);
bool check_graph_solution(const GraphInstance& inst, const PackingSolution& sol,
                          std::string* why = nullptr);

// Shared small helpers.
int intersection_size(const std::vector<int>& a, const std::vector<int>& b);
int intersection_size(const std::vector<Edge>& a, const std::vector<Edge>& b);
std::vector<int> sorted_union(const std::vector<std::vector<int>>& sets);

}  // namespace opk
