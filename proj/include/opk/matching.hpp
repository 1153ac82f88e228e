#pragma once

#include <utility>
#include <vector>

#include "opk/core.hpp"

namespace opk {

/// Bipartite conflict graph for the matching reduction rule: left vertices
/// are the elements outside val(R), right vertices the (r-1)-element stems.
struct ConflictBipartite {
    int n_left = 0;
    int n_right = 0;
    std::vector<std::vector<int>> adj;  // adj[left] = sorted right neighbors
};

/// Maximum-cardinality bipartite matching (Hopcroft-Karp, O(E sqrt V)).
/// Deterministic for a fixed adjacency order.
std::vector<std::pair<int, int>> bipartite_max_matching(const ConflictBipartite& b);

/// Maximum-cardinality matching in a general graph (Edmonds blossom, O(V^3)).
std::vector<std::pair<int, int>> general_max_matching(const Graph& g);

}  // namespace opk
