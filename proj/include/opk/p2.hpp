#pragma once

#include <optional>
#include <vector>

#include "opk/core.hpp"

namespace opk {

/// Matching gadget for the degree-constrained subgraph problem: every vertex
/// v becomes b(v) stubs; every edge uv a pair of adjacent edge-nodes, the
/// u-node wired to u's stubs and the v-node to v's. The internal connection
/// carries min(b(u), b(v)) parallel edges (at least one), so with b = t the
/// gadget has 2|E| + t|V| vertices and exactly 3t|E| edges. Parallel edges
/// never change a maximum matching: G has a degree-constrained subgraph with
/// k edges iff the gadget has a matching of size |E(G)| + k.
struct DcsGadget {
    int n = 0;
    std::vector<Edge> edges;       // multigraph edge list, parallels included
    std::vector<int> stub_offset;  // stubs of v occupy [offset, offset + b(v))
    int stub_count = 0;            // edge-node pair i sits at stub_count + 2i

    Graph support() const;         // simple support graph for the matcher
};

DcsGadget build_dcs_gadget(const Graph& g, const std::vector<int>& b);

/// Maximum edge subset where each vertex v touches at most b(v) edges.
std::vector<Edge> solve_degree_constrained(const Graph& g, const std::vector<int>& b);

/// P2-packing with t-membership: k edges with every vertex in at most t of
/// them, found in polynomial time via the degree-constrained reduction.
std::optional<PackingSolution> solve_p2_membership(const Graph& g, int t, int k);

}  // namespace opk
