#pragma once

#include <vector>

#include "opk/core.hpp"

namespace opk {

/// All H-subgraphs of a host graph, as distinct (vertex set, edge set) pairs
/// in ascending order. `deduped` marks catalogs reduced to one entry per
/// vertex set.
struct SubgraphCatalog {
    std::vector<Subgraph> entries;
    bool deduped = false;
};

/// Derived collections over a catalog: the distinct edge sets and the
/// distinct vertex sets of its entries.
struct Collections {
    std::vector<std::vector<Edge>> edge_sets;    // E
    std::vector<std::vector<int>> vertex_sets;   // V
};

struct EnumBudget {
    long long max_nodes = 20'000'000;  // backtracking nodes across all members
};

/// Enumerate every subgraph of `g` isomorphic to a family member; with
/// `induced` only embeddings whose image is an induced subgraph count, and
/// the recorded edge set is the full induced one. Deterministic order.
SubgraphCatalog enumerate_subgraphs(const Graph& g, const GraphFamily& family, bool induced,
                                    const EnumBudget& budget = {});

/// Keep exactly one entry per distinct vertex set: the one with the
/// lexicographically smallest edge set.
SubgraphCatalog dedupe_by_vertex_set(const SubgraphCatalog& cat);

Collections derive_collections(const SubgraphCatalog& cat);

/// True iff `h` (as a standalone graph on its own vertex set) is isomorphic
/// to some family member.
bool subgraph_matches_family(const Subgraph& h, const GraphFamily& family);

}  // namespace opk
