#pragma once

#include <vector>

#include "opk/core.hpp"
#include "opk/rng.hpp"

namespace opk {

// Small pattern builders shared by generators and tests.
Graph make_clique(int n);
Graph make_path(int n);   // P_n: n vertices, n-1 edges
Graph make_cycle(int n);

/// A lifted hardness instance: the constructed graph, the shifted target
/// size, and for each vertex its originating input vertex (-1 for new ones).
struct LiftedInstance {
    Graph graph;
    int k_new = 0;
    int padded_n = 0;          // input vertex count after padding
    std::vector<int> origin;   // lifted vertex -> input vertex or -1
};

/// P3-membership lift: pads the input to a multiple of t+1 vertices, hangs a
/// shared u-pair off every block of t+1 vertices, and shifts k by the padded
/// vertex count. The input has a (3,t)-P3-membership of size >= k iff the
/// output has a (3,t+1)-P3-membership of size >= k_new.
LiftedInstance lift_p3_membership(const Graph& g, int k, int t);

/// C3-edge-membership lift: one new vertex per input edge, joined to both
/// endpoints; k_new = k + |E|. Decision preserved from t to t+1.
LiftedInstance lift_c3_edge_membership(const Graph& g, int k, int t);

/// Star augmentation: every vertex gets a pendant star K_{1,s} with
/// s = max(5, t-1); the pattern is a triangle with three such stars. The
/// input graph must have maximum degree at most 4.
struct StarGadget {
    Graph graph;
    Graph pattern;
    int star_size = 0;
};

StarGadget star_overlap_gadget(const Graph& g, int t);

// Random instances at desk scale (parameters chosen to keep the exact
// solvers under a second per instance).
SetInstance random_set_instance(SplitMix64& rng, SetMode mode, int max_n = 12, int max_sets = 20);
Graph random_graph(SplitMix64& rng, int min_n, int max_n);
GraphInstance random_graph_instance(SplitMix64& rng, GraphVariant variant, int max_n = 9);

/// Overlap instances with planted stem families: several sets sharing an
/// (r-1)-subset (feeding the matching rule) and several sharing an (r-2)-
/// subset (feeding the counting rule). Uniform sampling almost never builds
/// such clusters, so the reduction paths would otherwise stay idle.
SetInstance random_clustered_set_instance(SplitMix64& rng);

}  // namespace opk
