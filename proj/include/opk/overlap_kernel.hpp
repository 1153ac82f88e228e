#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opk/core.hpp"
#include "opk/matching.hpp"
#include "opk/subgraph.hpp"

namespace opk {

/// What the pipeline did, recorded as label sets so it survives reindexing.
struct ReductionTrace {
    std::vector<std::vector<std::string>> R;      // final maximal (r, r-2)-packing
    std::vector<std::vector<std::string>> extra;  // sets removed by the counting rule
    std::vector<std::vector<std::string>> M;      // maximal (r, t)-packing of R
    std::vector<std::string> O;                   // elements outside val(R)
    std::vector<std::string> O_removed;           // unmatched O-elements removed
    std::vector<std::vector<std::string>> sets_removed_by_matching;
    std::map<int, long long> f_table;             // i -> threshold f(i)
};

/// Result of kernelizing a set instance: an early solution (stated in the
/// original instance's element indices), or a reduced, decision-equivalent
/// instance plus the trace.
struct KernelOutcome {
    std::optional<PackingSolution> early_solution;
    std::optional<SetInstance> reduced;
    ReductionTrace trace;
    KernelStats stats;
};

/// Result of presolving: sets of size <= t are lifted straight into any
/// solution and k drops accordingly (possibly to zero or below).
struct PresolveResult {
    SetInstance rest;                        // same universe, small sets removed
    std::vector<std::vector<int>> forced;    // the removed small sets
};

PresolveResult presolve_small_sets(const SetInstance& inst);

/// For t = r-1 the answer is immediate: YES iff there are at least k distinct
/// sets. Returns nothing when t < r-1 and the pipeline should run.
std::optional<bool> handle_t_max(const SetInstance& inst);

/// Reduction rule: drop universe elements contained in no set.
SetInstance reduce_unused_elements(const SetInstance& inst);

/// Grow `existing` greedily (canonical order) into a maximal packing whose
/// members pairwise overlap in at most q elements.
std::vector<std::vector<int>> greedy_maximal_packing(const std::vector<std::vector<int>>& sets,
                                                     int q,
                                                     std::vector<std::vector<int>> existing = {});

/// Counting threshold f(i) = (r-t)(k-1) f(i+1) + 1, f(t_ini + 1) = 1,
/// saturated at `cap` so the comparison |P| > f(i) never overflows.
long long threshold_f(int i, int t_ini, int r, int t, int k,
                      long long cap = (1LL << 62));

struct ExtraSetsResult {
    std::vector<std::vector<int>> kept;   // R after removals, canonical order
    std::vector<std::vector<int>> extra;  // removed sets, canonical order
    std::map<int, long long> f_table;
    int t_ini = 0;
};

/// Counting rule over a maximal packing R: whenever more than f(i) members
/// share an i-element subset, all but the f(i) canonically smallest are
/// removable.
ExtraSetsResult extra_sets_reduction(const std::vector<std::vector<int>>& R, int r, int t, int k);

struct ConflictBipartiteBuild {
    ConflictBipartite graph;
    std::vector<int> left_elements;             // O elements (left side order)
    std::vector<std::vector<int>> right_stems;  // (r-1)-subsets (right side order)
};

/// Left side: elements of O. Right side: the distinct stems P such that
/// {o} u P is one of the given sets. Every input set must contain exactly one
/// O-element (StructuralError otherwise).
ConflictBipartiteBuild build_conflict_bipartite(const std::vector<int>& O,
                                                const std::vector<std::vector<int>>& sets_with_o);

struct MatchingReductionResult {
    SetInstance reduced;
    std::vector<int> removed_elements;               // O' (original indices)
    std::vector<std::vector<int>> removed_sets;      // S(O') (original index sets)
    ConflictBipartiteBuild bipartite;
    std::vector<std::pair<int, int>> matching;
};

/// Matching rule: unmatched O-elements and the sets containing them go away.
/// `R` must be a maximal (r, r-2)-packing of the instance's sets.
MatchingReductionResult matching_reduction(const SetInstance& inst,
                                           const std::vector<std::vector<int>>& R);

/// Full kernelization for mode=overlap, iterated to a fixpoint so that
/// kernelizing the output again changes nothing.
KernelOutcome kernelize_set_overlap(const SetInstance& inst);

/// Largest t' with t'(t'-1)/2 <= t; the vertex-overlap bound equivalent to
/// edge overlap t for clique families.
int clique_overlap_bound(int t);

/// 2 r^r k^(r-t-1): the bound claimed for both |val(R)| and |O \ O'|; the
/// reduced universe obeys twice this value.
long long overlap_reduction_bound(int r, int t, int k);

/// Graph-level result: reduced host graph plus bookkeeping to interpret it.
struct GraphKernelOutcome {
    std::optional<PackingSolution> early_solution;  // subgraphs of the input graph
    std::optional<GraphInstance> reduced;           // re-indexed host graph
    std::vector<int> kept_vertices;                 // reduced vertex -> input vertex
    ReductionTrace trace;
    KernelStats stats;
};

/// Kernelization for vertex-overlap, induced-overlap, edge-overlap and
/// clique-edge-overlap instances, via the set pipeline.
GraphKernelOutcome kernelize_graph_overlap(const GraphInstance& inst,
                                           const EnumBudget& budget = {});

}  // namespace opk
