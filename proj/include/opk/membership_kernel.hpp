#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "opk/core.hpp"
#include "opk/overlap_kernel.hpp"
#include "opk/subgraph.hpp"

namespace opk {

struct TransformBudget {
    long long max_sets = 1'000'000;  // cap on the t^|S| blow-up
};

/// The disjoint instance produced from a membership instance, together with
/// the maps needed to reinterpret its kernel. Universe element i of
/// `disjoint` is either a (base element, copy) pair or the token of a source
/// set.
struct MembershipTransform {
    SetInstance disjoint;           // mode=overlap, t=0, arity r+1
    std::vector<int> pair_base;     // original element index, or -1 for tokens
    std::vector<int> pair_copy;     // copy index in [1, t], or 0 for tokens
    std::vector<int> token_source;  // original set index, or -1 for pairs
};

/// Replace each element by t tagged copies and give every set a private
/// token; a (k,r,t)-membership of the input corresponds exactly to k
/// pairwise-disjoint transformed sets.
MembershipTransform transform_membership_to_disjoint(const SetInstance& inst,
                                                     const TransformBudget& budget = {});

/// Kernelizer for disjoint set packing (mode=overlap, t=0). The backend is
/// pluggable; the default runs the t-overlap pipeline at t=0.
using DisjointBackend = std::function<KernelOutcome(const SetInstance&)>;
KernelOutcome disjoint_kernelizer(const SetInstance& inst, const DisjointBackend& backend = {});

/// Map a kernel of the transformed instance back to a membership instance:
/// surviving tokens select the surviving sets, surviving pairs the elements.
SetInstance reinterpret_set_kernel(const SetInstance& original, const MembershipTransform& transform,
                                   const SetInstance& reduced);

/// transform -> disjoint kernel -> reinterpret, iterated to a fixpoint.
KernelOutcome kernelize_set_membership(const SetInstance& inst, const TransformBudget& budget = {});

/// Graph membership pipelines (single pass each). vertex / induced / edge
/// route through kernelize_set_membership; ISV and NISV build the tagged
/// disjoint instance directly.
GraphKernelOutcome kernelize_graph_membership(const GraphInstance& inst,
                                              const EnumBudget& enum_budget = {},
                                              const TransformBudget& transform_budget = {});
GraphKernelOutcome kernelize_graph_membership_isv(const GraphInstance& inst,
                                                  const EnumBudget& enum_budget = {},
                                                  const TransformBudget& transform_budget = {});
GraphKernelOutcome kernelize_graph_membership_nisv(const GraphInstance& inst,
                                                   const EnumBudget& enum_budget = {},
                                                   const TransformBudget& transform_budget = {});

}  // namespace opk
