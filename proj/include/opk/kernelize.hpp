#pragma once

#include "opk/core.hpp"
#include "opk/membership_kernel.hpp"
#include "opk/overlap_kernel.hpp"

namespace opk {

struct KernelBudgets {
    EnumBudget enum_budget;
    TransformBudget transform_budget;
};

/// Kernelize a set instance, dispatching on its mode.
KernelOutcome kernelize_set(const SetInstance& inst, const KernelBudgets& budgets = {});

/// Kernelize any graph instance. Iterates the variant's single-pass pipeline
/// to a fixpoint, so re-kernelizing the output is the identity; early
/// solutions are always stated in the input graph's vertex ids.
GraphKernelOutcome kernelize_graph(const GraphInstance& inst, const KernelBudgets& budgets = {});

}  // namespace opk
