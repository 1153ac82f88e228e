#pragma once

#include <optional>

#include "opk/core.hpp"
#include "opk/subgraph.hpp"

namespace opk {

struct OracleBudget {
    // Exhaustive search is allowed when the collection is small OR k is
    // small; otherwise the call fails with a BudgetError naming the limit.
    int max_sets = 24;
    int max_k = 5;
    long long max_catalog = 20000;
    EnumBudget enum_budget;
};

/// Exhaustive decision + witness for a set instance: a solution of exactly k
/// sets, or nullopt when none exists.
std::optional<PackingSolution> solve_set_exact(const SetInstance& inst,
                                               const OracleBudget& budget = {});

/// Exhaustive decision + witness over the instance's subgraph catalog.
std::optional<PackingSolution> solve_graph_exact(const GraphInstance& inst,
                                                 const OracleBudget& budget = {});

}  // namespace opk
