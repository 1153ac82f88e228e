#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "opk/kernelize.hpp"
#include "opk/oracle.hpp"

namespace opk {

/// Property-test harness behind `opk check` and the acceptance suite: every
/// trial generates a random instance, kernelizes it, and compares exact
/// decisions before and after (or validates the early solution), plus size
/// bounds and idempotence. Output is fully deterministic for a fixed seed.
struct CheckOptions {
    int trials = 100;
    std::uint64_t seed = 0;
    std::vector<std::string> variants = {"set-overlap"};
    int max_n = 12;
    int max_sets = 20;
    bool verbose = true;  // one line per trial; summary only when false
    OracleBudget oracle;
    KernelBudgets budgets;
};

struct CheckReport {
    std::string text;
    int trials = 0;
    int failures = 0;
};

// Accepted variant names: set-overlap, set-membership, the nine graph
// variant names, p3-lift, c3-lift, p2.
bool is_known_check_variant(const std::string& name);

CheckReport run_check(const CheckOptions& options);

}  // namespace opk
