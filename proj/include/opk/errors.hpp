#pragma once

#include <stdexcept>
#include <string>

namespace opk {

// Malformed input files or instance data that violates an invariant.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// An enumeration or transformation would exceed its configured budget.
// `parameter` names the limit that was hit.
struct BudgetError : std::runtime_error {
    std::string parameter;
    BudgetError(const std::string& param, const std::string& what)
        : std::runtime_error(what), parameter(param) {}
};

// An internal pipeline invariant failed; signals a bug upstream, not bad input.
struct StructuralError : std::logic_error {
    explicit StructuralError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace opk
