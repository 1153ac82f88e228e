#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "opk/overlap_kernel.hpp"

namespace opk {

// Exit codes: 0 success / valid, 1 invalid solution or check failures,
// 2 parse error, 3 budget exceeded.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

nlohmann::json trace_to_json(const ReductionTrace& trace, const nlohmann::json& early_solution);
nlohmann::json stats_to_json(const KernelStats& stats);

}  // namespace opk
