#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "opk/core.hpp"

namespace opk {

/// Either a set instance or a graph instance, as selected by "kind".
struct ParsedInstance {
    std::optional<SetInstance> set;
    std::optional<GraphInstance> graph;

    bool is_set() const { return set.has_value(); }
};

// Parsing normalizes to canonical form (sorted universe, sorted sets) and
// rejects duplicates; serialization emits canonical form, so parse/serialize
// round-trips are the identity on canonical files. Throws ParseError.
ParsedInstance parse_instance(const nlohmann::json& j);
ParsedInstance parse_instance_text(const std::string& text);
ParsedInstance parse_instance_file(const std::string& path);

nlohmann::json serialize_set_instance(const SetInstance& inst);
nlohmann::json serialize_graph_instance(const GraphInstance& inst);
nlohmann::json serialize_instance(const ParsedInstance& inst);

// Solutions are tied to their instance: set solutions list element labels,
// graph solutions list vertex ids and edges.
nlohmann::json serialize_solution(const SetInstance& inst, const PackingSolution& sol);
nlohmann::json serialize_solution(const GraphInstance& inst, const PackingSolution& sol);
PackingSolution parse_solution(const ParsedInstance& inst, const nlohmann::json& j);

}  // namespace opk
