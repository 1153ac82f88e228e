#include "opk/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include "opk/errors.hpp"

namespace opk {

using nlohmann::json;

namespace {

const json& require_field(const json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end()) throw ParseError(std::string("missing field \"") + name + "\"");
    return *it;
}

int require_int(const json& j, const char* name) {
    const json& f = require_field(j, name);
    if (!f.is_number_integer()) throw ParseError(std::string("field \"") + name + "\" must be an integer");
    return f.get<int>();
}

std::vector<Edge> parse_edge_list(const json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array of [u,v] pairs");
    std::vector<Edge> edges;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
            throw ParseError(std::string(what) + " entries must be [u,v] integer pairs");
        edges.push_back({e[0].get<int>(), e[1].get<int>()});
    }
    return edges;
}

SetInstance parse_set_instance(const json& j) {
    SetInstance inst;
    const json& uni = require_field(j, "universe");
    if (!uni.is_array()) throw ParseError("\"universe\" must be an array of strings");
    for (const auto& u : uni) {
        if (!u.is_string()) throw ParseError("universe elements must be strings");
        inst.universe.push_back(u.get<std::string>());
    }
    std::sort(inst.universe.begin(), inst.universe.end());
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < inst.universe.size(); ++i) {
        if (!index.emplace(inst.universe[i], static_cast<int>(i)).second)
            throw ParseError("duplicate universe element \"" + inst.universe[i] + "\"");
    }

    const json& sets = require_field(j, "sets");
    if (!sets.is_array()) throw ParseError("\"sets\" must be an array of arrays");
    for (const auto& s : sets) {
        if (!s.is_array()) throw ParseError("each set must be an array of element labels");
        std::vector<int> out;
        for (const auto& e : s) {
            if (!e.is_string()) throw ParseError("set elements must be strings");
            auto it = index.find(e.get<std::string>());
            if (it == index.end())
                throw ParseError("set element \"" + e.get<std::string>() + "\" is not in the universe");
            out.push_back(it->second);
        }
        std::sort(out.begin(), out.end());
        if (std::adjacent_find(out.begin(), out.end()) != out.end())
            throw ParseError("a set lists the same element twice");
        inst.sets.push_back(std::move(out));
    }
    std::sort(inst.sets.begin(), inst.sets.end());

    inst.r = require_int(j, "r");
    inst.t = require_int(j, "t");
    inst.k = require_int(j, "k");
    const json& mode = require_field(j, "mode");
    if (mode == "overlap") inst.mode = SetMode::overlap;
    else if (mode == "membership") inst.mode = SetMode::membership;
    else throw ParseError("\"mode\" must be \"overlap\" or \"membership\"");
    inst.validate();
    return inst;
}

Graph parse_graph_body(const json& j) {
    const int n = require_int(j, "n");
    if (n < 0) throw ParseError("\"n\" must be non-negative");
    return Graph::from_edges(n, parse_edge_list(require_field(j, "edges"), "\"edges\""));
}

GraphInstance parse_graph_instance(const json& j) {
    GraphInstance inst;
    inst.g = parse_graph_body(j);
    const json& fam = require_field(j, "family");
    if (!fam.is_array()) throw ParseError("\"family\" must be an array of graphs");
    for (const auto& h : fam) inst.family.members.push_back(parse_graph_body(h));
    inst.t = require_int(j, "t");
    inst.k = require_int(j, "k");
    const json& variant = require_field(j, "variant");
    if (!variant.is_string()) throw ParseError("\"variant\" must be a string");
    auto v = variant_from_string(variant.get<std::string>());
    if (!v) throw ParseError("unknown variant \"" + variant.get<std::string>() + "\"");
    inst.variant = *v;
    inst.validate();
    return inst;
}

json edge_list_json(const std::vector<Edge>& edges) {
    json out = json::array();
    for (const auto& [u, v] : edges) out.push_back(json::array({u, v}));
    return out;
}

json graph_body_json(const Graph& g) {
    return json{{"n", g.n}, {"edges", edge_list_json(g.edges)}};
}

}  // namespace

ParsedInstance parse_instance(const json& j) {
    if (!j.is_object()) throw ParseError("instance must be a JSON object");
    const json& kind = require_field(j, "kind");
    ParsedInstance out;
    if (kind == "set") out.set = parse_set_instance(j);
    else if (kind == "graph") out.graph = parse_graph_instance(j);
    else throw ParseError("\"kind\" must be \"set\" or \"graph\"");
    return out;
}

ParsedInstance parse_instance_text(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("malformed JSON");
    return parse_instance(j);
}

ParsedInstance parse_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open \"" + path + "\"");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_instance_text(text);
}

json serialize_set_instance(const SetInstance& inst) {
    json sets = json::array();
    std::vector<std::vector<int>> ordered = inst.sets;
    std::sort(ordered.begin(), ordered.end());
    for (const auto& s : ordered) {
        json one = json::array();
        for (int e : s) one.push_back(inst.label(e));
        sets.push_back(std::move(one));
    }
    return json{{"kind", "set"},
                {"universe", inst.universe},
                {"sets", sets},
                {"r", inst.r},
                {"t", inst.t},
                {"k", inst.k},
                {"mode", inst.mode == SetMode::overlap ? "overlap" : "membership"}};
}

json serialize_graph_instance(const GraphInstance& inst) {
    json fam = json::array();
    for (const auto& h : inst.family.members) fam.push_back(graph_body_json(h));
    json out = graph_body_json(inst.g);
    out["kind"] = "graph";
    out["family"] = std::move(fam);
    out["t"] = inst.t;
    out["k"] = inst.k;
    out["variant"] = to_string(inst.variant);
    return out;
}

json serialize_instance(const ParsedInstance& inst) {
    return inst.is_set() ? serialize_set_instance(*inst.set) : serialize_graph_instance(*inst.graph);
}

json serialize_solution(const SetInstance& inst, const PackingSolution& sol) {
    json sets = json::array();
    for (const auto& s : sol.sets) {
        json one = json::array();
        for (int e : s) one.push_back(inst.label(e));
        sets.push_back(std::move(one));
    }
    return json{{"sets", sets}};
}

json serialize_solution(const GraphInstance&, const PackingSolution& sol) {
    json subs = json::array();
    for (const auto& h : sol.subgraphs)
        subs.push_back(json{{"vertices", h.vertices}, {"edges", edge_list_json(h.edges)}});
    return json{{"subgraphs", subs}};
}

PackingSolution parse_solution(const ParsedInstance& inst, const json& j) {
    if (!j.is_object()) throw ParseError("solution must be a JSON object");
    PackingSolution sol;
    if (inst.is_set()) {
        std::map<std::string, int> index;
        for (int i = 0; i < inst.set->element_count(); ++i) index[inst.set->label(i)] = i;
        const json& sets = require_field(j, "sets");
        if (!sets.is_array()) throw ParseError("\"sets\" must be an array");
        for (const auto& s : sets) {
            std::vector<int> out;
            for (const auto& e : s) {
                if (!e.is_string()) throw ParseError("solution set elements must be strings");
                auto it = index.find(e.get<std::string>());
                if (it == index.end())
                    throw ParseError("solution element \"" + e.get<std::string>() +
                                     "\" is not in the universe");
                out.push_back(it->second);
            }
            std::sort(out.begin(), out.end());
            sol.sets.push_back(std::move(out));
        }
    } else {
        const json& subs = require_field(j, "subgraphs");
        if (!subs.is_array()) throw ParseError("\"subgraphs\" must be an array");
        for (const auto& s : subs) {
            Subgraph h;
            const json& verts = require_field(s, "vertices");
            for (const auto& v : verts) {
                if (!v.is_number_integer()) throw ParseError("subgraph vertices must be integers");
                h.vertices.push_back(v.get<int>());
            }
            for (auto [u, v] : parse_edge_list(require_field(s, "edges"), "subgraph \"edges\"")) {
                if (u > v) std::swap(u, v);
                h.edges.push_back({u, v});
            }
            std::sort(h.vertices.begin(), h.vertices.end());
            std::sort(h.edges.begin(), h.edges.end());
            sol.subgraphs.push_back(std::move(h));
        }
    }
    return sol;
}

}  // namespace opk
