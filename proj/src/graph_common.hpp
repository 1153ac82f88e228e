#pragma once

// Shared plumbing between the graph-level kernelization pipelines: building
// set instances over V(G) or E(G) and mapping reduced universes back to
// vertices and edges. Internal to the library.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "opk/core.hpp"
#include "opk/errors.hpp"
#include "opk/subgraph.hpp"

namespace opk::detail {

inline std::string vertex_label(int v) { return std::to_string(v); }

inline std::string edge_label(const Edge& e) {
    return std::to_string(e.first) + "-" + std::to_string(e.second);
}

// Members of an edge-variant family must not have isolated vertices; strip
// them (equivalent instance) and reject members left without any edge.
inline GraphFamily strip_isolated_family(const GraphFamily& family) {
    GraphFamily out;
    for (const auto& h : family.members) {
        if (h.edges.empty())
            throw ParseError("edge variants require every family member to contain an edge");
        std::vector<int> touched;
        for (const auto& [u, v] : h.edges) {
            touched.push_back(u);
            touched.push_back(v);
        }
        auto [stripped, map] = h.induced(touched);
        out.members.push_back(std::move(stripped));
    }
    return out;
}

// Universe = V(G) in vertex order; one set per catalog entry's vertex set.
inline SetInstance set_instance_over_vertices(const Graph& g,
                                              const std::vector<Subgraph>& entries, int r, int t,
                                              int k, SetMode mode) {
    SetInstance inst;
    inst.universe.reserve(static_cast<std::size_t>(g.n));
    for (int v = 0; v < g.n; ++v) inst.universe.push_back(vertex_label(v));
    for (const auto& h : entries) inst.sets.push_back(h.vertices);
    std::sort(inst.sets.begin(), inst.sets.end());
    inst.sets.erase(std::unique(inst.sets.begin(), inst.sets.end()), inst.sets.end());
    inst.r = r;
    inst.t = t;
    inst.k = k;
    inst.mode = mode;
    return inst;
}

// Universe = E(G) in edge order; one set per catalog entry's edge set.
inline SetInstance set_instance_over_edges(const Graph& g, const std::vector<Subgraph>& entries,
                                           int r, int t, int k, SetMode mode) {
    std::map<Edge, int> edge_index;
    for (std::size_t i = 0; i < g.edges.size(); ++i)
        edge_index[g.edges[i]] = static_cast<int>(i);
    SetInstance inst;
    inst.universe.reserve(g.edges.size());
    for (const auto& e : g.edges) inst.universe.push_back(edge_label(e));
    for (const auto& h : entries) {
        std::vector<int> s;
        s.reserve(h.edges.size());
        for (const auto& e : h.edges) s.push_back(edge_index.at(e));
        std::sort(s.begin(), s.end());
        inst.sets.push_back(std::move(s));
    }
    std::sort(inst.sets.begin(), inst.sets.end());
    inst.sets.erase(std::unique(inst.sets.begin(), inst.sets.end()), inst.sets.end());
    inst.r = r;
    inst.t = t;
    inst.k = k;
    inst.mode = mode;
    return inst;
}

inline int vertex_of_label(const std::string& label) { return std::stoi(label); }

inline Edge edge_of_label(const std::string& label) {
    const auto dash = label.find('-');
    return {std::stoi(label.substr(0, dash)), std::stoi(label.substr(dash + 1))};
}

// Find the catalog entry with the given vertex set (deduped catalogs have
// exactly one).
inline const Subgraph* entry_by_vertices(const std::vector<Subgraph>& entries,
                                         const std::vector<int>& vertices) {
    for (const auto& h : entries)
        if (h.vertices == vertices) return &h;
    return nullptr;
}

inline const Subgraph* entry_by_edges(const std::vector<Subgraph>& entries,
                                      const std::vector<Edge>& edges) {
    for (const auto& h : entries)
        if (h.edges == edges) return &h;
    return nullptr;
}

}  // namespace opk::detail
