#include "opk/core.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "opk/errors.hpp"
#include "graph_common.hpp"
#include "opk/subgraph.hpp"

namespace opk {

Graph Graph::from_edges(int n, std::vector<Edge> edges) {
    Graph g;
    g.n = n;
    for (auto& [u, v] : edges) {
        if (u == v) throw ParseError("graph has a loop at vertex " + std::to_string(u));
        if (u > v) std::swap(u, v);
        if (u < 0 || v >= n)
            throw ParseError("edge endpoint out of range: " + std::to_string(u) + "," +
                             std::to_string(v));
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw ParseError("graph has a duplicate edge");
    g.edges = std::move(edges);
    return g;
}

bool Graph::has_edge(int u, int v) const {
    if (u > v) std::swap(u, v);
    return std::binary_search(edges.begin(), edges.end(), Edge{u, v});
}

int Graph::degree(int v) const {
    int d = 0;
    for (const auto& e : edges)
        if (e.first == v || e.second == v) ++d;
    return d;
}

std::vector<std::vector<int>> Graph::adjacency() const {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (const auto& [u, v] : edges) {
        adj[static_cast<std::size_t>(u)].push_back(v);
        adj[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& row : adj) std::sort(row.begin(), row.end());
    return adj;
}

std::pair<Graph, std::vector<int>> Graph::induced(const std::vector<int>& vertices) const {
    std::vector<int> kept = vertices;
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    std::map<int, int> to_new;
    for (std::size_t i = 0; i < kept.size(); ++i) to_new[kept[i]] = static_cast<int>(i);
    std::vector<Edge> sub_edges;
    for (const auto& [u, v] : edges) {
        auto iu = to_new.find(u), iv = to_new.find(v);
        if (iu != to_new.end() && iv != to_new.end())
            sub_edges.push_back({iu->second, iv->second});
    }
    Graph g = Graph::from_edges(static_cast<int>(kept.size()), std::move(sub_edges));
    return {std::move(g), std::move(kept)};
}

std::vector<int> Graph::isolated_vertices() const {
    std::vector<bool> touched(static_cast<std::size_t>(n), false);
    for (const auto& [u, v] : edges) {
        touched[static_cast<std::size_t>(u)] = true;
        touched[static_cast<std::size_t>(v)] = true;
    }
    std::vector<int> out;
    for (int v = 0; v < n; ++v)
        if (!touched[static_cast<std::size_t>(v)]) out.push_back(v);
    return out;
}

int GraphFamily::max_vertices() const {
    int r = 0;
    for (const auto& h : members) r = std::max(r, h.n);
    return r;
}

int GraphFamily::max_edges() const {
    int m = 0;
    for (const auto& h : members) m = std::max(m, static_cast<int>(h.edges.size()));
    return m;
}

std::vector<std::string> SetInstance::labels_of(const std::vector<int>& set) const {
    std::vector<std::string> out;
    out.reserve(set.size());
    for (int e : set) out.push_back(label(e));
    return out;
}

void SetInstance::validate() const {
    {
        std::set<std::string> seen(universe.begin(), universe.end());
        if (seen.size() != universe.size())
            throw ParseError("universe contains a duplicate element label");
    }
    if (r < 1) throw ParseError("r must be at least 1");
    if (k < 0) throw ParseError("k must be non-negative");
    if (mode == SetMode::overlap) {
        if (t < 0 || t > r - 1)
            throw ParseError("overlap mode requires 0 <= t <= r-1, got t=" + std::to_string(t));
    } else {
        if (t < 1) throw ParseError("membership mode requires t >= 1, got t=" + std::to_string(t));
    }
    std::set<std::vector<int>> seen_sets;
    for (const auto& s : sets) {
        if (s.empty() || static_cast<int>(s.size()) > r)
            throw ParseError("set size must be in [1, r]");
        if (!std::is_sorted(s.begin(), s.end()) ||
            std::adjacent_find(s.begin(), s.end()) != s.end())
            throw ParseError("set elements must be strictly increasing");
        if (s.front() < 0 || s.back() >= element_count())
            throw ParseError("set references an element outside the universe");
        if (!seen_sets.insert(s).second) {
            throw ParseError("duplicate set {" + [&] {
                std::string out;
                for (int e : s) out += (out.empty() ? "" : ",") + label(e);
                return out;
            }() + "}; sets must be distinct");
        }
    }
}

const char* to_string(GraphVariant v) {
    switch (v) {
        case GraphVariant::vertex_membership: return "vertex-membership";
        case GraphVariant::vertex_membership_isv: return "vertex-membership-ISV";
        case GraphVariant::induced_membership: return "induced-membership";
        case GraphVariant::edge_membership: return "edge-membership";
        case GraphVariant::edge_membership_nisv: return "edge-membership-NISV";
        case GraphVariant::vertex_overlap: return "vertex-overlap";
        case GraphVariant::induced_overlap: return "induced-overlap";
        case GraphVariant::edge_overlap: return "edge-overlap";
        case GraphVariant::clique_edge_overlap: return "clique-edge-overlap";
    }
    return "?";
}

std::optional<GraphVariant> variant_from_string(const std::string& s) {
    static const std::pair<const char*, GraphVariant> table[] = {
        {"vertex-membership", GraphVariant::vertex_membership},
        {"vertex-membership-ISV", GraphVariant::vertex_membership_isv},
        {"induced-membership", GraphVariant::induced_membership},
        {"edge-membership", GraphVariant::edge_membership},
        {"edge-membership-NISV", GraphVariant::edge_membership_nisv},
        {"vertex-overlap", GraphVariant::vertex_overlap},
        {"induced-overlap", GraphVariant::induced_overlap},
        {"edge-overlap", GraphVariant::edge_overlap},
        {"clique-edge-overlap", GraphVariant::clique_edge_overlap},
    };
    for (const auto& [name, v] : table)
        if (s == name) return v;
    return std::nullopt;
}

bool variant_is_membership(GraphVariant v) {
    switch (v) {
        case GraphVariant::vertex_membership:
        case GraphVariant::vertex_membership_isv:
        case GraphVariant::induced_membership:
        case GraphVariant::edge_membership:
        case GraphVariant::edge_membership_nisv: return true;
        default: return false;
    }
}

bool variant_is_induced(GraphVariant v) {
    return v == GraphVariant::induced_membership || v == GraphVariant::induced_overlap;
}

bool variant_is_edge_based(GraphVariant v) {
    switch (v) {
        case GraphVariant::edge_membership:
        case GraphVariant::edge_membership_nisv:
        case GraphVariant::edge_overlap:
        case GraphVariant::clique_edge_overlap: return true;
        default: return false;
    }
}

namespace {

bool is_complete(const Graph& g) {
    return static_cast<long long>(g.edges.size()) ==
           static_cast<long long>(g.n) * (g.n - 1) / 2;
}

}  // namespace

void GraphInstance::validate() const {
    if (family.members.empty()) throw ParseError("graph family must contain at least one member");
    for (const auto& h : family.members)
        if (h.n < 1) throw ParseError("family member must have at least one vertex");
    if (k < 0) throw ParseError("k must be non-negative");
    if (variant_is_membership(variant)) {
        if (t < 1) throw ParseError("membership variants require t >= 1");
    } else if (variant == GraphVariant::clique_edge_overlap) {
        if (t < 0) throw ParseError("t must be non-negative");
        for (const auto& h : family.members)
            if (!is_complete(h))
                throw ParseError("clique-edge-overlap requires every family member to be complete");
    } else {
        const int cap = variant_is_edge_based(variant) ? family.max_edges() : family.max_vertices();
        if (t < 0 || t > cap - 1)
            throw ParseError(std::string(to_string(variant)) + " requires 0 <= t <= " +
                             std::to_string(cap - 1) + ", got t=" + std::to_string(t));
    }
}

int intersection_size(const std::vector<int>& a, const std::vector<int>& b) {
    int count = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) ++i;
        else if (a[i] > b[j]) ++j;
        else { ++count; ++i; ++j; }
    }
    return count;
}

int intersection_size(const std::vector<Edge>& a, const std::vector<Edge>& b) {
    int count = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) ++i;
        else if (a[i] > b[j]) ++j;
        else { ++count; ++i; ++j; }
    }
    return count;
}

std::vector<int> sorted_union(const std::vector<std::vector<int>>& sets) {
    std::set<int> all;
    for (const auto& s : sets) all.insert(s.begin(), s.end());
    return {all.begin(), all.end()};
}

namespace {

bool fail(std::string* why, const std::string& msg) {
    if (why) *why = msg;
    return false;
}

// Common frame for both set validators: membership in the instance's
// collection, pairwise distinctness, |sol| >= k.
bool check_set_common(const SetInstance& inst, const PackingSolution& sol, std::string* why) {
    if (static_cast<int>(sol.sets.size()) < inst.k)
        return fail(why, "solution has " + std::to_string(sol.sets.size()) +
                             " sets but k=" + std::to_string(inst.k));
    std::set<std::vector<int>> instance_sets(inst.sets.begin(), inst.sets.end());
    std::set<std::vector<int>> seen;
    for (std::size_t i = 0; i < sol.sets.size(); ++i) {
        std::vector<int> s = sol.sets[i];
        std::sort(s.begin(), s.end());
        if (!instance_sets.count(s))
            return fail(why, "solution set #" + std::to_string(i) + " is not a set of the instance");
        if (!seen.insert(s).second)
            return fail(why, "solution set #" + std::to_string(i) + " appears twice");
    }
    return true;
}

}  // namespace

bool check_set_overlap(const SetInstance& inst, const PackingSolution& sol, std::string* why) {
    if (!check_set_common(inst, sol, why)) return false;
    for (std::size_t i = 0; i < sol.sets.size(); ++i)
        for (std::size_t j = i + 1; j < sol.sets.size(); ++j) {
            const int ov = intersection_size(sol.sets[i], sol.sets[j]);
            if (ov > inst.t)
                return fail(why, "sets #" + std::to_string(i) + " and #" + std::to_string(j) +
                                     " overlap in " + std::to_string(ov) +
                                     " > t=" + std::to_string(inst.t) + " elements");
        }
    return true;
}

bool check_set_membership(const SetInstance& inst, const PackingSolution& sol, std::string* why) {
    if (!check_set_common(inst, sol, why)) return false;
    std::vector<int> occupancy(static_cast<std::size_t>(inst.element_count()), 0);
    for (const auto& s : sol.sets)
        for (int e : s) {
            if (++occupancy[static_cast<std::size_t>(e)] > inst.t)
                return fail(why, "element '" + inst.label(e) + "' occurs in more than t=" +
                                     std::to_string(inst.t) + " chosen sets");
        }
    return true;
}

bool check_set_solution(const SetInstance& inst, const PackingSolution& sol, std::string* why) {
    return inst.mode == SetMode::overlap ? check_set_overlap(inst, sol, why)
                                         : check_set_membership(inst, sol, why);
}

bool check_graph_solution(const GraphInstance& inst, const PackingSolution& sol, std::string* why) {
    const GraphVariant variant = inst.variant;
    if (static_cast<int>(sol.subgraphs.size()) < inst.k)
        return fail(why, "solution has " + std::to_string(sol.subgraphs.size()) +
                             " subgraphs but k=" + std::to_string(inst.k));
    // Edge variants compare against family members modulo isolated vertices.
    const bool strip = variant == GraphVariant::edge_membership ||
                       variant == GraphVariant::edge_membership_nisv ||
                       variant == GraphVariant::edge_overlap;
    const GraphFamily family = strip ? detail::strip_isolated_family(inst.family) : inst.family;

    std::set<Subgraph> seen;
    for (std::size_t i = 0; i < sol.subgraphs.size(); ++i) {
        Subgraph h = sol.subgraphs[i];
        std::sort(h.vertices.begin(), h.vertices.end());
        std::sort(h.edges.begin(), h.edges.end());
        const std::string tag = "subgraph #" + std::to_string(i);
        for (int v : h.vertices)
            if (v < 0 || v >= inst.g.n) return fail(why, tag + " has a vertex outside the host graph");
        for (const auto& [u, v] : h.edges) {
            if (!inst.g.has_edge(u, v))
                return fail(why, tag + " uses edge (" + std::to_string(u) + "," +
                                     std::to_string(v) + ") absent from the host graph");
            if (!std::binary_search(h.vertices.begin(), h.vertices.end(), u) ||
                !std::binary_search(h.vertices.begin(), h.vertices.end(), v))
                return fail(why, tag + " has an edge endpoint outside its vertex set");
        }
        if (variant_is_induced(variant)) {
            // Induced: the edge set must be exactly the host edges inside V.
            auto [gi, map] = inst.g.induced(h.vertices);
            if (gi.edges.size() != h.edges.size())
                return fail(why, tag + " is not an induced subgraph");
        }
        if (!subgraph_matches_family(h, family))
            return fail(why, tag + " is not isomorphic to any family member");
        if (!seen.insert(h).second) return fail(why, tag + " duplicates another chosen subgraph");
    }

    // Normalized copies for the pairwise / occupancy conditions.
    std::vector<Subgraph> hs;
    hs.reserve(sol.subgraphs.size());
    for (const auto& raw : sol.subgraphs) {
        Subgraph h = raw;
        std::sort(h.vertices.begin(), h.vertices.end());
        std::sort(h.edges.begin(), h.edges.end());
        hs.push_back(std::move(h));
    }

    const bool need_distinct_vertex_sets = variant == GraphVariant::vertex_membership ||
                                           variant == GraphVariant::induced_membership ||
                                           variant == GraphVariant::edge_membership_nisv;
    const bool need_distinct_edge_sets = variant == GraphVariant::edge_membership ||
                                         variant == GraphVariant::vertex_membership_isv;
    for (std::size_t i = 0; i < hs.size(); ++i)
        for (std::size_t j = i + 1; j < hs.size(); ++j) {
            if (need_distinct_vertex_sets && hs[i].vertices == hs[j].vertices)
                return fail(why, "subgraphs #" + std::to_string(i) + " and #" + std::to_string(j) +
                                     " share the same vertex set");
            if (need_distinct_edge_sets && hs[i].edges == hs[j].edges)
                return fail(why, "subgraphs #" + std::to_string(i) + " and #" + std::to_string(j) +
                                     " share the same edge set");
        }

    if (variant_is_membership(variant)) {
        if (variant_is_edge_based(variant)) {
            std::map<Edge, int> occupancy;
            for (const auto& h : hs)
                for (const auto& e : h.edges)
                    if (++occupancy[e] > inst.t)
                        return fail(why, "edge (" + std::to_string(e.first) + "," +
                                             std::to_string(e.second) + ") belongs to more than t=" +
                                             std::to_string(inst.t) + " chosen subgraphs");
        } else {
            std::vector<int> occupancy(static_cast<std::size_t>(inst.g.n), 0);
            for (const auto& h : hs)
                for (int v : h.vertices)
                    if (++occupancy[static_cast<std::size_t>(v)] > inst.t)
                        return fail(why, "vertex " + std::to_string(v) + " is contained in more than t=" +
                                             std::to_string(inst.t) + " chosen subgraphs");
        }
    } else {
        const bool on_edges = variant_is_edge_based(variant);
        for (std::size_t i = 0; i < hs.size(); ++i)
            for (std::size_t j = i + 1; j < hs.size(); ++j) {
                const int ov = on_edges ? intersection_size(hs[i].edges, hs[j].edges)
                                        : intersection_size(hs[i].vertices, hs[j].vertices);
                if (ov > inst.t)
                    return fail(why, "subgraphs #" + std::to_string(i) + " and #" + std::to_string(j) +
                                         " overlap in " + std::to_string(ov) + " > t=" +
                                         std::to_string(inst.t) +
                                         (on_edges ? " edges" : " vertices"));
            }
    }
    return true;
}

}  // namespace opk
