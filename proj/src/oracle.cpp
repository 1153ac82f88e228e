#include "opk/oracle.hpp"

#include <algorithm>
#include <map>

#include "graph_common.hpp"
#include "opk/errors.hpp"

namespace opk {

namespace {

// Depth-first choice of k sets in canonical (index) order with incremental
// constraint checks. Works for both modes via the `compatible` callback.
class SetSearch {
 public:
    SetSearch(const SetInstance& inst) : inst_(inst) {
        if (inst.mode == SetMode::membership)
            occupancy_.assign(static_cast<std::size_t>(inst.element_count()), 0);
    }

    std::optional<std::vector<int>> find(int k) {
        chosen_.clear();
        if (search(0, k)) return chosen_;
        return std::nullopt;
    }

 private:
    bool compatible(int candidate) const {
        const auto& s = inst_.sets[static_cast<std::size_t>(candidate)];
        if (inst_.mode == SetMode::overlap) {
            for (int c : chosen_)
                if (intersection_size(s, inst_.sets[static_cast<std::size_t>(c)]) > inst_.t)
                    return false;
            return true;
        }
        for (int e : s)
            if (occupancy_[static_cast<std::size_t>(e)] + 1 > inst_.t) return false;
        return true;
    }

    void push(int candidate) {
        chosen_.push_back(candidate);
        if (inst_.mode == SetMode::membership)
            for (int e : inst_.sets[static_cast<std::size_t>(candidate)])
                ++occupancy_[static_cast<std::size_t>(e)];
    }

    void pop() {
        if (inst_.mode == SetMode::membership)
            for (int e : inst_.sets[static_cast<std::size_t>(chosen_.back())])
                --occupancy_[static_cast<std::size_t>(e)];
        chosen_.pop_back();
    }

    bool search(int from, int needed) {
        if (needed == 0) return true;
        const int total = static_cast<int>(inst_.sets.size());
        for (int i = from; i + needed <= total; ++i) {
            if (!compatible(i)) continue;
            push(i);
            if (search(i + 1, needed - 1)) return true;
            pop();
        }
        return false;
    }

    const SetInstance& inst_;
    std::vector<int> chosen_;
    std::vector<int> occupancy_;
};

}  // namespace

std::optional<PackingSolution> solve_set_exact(const SetInstance& inst, const OracleBudget& budget) {
    if (static_cast<int>(inst.sets.size()) > budget.max_sets && inst.k > budget.max_k)
        throw BudgetError("max_sets",
                          "exact search needs |S| <= " + std::to_string(budget.max_sets) +
                              " or k <= " + std::to_string(budget.max_k) + "; got |S|=" +
                              std::to_string(inst.sets.size()) + ", k=" + std::to_string(inst.k));
    if (inst.k == 0) return PackingSolution{};
    if (inst.k > static_cast<int>(inst.sets.size())) return std::nullopt;

    SetSearch search(inst);
    auto ids = search.find(inst.k);
    if (!ids) return std::nullopt;
    PackingSolution sol;
    for (int i : *ids) sol.sets.push_back(inst.sets[static_cast<std::size_t>(i)]);
    return sol;
}

namespace {

// Per-variant incremental constraints over catalog entries.
class GraphSearch {
 public:
    GraphSearch(const GraphInstance& inst, const std::vector<Subgraph>& entries)
        : inst_(inst), entries_(entries) {
        const GraphVariant v = inst.variant;
        pairwise_on_edges_ = v == GraphVariant::edge_overlap || v == GraphVariant::clique_edge_overlap;
        pairwise_on_vertices_ = v == GraphVariant::vertex_overlap || v == GraphVariant::induced_overlap;
        occupancy_on_edges_ = v == GraphVariant::edge_membership || v == GraphVariant::edge_membership_nisv;
        occupancy_on_vertices_ = v == GraphVariant::vertex_membership ||
                                 v == GraphVariant::induced_membership ||
                                 v == GraphVariant::vertex_membership_isv;
        distinct_vertex_sets_ = v == GraphVariant::vertex_membership ||
                                v == GraphVariant::induced_membership ||
                                v == GraphVariant::edge_membership_nisv;
        distinct_edge_sets_ = v == GraphVariant::edge_membership ||
                              v == GraphVariant::vertex_membership_isv;
        if (occupancy_on_vertices_) vertex_occ_.assign(static_cast<std::size_t>(inst.g.n), 0);
    }

    std::optional<std::vector<int>> find(int k) {
        if (search(0, k)) return chosen_;
        return std::nullopt;
    }

 private:
    bool compatible(int idx) const {
        const Subgraph& h = entries_[static_cast<std::size_t>(idx)];
        for (int c : chosen_) {
            const Subgraph& other = entries_[static_cast<std::size_t>(c)];
            if (distinct_vertex_sets_ && h.vertices == other.vertices) return false;
            if (distinct_edge_sets_ && h.edges == other.edges) return false;
            if (pairwise_on_vertices_ &&
                intersection_size(h.vertices, other.vertices) > inst_.t) return false;
            if (pairwise_on_edges_ && intersection_size(h.edges, other.edges) > inst_.t) return false;
        }
        if (occupancy_on_vertices_)
            for (int v : h.vertices)
                if (vertex_occ_[static_cast<std::size_t>(v)] + 1 > inst_.t) return false;
        if (occupancy_on_edges_)
            for (const auto& e : h.edges) {
                auto it = edge_occ_.find(e);
                if (it != edge_occ_.end() && it->second + 1 > inst_.t) return false;
            }
        return true;
    }

    void push(int idx) {
        chosen_.push_back(idx);
        const Subgraph& h = entries_[static_cast<std::size_t>(idx)];
        if (occupancy_on_vertices_)
            for (int v : h.vertices) ++vertex_occ_[static_cast<std::size_t>(v)];
        if (occupancy_on_edges_)
            for (const auto& e : h.edges) ++edge_occ_[e];
    }

    void pop() {
        const Subgraph& h = entries_[static_cast<std::size_t>(chosen_.back())];
        if (occupancy_on_vertices_)
            for (int v : h.vertices) --vertex_occ_[static_cast<std::size_t>(v)];
        if (occupancy_on_edges_)
            for (const auto& e : h.edges) --edge_occ_[e];
        chosen_.pop_back();
    }

    bool search(int from, int needed) {
        if (needed == 0) return true;
        const int total = static_cast<int>(entries_.size());
        for (int i = from; i + needed <= total; ++i) {
            if (!compatible(i)) continue;
            push(i);
            if (search(i + 1, needed - 1)) return true;
            pop();
        }
        return false;
    }

    const GraphInstance& inst_;
    const std::vector<Subgraph>& entries_;
    std::vector<int> chosen_;
    std::vector<int> vertex_occ_;
    std::map<Edge, int> edge_occ_;
    bool pairwise_on_edges_ = false, pairwise_on_vertices_ = false;
    bool occupancy_on_edges_ = false, occupancy_on_vertices_ = false;
    bool distinct_vertex_sets_ = false, distinct_edge_sets_ = false;
};

}  // namespace

std::optional<PackingSolution> solve_graph_exact(const GraphInstance& inst,
                                                 const OracleBudget& budget) {
    inst.validate();
    // Edge variants treat family members modulo their isolated vertices,
    // matching the kernelization pipelines.
    const bool strip = inst.variant == GraphVariant::edge_membership ||
                       inst.variant == GraphVariant::edge_membership_nisv ||
                       inst.variant == GraphVariant::edge_overlap;
    const GraphFamily family = strip ? detail::strip_isolated_family(inst.family) : inst.family;
    SubgraphCatalog cat =
        enumerate_subgraphs(inst.g, family, variant_is_induced(inst.variant), budget.enum_budget);
    if (static_cast<long long>(cat.entries.size()) > budget.max_catalog)
        throw BudgetError("max_catalog", "subgraph catalog has " +
                                             std::to_string(cat.entries.size()) +
                                             " entries, over the budget of " +
                                             std::to_string(budget.max_catalog));
    if (inst.k == 0) return PackingSolution{};
    if (inst.k > static_cast<int>(cat.entries.size())) return std::nullopt;

    GraphSearch search(inst, cat.entries);
    auto ids = search.find(inst.k);
    if (!ids) return std::nullopt;
    PackingSolution sol;
    for (int i : *ids) sol.subgraphs.push_back(cat.entries[static_cast<std::size_t>(i)]);
    return sol;
}

}  // namespace opk
