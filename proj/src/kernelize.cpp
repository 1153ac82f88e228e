#include "opk/kernelize.hpp"

#include <algorithm>
#include <set>

#include "graph_common.hpp"
#include "opk/errors.hpp"

namespace opk {

KernelOutcome kernelize_set(const SetInstance& inst, const KernelBudgets& budgets) {
    return inst.mode == SetMode::overlap ? kernelize_set_overlap(inst)
                                         : kernelize_set_membership(inst, budgets.transform_budget);
}

namespace {

GraphKernelOutcome run_graph_pass(const GraphInstance& inst, const KernelBudgets& budgets) {
    switch (inst.variant) {
        case GraphVariant::vertex_membership:
        case GraphVariant::induced_membership:
        case GraphVariant::edge_membership:
            return kernelize_graph_membership(inst, budgets.enum_budget, budgets.transform_budget);
        case GraphVariant::vertex_membership_isv:
            return kernelize_graph_membership_isv(inst, budgets.enum_budget,
                                                  budgets.transform_budget);
        case GraphVariant::edge_membership_nisv:
            return kernelize_graph_membership_nisv(inst, budgets.enum_budget,
                                                   budgets.transform_budget);
        default:
            return kernelize_graph_overlap(inst, budgets.enum_budget);
    }
}

Subgraph map_subgraph(const Subgraph& h, const std::vector<int>& to_original) {
    Subgraph out;
    for (int v : h.vertices) out.vertices.push_back(to_original[static_cast<std::size_t>(v)]);
    for (const auto& [u, v] : h.edges) {
        int a = to_original[static_cast<std::size_t>(u)], b = to_original[static_cast<std::size_t>(v)];
        if (a > b) std::swap(a, b);
        out.edges.push_back({a, b});
    }
    std::sort(out.vertices.begin(), out.vertices.end());
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

// The overlap presolve counts subgraphs at or below the bound; they are
// compatible with everything, so any shortfall in a later pass's witness is
// made up from the input graph's own small subgraphs.
std::vector<Subgraph> small_entries_of(const GraphInstance& inst, const EnumBudget& budget) {
    if (variant_is_membership(inst.variant)) return {};
    const bool edge_route = inst.variant == GraphVariant::edge_overlap;
    const bool clique_route = inst.variant == GraphVariant::clique_edge_overlap;
    GraphFamily family = edge_route ? detail::strip_isolated_family(inst.family) : inst.family;
    int limit = inst.t;
    if (clique_route) {
        const int r = family.max_vertices();
        limit = std::min(clique_overlap_bound(inst.t), std::max(r - 1, 0));
    }
    SubgraphCatalog cat =
        enumerate_subgraphs(inst.g, family, variant_is_induced(inst.variant), budget);
    std::vector<Subgraph> small;
    for (const auto& h : cat.entries) {
        const int size = edge_route ? static_cast<int>(h.edges.size())
                                    : static_cast<int>(h.vertices.size());
        if (size <= limit) small.push_back(h);
    }
    return small;
}

}  // namespace

GraphKernelOutcome kernelize_graph(const GraphInstance& inst, const KernelBudgets& budgets) {
    GraphInstance current = inst;
    std::vector<int> to_original(static_cast<std::size_t>(inst.g.n));
    for (int v = 0; v < inst.g.n; ++v) to_original[static_cast<std::size_t>(v)] = v;

    GraphKernelOutcome total;
    total.stats.elements_before = inst.g.n;
    bool first_pass = true;

    for (;;) {
        GraphKernelOutcome pass = run_graph_pass(current, budgets);
        if (first_pass) {
            total.trace = pass.trace;
            total.stats.sets_before = pass.stats.sets_before;
            total.stats.bound = pass.stats.bound;
            first_pass = false;
        }

        if (pass.early_solution) {
            PackingSolution sol;
            std::set<Subgraph> members;
            for (const auto& h : pass.early_solution->subgraphs) {
                Subgraph mapped = map_subgraph(h, to_original);
                members.insert(mapped);
                sol.subgraphs.push_back(std::move(mapped));
            }
            // Top up with the input graph's small subgraphs that the later
            // pass could no longer see.
            if (static_cast<int>(sol.subgraphs.size()) < inst.k) {
                for (const auto& h : small_entries_of(inst, budgets.enum_budget)) {
                    if (static_cast<int>(sol.subgraphs.size()) >= inst.k) break;
                    if (members.insert(h).second) sol.subgraphs.push_back(h);
                }
            }
            if (static_cast<int>(sol.subgraphs.size()) > inst.k)
                sol.subgraphs.resize(static_cast<std::size_t>(inst.k));
            total.early_solution = std::move(sol);
            total.stats.early_solution = true;
            total.stats.elements_after = total.stats.elements_before;
            total.stats.sets_after = total.stats.sets_before;
            return total;
        }

        // Compose the vertex maps; stop when the pass changed nothing.
        std::vector<int> next_map;
        next_map.reserve(pass.kept_vertices.size());
        for (int v : pass.kept_vertices)
            next_map.push_back(to_original[static_cast<std::size_t>(v)]);
        const bool stable = pass.reduced->g == current.g && pass.reduced->k == current.k;
        current = std::move(*pass.reduced);
        to_original = std::move(next_map);
        if (stable) break;
    }

    total.kept_vertices = to_original;
    total.stats.elements_after = current.g.n;
    {
        // Surviving catalog size, for the stats report.
        const bool edge_route = current.variant == GraphVariant::edge_overlap ||
                                current.variant == GraphVariant::edge_membership ||
                                current.variant == GraphVariant::edge_membership_nisv;
        GraphFamily family =
            edge_route ? detail::strip_isolated_family(current.family) : current.family;
        SubgraphCatalog cat = enumerate_subgraphs(current.g, family,
                                                  variant_is_induced(current.variant),
                                                  budgets.enum_budget);
        total.stats.sets_after = static_cast<long long>(cat.entries.size());
    }
    total.reduced = std::move(current);
    return total;
}

}  // namespace opk
