#include "opk/p2.hpp"

#include <algorithm>
#include <stdexcept>

#include "opk/matching.hpp"

namespace opk {

Graph DcsGadget::support() const {
    std::vector<Edge> distinct = edges;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    return Graph::from_edges(n, std::move(distinct));
}

DcsGadget build_dcs_gadget(const Graph& g, const std::vector<int>& b) {
    if (static_cast<int>(b.size()) != g.n)
        throw std::invalid_argument("degree constraint must cover every vertex");
    DcsGadget gadget;
    gadget.stub_offset.resize(static_cast<std::size_t>(g.n));
    int next = 0;
    for (int v = 0; v < g.n; ++v) {
        gadget.stub_offset[static_cast<std::size_t>(v)] = next;
        next += b[static_cast<std::size_t>(v)];
    }
    gadget.stub_count = next;

    const int m = static_cast<int>(g.edges.size());
    gadget.n = gadget.stub_count + 2 * m;
    for (int i = 0; i < m; ++i) {
        const auto [u, v] = g.edges[static_cast<std::size_t>(i)];
        const int node_u = gadget.stub_count + 2 * i;
        const int node_v = node_u + 1;
        const int internal_copies =
            std::max(1, std::min(b[static_cast<std::size_t>(u)], b[static_cast<std::size_t>(v)]));
        for (int c = 0; c < internal_copies; ++c) gadget.edges.push_back({node_u, node_v});
        for (int s = 0; s < b[static_cast<std::size_t>(u)]; ++s)
            gadget.edges.push_back({gadget.stub_offset[static_cast<std::size_t>(u)] + s, node_u});
        for (int s = 0; s < b[static_cast<std::size_t>(v)]; ++s)
            gadget.edges.push_back({gadget.stub_offset[static_cast<std::size_t>(v)] + s, node_v});
    }
    return gadget;
}

std::vector<Edge> solve_degree_constrained(const Graph& g, const std::vector<int>& b) {
    const DcsGadget gadget = build_dcs_gadget(g, b);
    const auto matching = general_max_matching(gadget.support());

    // An edge is selected when both of its gadget nodes are matched to
    // stubs; unselected edges keep an internal edge matched instead.
    std::vector<int> partner(static_cast<std::size_t>(gadget.n), -1);
    for (const auto& [x, y] : matching) {
        partner[static_cast<std::size_t>(x)] = y;
        partner[static_cast<std::size_t>(y)] = x;
    }
    std::vector<Edge> chosen;
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        const int node_u = gadget.stub_count + 2 * static_cast<int>(i);
        const int node_v = node_u + 1;
        const int pu = partner[static_cast<std::size_t>(node_u)];
        const int pv = partner[static_cast<std::size_t>(node_v)];
        if (pu != -1 && pu < gadget.stub_count && pv != -1 && pv < gadget.stub_count)
            chosen.push_back(g.edges[i]);
    }
    return chosen;
}

std::optional<PackingSolution> solve_p2_membership(const Graph& g, int t, int k) {
    if (t < 1) throw std::invalid_argument("t must be at least 1");
    const std::vector<int> b(static_cast<std::size_t>(g.n), t);
    std::vector<Edge> chosen = solve_degree_constrained(g, b);
    if (static_cast<int>(chosen.size()) < k) return std::nullopt;
    std::sort(chosen.begin(), chosen.end());
    chosen.resize(static_cast<std::size_t>(k));
    PackingSolution sol;
    for (const auto& [u, v] : chosen)
        sol.subgraphs.push_back(Subgraph{{u, v}, {{u, v}}});
    return sol;
}

}  // namespace opk
