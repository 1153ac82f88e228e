#include "opk/gadgets.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <string>

#include "opk/errors.hpp"

namespace opk {

Graph make_clique(int n) {
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.push_back({u, v});
    return Graph::from_edges(n, std::move(edges));
}

Graph make_path(int n) {
    std::vector<Edge> edges;
    for (int v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
    return Graph::from_edges(n, std::move(edges));
}

Graph make_cycle(int n) {
    std::vector<Edge> edges;
    for (int v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
    if (n >= 3) edges.push_back({0, n - 1});
    return Graph::from_edges(n, std::move(edges));
}

LiftedInstance lift_p3_membership(const Graph& g, int k, int t) {
    if (t < 1) throw std::invalid_argument("t must be at least 1");
    LiftedInstance out;
    const int block = t + 1;
    out.padded_n = ((g.n + block - 1) / block) * block;
    const int n_new = 2 * out.padded_n / block;
    std::vector<Edge> edges = g.edges;
    for (int i = 0; i < out.padded_n; i += block) {
        const int u0 = out.padded_n + 2 * (i / block);
        const int u1 = u0 + 1;
        for (int j = 0; j <= t; ++j) edges.push_back({i + j, u0});
        edges.push_back({u0, u1});
    }
    out.graph = Graph::from_edges(out.padded_n + n_new, std::move(edges));
    out.k_new = out.padded_n + k;
    out.origin.assign(static_cast<std::size_t>(out.graph.n), -1);
    for (int v = 0; v < g.n; ++v) out.origin[static_cast<std::size_t>(v)] = v;
    return out;
}

LiftedInstance lift_c3_edge_membership(const Graph& g, int k, int t) {
    if (t < 1) throw std::invalid_argument("t must be at least 1");
    LiftedInstance out;
    out.padded_n = g.n;
    std::vector<Edge> edges = g.edges;
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        const int w = g.n + static_cast<int>(i);
        edges.push_back({g.edges[i].first, w});
        edges.push_back({g.edges[i].second, w});
    }
    out.graph = Graph::from_edges(g.n + static_cast<int>(g.edges.size()), std::move(edges));
    out.k_new = k + static_cast<int>(g.edges.size());
    out.origin.assign(static_cast<std::size_t>(out.graph.n), -1);
    for (int v = 0; v < g.n; ++v) out.origin[static_cast<std::size_t>(v)] = v;
    return out;
}

StarGadget star_overlap_gadget(const Graph& g, int t) {
    for (int v = 0; v < g.n; ++v)
        if (g.degree(v) > 4)
            throw ParseError("star gadget requires maximum degree 4, vertex " + std::to_string(v) +
                             " has degree " + std::to_string(g.degree(v)));
    StarGadget out;
    out.star_size = std::max(5, t - 1);

    auto attach_stars = [&](const Graph& base) {
        std::vector<Edge> edges = base.edges;
        int next = base.n;
        for (int v = 0; v < base.n; ++v) {
            const int center = next++;
            edges.push_back({v, center});
            for (int leaf = 0; leaf < out.star_size; ++leaf) edges.push_back({center, next++});
        }
        return Graph::from_edges(next, std::move(edges));
    };

    out.graph = attach_stars(g);
    out.pattern = attach_stars(make_clique(3));
    return out;
}

SetInstance random_set_instance(SplitMix64& rng, SetMode mode, int max_n, int max_sets) {
    SetInstance inst;
    inst.mode = mode;
    inst.r = rng.uniform_int(2, 4);
    inst.t = mode == SetMode::overlap ? rng.uniform_int(0, inst.r - 2)
                                      : rng.uniform_int(1, 3);
    inst.k = rng.uniform_int(1, 4);
    const int n = rng.uniform_int(4, std::max(4, std::min(max_n, 12)));
    for (int e = 0; e < n; ++e) inst.universe.push_back(std::string(1, static_cast<char>('a' + e)));

    const int min_size = mode == SetMode::overlap ? inst.t + 1 : 1;
    const int want = rng.uniform_int(3, std::max(3, max_sets));
    std::set<std::vector<int>> seen;
    for (int attempt = 0; attempt < want * 4 && static_cast<int>(seen.size()) < want; ++attempt) {
        const int size = rng.uniform_int(std::min(min_size, inst.r), inst.r);
        std::vector<int> s = rng.sample_without_replacement(n, size);
        seen.insert(std::move(s));
    }
    inst.sets.assign(seen.begin(), seen.end());
    return inst;
}

SetInstance random_clustered_set_instance(SplitMix64& rng) {
    SetInstance inst;
    inst.mode = SetMode::overlap;
    inst.r = rng.uniform_int(3, 4);
    inst.t = rng.uniform_int(0, inst.r - 2);

    // Elements are minted on demand; tails stay private to their set so the
    // stems' satellites really end up outside the maximal packing.
    int next_element = 0;
    auto fresh = [&](int count) {
        std::vector<int> out;
        for (int i = 0; i < count; ++i) out.push_back(next_element++);
        return out;
    };
    std::set<std::vector<int>> sets;
    auto add_cluster = [&](int stem_size, int members) {
        const std::vector<int> stem = fresh(stem_size);
        for (int i = 0; i < members; ++i) {
            std::vector<int> s = stem;
            for (int e : fresh(inst.r - stem_size)) s.push_back(e);
            std::sort(s.begin(), s.end());
            sets.insert(std::move(s));
        }
    };
    // Stems of size r-1 leave one-element tails: the matching rule's shape.
    int clusters = 0;
    for (int c = rng.uniform_int(1, 2); c > 0; --c, ++clusters)
        add_cluster(inst.r - 1, rng.uniform_int(3, 5));

    // The clusters are pairwise disjoint, so a maximal (r,t)-packing holds
    // about one set per cluster; k just above that reaches the matching
    // stage instead of the early exit.
    inst.k = clusters + 1 + rng.uniform_int(1, 2);

    // Stems of size r-2 coexist inside a maximal packing; f(r-2) members
    // survive the counting rule, so plant a couple more than that.
    const int f = (inst.r - inst.t) * (inst.k - 1) + 1;
    add_cluster(inst.r - 2, f + 2);
    ++clusters;

    // A little unstructured noise over the elements minted so far.
    const int pool = next_element;
    for (int noise = rng.uniform_int(1, 3); noise > 0 && pool >= inst.r; --noise) {
        std::vector<int> s =
            rng.sample_without_replacement(pool, rng.uniform_int(inst.t + 1, inst.r));
        sets.insert(std::move(s));
    }

    for (int e = 0; e < next_element; ++e) {
        char label[16];
        std::snprintf(label, sizeof label, "e%02d", e);
        inst.universe.push_back(label);
    }
    inst.sets.assign(sets.begin(), sets.end());
    return inst;
}

Graph random_graph(SplitMix64& rng, int min_n, int max_n) {
    const int n = rng.uniform_int(min_n, max_n);
    const int density = rng.uniform_int(25, 60);  // percent
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.uniform_int(1, 100) <= density) edges.push_back({u, v});
    return Graph::from_edges(n, std::move(edges));
}

GraphInstance random_graph_instance(SplitMix64& rng, GraphVariant variant, int max_n) {
    GraphInstance inst;
    inst.variant = variant;
    inst.g = random_graph(rng, 4, max_n);
    if (variant == GraphVariant::clique_edge_overlap) {
        inst.family.members = rng.uniform_int(0, 1) ? std::vector<Graph>{make_clique(3)}
                                                    : std::vector<Graph>{make_clique(3), make_clique(4)};
    } else {
        switch (rng.uniform_int(0, 2)) {
            case 0: inst.family.members = {make_clique(3)}; break;
            case 1: inst.family.members = {make_path(3)}; break;
            default: inst.family.members = {make_cycle(4), make_clique(4)}; break;
        }
    }
    const int r = variant_is_edge_based(variant) && variant != GraphVariant::clique_edge_overlap
                      ? inst.family.max_edges()
                      : inst.family.max_vertices();
    if (variant_is_membership(variant)) {
        inst.t = rng.uniform_int(1, 3);
    } else if (variant == GraphVariant::clique_edge_overlap) {
        inst.t = rng.uniform_int(0, 4);
    } else {
        inst.t = rng.uniform_int(0, std::max(r - 1, 0));
    }
    inst.k = rng.uniform_int(1, 4);
    return inst;
}

}  // namespace opk
