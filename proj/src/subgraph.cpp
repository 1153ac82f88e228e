#include "opk/subgraph.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "opk/errors.hpp"

namespace opk {

namespace {

// Backtracking embedder for one pattern. Pattern vertices are matched in a
// connectivity-first order; candidates for a vertex adjacent to an already
// matched one come from that image's neighborhood. Pattern vertices with
// identical neighborhoods (twins) are forced onto increasing host ids, which
// collapses most automorphic re-discoveries before the set-based dedup.
class Embedder {
 public:
    Embedder(const Graph& host, const Graph& pattern, bool induced, long long& nodes_left)
        : host_(host), pattern_(pattern), induced_(induced), nodes_left_(nodes_left) {
        host_adj_ = host.adjacency();
        pat_adj_ = pattern.adjacency();
        order_ = matching_order();
        position_.assign(static_cast<std::size_t>(pattern.n), -1);
        for (std::size_t i = 0; i < order_.size(); ++i)
            position_[static_cast<std::size_t>(order_[i])] = static_cast<int>(i);
        twin_before_ = twin_constraints();
        image_.assign(static_cast<std::size_t>(pattern.n), -1);
        used_.assign(static_cast<std::size_t>(host.n), false);
    }

    void run(std::set<Subgraph>& out) {
        out_ = &out;
        stop_after_first_ = false;
        extend(0);
    }

    // Decision-only use: stop at the first embedding.
    bool exists() {
        std::set<Subgraph> scratch;
        out_ = &scratch;
        stop_after_first_ = true;
        extend(0);
        return !scratch.empty();
    }

 private:
    std::vector<int> matching_order() {
        // Start from the highest-degree vertex, then prefer vertices with
        // the most already-ordered neighbors (ties by degree, then id).
        const int np = pattern_.n;
        std::vector<int> order;
        std::vector<bool> placed(static_cast<std::size_t>(np), false);
        for (int step = 0; step < np; ++step) {
            int best = -1, best_conn = -1, best_deg = -1;
            for (int v = 0; v < np; ++v) {
                if (placed[static_cast<std::size_t>(v)]) continue;
                int conn = 0;
                for (int u : pat_adj_[static_cast<std::size_t>(v)])
                    if (placed[static_cast<std::size_t>(u)]) ++conn;
                const int deg = static_cast<int>(pat_adj_[static_cast<std::size_t>(v)].size());
                if (conn > best_conn || (conn == best_conn && deg > best_deg)) {
                    best = v;
                    best_conn = conn;
                    best_deg = deg;
                }
            }
            placed[static_cast<std::size_t>(best)] = true;
            order.push_back(best);
        }
        return order;
    }

    std::vector<int> twin_constraints() {
        // twin_before[v] = pattern vertex u ordered before v with the same
        // open neighborhood (excluding each other), or -1.
        const int np = pattern_.n;
        std::vector<int> twin(static_cast<std::size_t>(np), -1);
        for (int v = 0; v < np; ++v) {
            for (int u = 0; u < np; ++u) {
                if (u == v) continue;
                if (position_[static_cast<std::size_t>(u)] >= position_[static_cast<std::size_t>(v)])
                    continue;
                // Identical neighborhoods up to each other: the transposition
                // (u v) is a pattern automorphism whether or not u,v are
                // adjacent, so images may be forced into increasing order.
                std::vector<int> nu = pat_adj_[static_cast<std::size_t>(u)];
                std::vector<int> nv = pat_adj_[static_cast<std::size_t>(v)];
                std::erase(nu, v);
                std::erase(nv, u);
                if (nu == nv) {
                    if (twin[static_cast<std::size_t>(v)] == -1 ||
                        position_[static_cast<std::size_t>(u)] >
                            position_[static_cast<std::size_t>(twin[static_cast<std::size_t>(v)])])
                        twin[static_cast<std::size_t>(v)] = u;
                }
            }
        }
        return twin;
    }

    bool feasible(int pv, int hv) const {
        if (used_[static_cast<std::size_t>(hv)]) return false;
        if (host_adj_[static_cast<std::size_t>(hv)].size() < pat_adj_[static_cast<std::size_t>(pv)].size())
            return false;
        const int tw = twin_before_[static_cast<std::size_t>(pv)];
        if (tw != -1 && image_[static_cast<std::size_t>(tw)] != -1 &&
            hv < image_[static_cast<std::size_t>(tw)])
            return false;
        for (int pu : pat_adj_[static_cast<std::size_t>(pv)]) {
            const int hu = image_[static_cast<std::size_t>(pu)];
            if (hu != -1 && !host_.has_edge(hu, hv)) return false;
        }
        if (induced_) {
            // Mapped non-neighbors of pv must be non-adjacent to hv too.
            for (int pu = 0; pu < pattern_.n; ++pu) {
                const int hu = image_[static_cast<std::size_t>(pu)];
                if (pu == pv || hu == -1) continue;
                if (!pattern_.has_edge(pu, pv) && host_.has_edge(hu, hv)) return false;
            }
        }
        return true;
    }

    // Returns true when the search should unwind (decision-only mode).
    bool extend(std::size_t depth) {
        if (nodes_left_-- <= 0)
            throw BudgetError("enum_nodes", "subgraph enumeration exceeded its node budget");
        if (depth == order_.size()) {
            record();
            return stop_after_first_;
        }
        const int pv = order_[depth];
        // Candidate pool: neighbors of an already-mapped pattern neighbor
        // when one exists, otherwise every host vertex.
        int anchor = -1;
        for (int pu : pat_adj_[static_cast<std::size_t>(pv)])
            if (image_[static_cast<std::size_t>(pu)] != -1) { anchor = image_[static_cast<std::size_t>(pu)]; break; }
        const std::vector<int>* pool = nullptr;
        std::vector<int> everything;
        if (anchor != -1) {
            pool = &host_adj_[static_cast<std::size_t>(anchor)];
        } else {
            everything.resize(static_cast<std::size_t>(host_.n));
            for (int v = 0; v < host_.n; ++v) everything[static_cast<std::size_t>(v)] = v;
            pool = &everything;
        }
        for (int hv : *pool) {
            if (!feasible(pv, hv)) continue;
            image_[static_cast<std::size_t>(pv)] = hv;
            used_[static_cast<std::size_t>(hv)] = true;
            const bool done = extend(depth + 1);
            used_[static_cast<std::size_t>(hv)] = false;
            image_[static_cast<std::size_t>(pv)] = -1;
            if (done) return true;
        }
        return false;
    }

    void record() {
        Subgraph h;
        h.vertices.reserve(static_cast<std::size_t>(pattern_.n));
        for (int pv = 0; pv < pattern_.n; ++pv)
            h.vertices.push_back(image_[static_cast<std::size_t>(pv)]);
        std::sort(h.vertices.begin(), h.vertices.end());
        if (induced_) {
            for (std::size_t i = 0; i < h.vertices.size(); ++i)
                for (std::size_t j = i + 1; j < h.vertices.size(); ++j)
                    if (host_.has_edge(h.vertices[i], h.vertices[j]))
                        h.edges.push_back({h.vertices[i], h.vertices[j]});
        } else {
            for (const auto& [pu, pv] : pattern_.edges) {
                int a = image_[static_cast<std::size_t>(pu)], b = image_[static_cast<std::size_t>(pv)];
                if (a > b) std::swap(a, b);
                h.edges.push_back({a, b});
            }
        }
        std::sort(h.edges.begin(), h.edges.end());
        out_->insert(std::move(h));
    }

    const Graph& host_;
    const Graph& pattern_;
    bool induced_;
    long long& nodes_left_;
    std::vector<std::vector<int>> host_adj_, pat_adj_;
    std::vector<int> order_;      // pattern vertices in matching order
    std::vector<int> position_;   // inverse of order_
    std::vector<int> twin_before_;
    std::vector<int> image_;
    std::vector<bool> used_;
    std::set<Subgraph>* out_ = nullptr;
    bool stop_after_first_ = false;
};

}  // namespace

SubgraphCatalog enumerate_subgraphs(const Graph& g, const GraphFamily& family, bool induced,
                                    const EnumBudget& budget) {
    long long nodes_left = budget.max_nodes;
    std::set<Subgraph> found;
    for (const auto& member : family.members) {
        if (member.n > g.n) continue;
        Embedder embedder(g, member, induced, nodes_left);
        embedder.run(found);
    }
    SubgraphCatalog cat;
    cat.entries.assign(found.begin(), found.end());
    return cat;
}

SubgraphCatalog dedupe_by_vertex_set(const SubgraphCatalog& cat) {
    SubgraphCatalog out;
    out.deduped = true;
    // Entries are sorted by (vertices, edges), so the first entry of each
    // vertex-set group carries the lexicographically smallest edge set.
    for (const auto& h : cat.entries)
        if (out.entries.empty() || out.entries.back().vertices != h.vertices)
            out.entries.push_back(h);
    return out;
}

Collections derive_collections(const SubgraphCatalog& cat) {
    std::set<std::vector<Edge>> edge_sets;
    std::set<std::vector<int>> vertex_sets;
    for (const auto& h : cat.entries) {
        edge_sets.insert(h.edges);
        vertex_sets.insert(h.vertices);
    }
    Collections out;
    out.edge_sets.assign(edge_sets.begin(), edge_sets.end());
    out.vertex_sets.assign(vertex_sets.begin(), vertex_sets.end());
    return out;
}

bool subgraph_matches_family(const Subgraph& h, const GraphFamily& family) {
    // Re-index the subgraph to a standalone graph, then look for a bijective
    // embedding of a member with the same vertex and edge counts.
    std::map<int, int> to_new;
    for (std::size_t i = 0; i < h.vertices.size(); ++i)
        to_new[h.vertices[i]] = static_cast<int>(i);
    std::vector<Edge> edges;
    edges.reserve(h.edges.size());
    for (const auto& [u, v] : h.edges) {
        auto iu = to_new.find(u), iv = to_new.find(v);
        if (iu == to_new.end() || iv == to_new.end()) return false;
        edges.push_back({iu->second, iv->second});
    }
    Graph self;
    try {
        self = Graph::from_edges(static_cast<int>(h.vertices.size()), std::move(edges));
    } catch (const ParseError&) {
        return false;
    }
    for (const auto& member : family.members) {
        if (member.n != self.n || member.edges.size() != self.edges.size()) continue;
        // Same counts: any embedding is an isomorphism.
        long long nodes = 10'000'000;
        Embedder embedder(self, member, false, nodes);
        if (embedder.exists()) return true;
    }
    return false;
}

}  // namespace opk
