#include "opk/matching.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace opk {

namespace {

constexpr int kInf = std::numeric_limits<int>::max();

class HopcroftKarp {
 public:
    explicit HopcroftKarp(const ConflictBipartite& b) : b_(b) {
        match_left_.assign(static_cast<std::size_t>(b.n_left), -1);
        match_right_.assign(static_cast<std::size_t>(b.n_right), -1);
        dist_.assign(static_cast<std::size_t>(b.n_left), kInf);
    }

    std::vector<std::pair<int, int>> run() {
        while (bfs()) {
            for (int u = 0; u < b_.n_left; ++u)
                if (match_left_[static_cast<std::size_t>(u)] == -1) dfs(u);
        }
        std::vector<std::pair<int, int>> out;
        for (int u = 0; u < b_.n_left; ++u)
            if (match_left_[static_cast<std::size_t>(u)] != -1)
                out.push_back({u, match_left_[static_cast<std::size_t>(u)]});
        return out;
    }

 private:
    bool bfs() {
        std::queue<int> q;
        for (int u = 0; u < b_.n_left; ++u) {
            if (match_left_[static_cast<std::size_t>(u)] == -1) {
                dist_[static_cast<std::size_t>(u)] = 0;
                q.push(u);
            } else {
                dist_[static_cast<std::size_t>(u)] = kInf;
            }
        }
        bool reachable_free = false;
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (int v : b_.adj[static_cast<std::size_t>(u)]) {
                const int w = match_right_[static_cast<std::size_t>(v)];
                if (w == -1) {
                    reachable_free = true;
                } else if (dist_[static_cast<std::size_t>(w)] == kInf) {
                    dist_[static_cast<std::size_t>(w)] = dist_[static_cast<std::size_t>(u)] + 1;
                    q.push(w);
                }
            }
        }
        return reachable_free;
    }

    bool dfs(int u) {
        for (int v : b_.adj[static_cast<std::size_t>(u)]) {
            const int w = match_right_[static_cast<std::size_t>(v)];
            if (w == -1 ||
                (dist_[static_cast<std::size_t>(w)] == dist_[static_cast<std::size_t>(u)] + 1 && dfs(w))) {
                match_left_[static_cast<std::size_t>(u)] = v;
                match_right_[static_cast<std::size_t>(v)] = u;
                return true;
            }
        }
        dist_[static_cast<std::size_t>(u)] = kInf;
        return false;
    }

    const ConflictBipartite& b_;
    std::vector<int> match_left_, match_right_, dist_;
};

// Edmonds' blossom algorithm with the usual base-array contraction trick.
class Blossom {
 public:
    explicit Blossom(const Graph& g) : n_(g.n), adj_(g.adjacency()) {
        match_.assign(static_cast<std::size_t>(n_), -1);
        parent_.assign(static_cast<std::size_t>(n_), -1);
        base_.assign(static_cast<std::size_t>(n_), 0);
    }

    std::vector<std::pair<int, int>> run() {
        for (int v = 0; v < n_; ++v)
            if (match_[static_cast<std::size_t>(v)] == -1) augment_from(v);
        std::vector<std::pair<int, int>> out;
        for (int v = 0; v < n_; ++v)
            if (match_[static_cast<std::size_t>(v)] > v)
                out.push_back({v, match_[static_cast<std::size_t>(v)]});
        return out;
    }

 private:
    int lowest_common_ancestor(int a, int b) {
        std::vector<bool> seen(static_cast<std::size_t>(n_), false);
        for (;;) {
            a = base_[static_cast<std::size_t>(a)];
            seen[static_cast<std::size_t>(a)] = true;
            if (match_[static_cast<std::size_t>(a)] == -1) break;
            a = parent_[static_cast<std::size_t>(match_[static_cast<std::size_t>(a)])];
        }
        for (;;) {
            b = base_[static_cast<std::size_t>(b)];
            if (seen[static_cast<std::size_t>(b)]) return b;
            b = parent_[static_cast<std::size_t>(match_[static_cast<std::size_t>(b)])];
        }
    }

    void mark_path(std::vector<bool>& in_blossom, int v, int ancestor, int child) {
        while (base_[static_cast<std::size_t>(v)] != ancestor) {
            in_blossom[static_cast<std::size_t>(base_[static_cast<std::size_t>(v)])] = true;
            const int mv = match_[static_cast<std::size_t>(v)];
            in_blossom[static_cast<std::size_t>(base_[static_cast<std::size_t>(mv)])] = true;
            parent_[static_cast<std::size_t>(v)] = child;
            child = mv;
            v = parent_[static_cast<std::size_t>(mv)];
        }
    }

    int find_augmenting_path(int root) {
        std::fill(parent_.begin(), parent_.end(), -1);
        std::vector<bool> used(static_cast<std::size_t>(n_), false);
        for (int v = 0; v < n_; ++v) base_[static_cast<std::size_t>(v)] = v;
        used[static_cast<std::size_t>(root)] = true;
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            const int v = q.front();
            q.pop();
            for (int to : adj_[static_cast<std::size_t>(v)]) {
                if (base_[static_cast<std::size_t>(v)] == base_[static_cast<std::size_t>(to)] ||
                    match_[static_cast<std::size_t>(v)] == to)
                    continue;
                if (to == root ||
                    (match_[static_cast<std::size_t>(to)] != -1 &&
                     parent_[static_cast<std::size_t>(match_[static_cast<std::size_t>(to)])] != -1)) {
                    // Odd cycle: contract the blossom at the common ancestor.
                    const int ancestor = lowest_common_ancestor(v, to);
                    std::vector<bool> in_blossom(static_cast<std::size_t>(n_), false);
                    mark_path(in_blossom, v, ancestor, to);
                    mark_path(in_blossom, to, ancestor, v);
                    for (int u = 0; u < n_; ++u) {
                        if (in_blossom[static_cast<std::size_t>(base_[static_cast<std::size_t>(u)])]) {
                            base_[static_cast<std::size_t>(u)] = ancestor;
                            if (!used[static_cast<std::size_t>(u)]) {
                                used[static_cast<std::size_t>(u)] = true;
                                q.push(u);
                            }
                        }
                    }
                } else if (parent_[static_cast<std::size_t>(to)] == -1) {
                    parent_[static_cast<std::size_t>(to)] = v;
                    if (match_[static_cast<std::size_t>(to)] == -1) return to;
                    used[static_cast<std::size_t>(match_[static_cast<std::size_t>(to)])] = true;
                    q.push(match_[static_cast<std::size_t>(to)]);
                }
            }
        }
        return -1;
    }

    void augment_from(int root) {
        const int leaf = find_augmenting_path(root);
        if (leaf == -1) return;
        int v = leaf;
        while (v != -1) {
            const int pv = parent_[static_cast<std::size_t>(v)];
            const int next = match_[static_cast<std::size_t>(pv)];
            match_[static_cast<std::size_t>(v)] = pv;
            match_[static_cast<std::size_t>(pv)] = v;
            v = next;
        }
    }

    int n_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> match_, parent_, base_;
};

}  // namespace

std::vector<std::pair<int, int>> bipartite_max_matching(const ConflictBipartite& b) {
    return HopcroftKarp(b).run();
}

std::vector<std::pair<int, int>> general_max_matching(const Graph& g) {
    return Blossom(g).run();
}

}  // namespace opk
