#include "opk/overlap_kernel.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include "graph_common.hpp"
#include "opk/errors.hpp"

namespace opk {

namespace {

long long saturating_mul(long long a, long long b, long long cap) {
    if (a == 0 || b == 0) return 0;
    if (a > cap / b) return cap;
    return std::min(a * b, cap);
}

long long saturating_pow(long long base, int exp, long long cap) {
    long long out = 1;
    for (int i = 0; i < exp; ++i) out = saturating_mul(out, base, cap);
    return out;
}

// 4 r^r k^(r-t-1), the universe bound claimed for the reduced instance.
long long overlap_bound(int r, int t, int k) {
    const long long cap = (1LL << 62);
    long long b = saturating_mul(4, saturating_pow(r, r, cap), cap);
    return saturating_mul(b, saturating_pow(std::max(k, 0), r - t - 1, cap), cap);
}

}  // namespace

long long overlap_reduction_bound(int r, int t, int k) {
    const long long cap = (1LL << 62);
    long long b = saturating_mul(2, saturating_pow(r, r, cap), cap);
    return saturating_mul(b, saturating_pow(std::max(k, 0), r - t - 1, cap), cap);
}

namespace {

// All i-element subsets of s, emitted in lexicographic order.
void for_each_subset(const std::vector<int>& s, int i,
                     const std::function<void(const std::vector<int>&)>& fn) {
    const int n = static_cast<int>(s.size());
    if (i > n || i < 0) return;
    std::vector<int> pick(static_cast<std::size_t>(i));
    std::function<void(int, int)> rec = [&](int from, int depth) {
        if (depth == i) {
            fn(pick);
            return;
        }
        for (int j = from; j <= n - (i - depth); ++j) {
            pick[static_cast<std::size_t>(depth)] = s[static_cast<std::size_t>(j)];
            rec(j + 1, depth + 1);
        }
    };
    rec(0, 0);
}

}  // namespace

PresolveResult presolve_small_sets(const SetInstance& inst) {
    PresolveResult out;
    out.rest = inst;
    out.rest.sets.clear();
    for (const auto& s : inst.sets) {
        if (static_cast<int>(s.size()) <= inst.t) out.forced.push_back(s);
        else out.rest.sets.push_back(s);
    }
    out.rest.k = inst.k - static_cast<int>(out.forced.size());
    return out;
}

std::optional<bool> handle_t_max(const SetInstance& inst) {
    if (inst.t != inst.r - 1) return std::nullopt;
    return static_cast<int>(inst.sets.size()) >= inst.k;
}

SetInstance reduce_unused_elements(const SetInstance& inst) {
    std::vector<bool> used(static_cast<std::size_t>(inst.element_count()), false);
    for (const auto& s : inst.sets)
        for (int e : s) used[static_cast<std::size_t>(e)] = true;
    std::vector<int> remap(static_cast<std::size_t>(inst.element_count()), -1);
    SetInstance out;
    for (int e = 0; e < inst.element_count(); ++e) {
        if (used[static_cast<std::size_t>(e)]) {
            remap[static_cast<std::size_t>(e)] = static_cast<int>(out.universe.size());
            out.universe.push_back(inst.label(e));
        }
    }
    for (const auto& s : inst.sets) {
        std::vector<int> mapped;
        mapped.reserve(s.size());
        for (int e : s) mapped.push_back(remap[static_cast<std::size_t>(e)]);
        out.sets.push_back(std::move(mapped));
    }
    out.r = inst.r;
    out.t = inst.t;
    out.k = inst.k;
    out.mode = inst.mode;
    return out;
}

std::vector<std::vector<int>> greedy_maximal_packing(const std::vector<std::vector<int>>& sets,
                                                     int q,
                                                     std::vector<std::vector<int>> existing) {
    std::vector<std::vector<int>> candidates = sets;
    std::sort(candidates.begin(), candidates.end());
    std::set<std::vector<int>> member(existing.begin(), existing.end());
    for (const auto& s : candidates) {
        if (member.count(s)) continue;
        bool ok = true;
        for (const auto& m : member)
            if (intersection_size(s, m) > q) { ok = false; break; }
        if (ok) {
            member.insert(s);
            existing.push_back(s);
        }
    }
    return existing;
}

long long threshold_f(int i, int t_ini, int r, int t, int k, long long cap) {
    if (i < t + 1 || i > t_ini + 1)
        throw std::invalid_argument("threshold_f needs t+1 <= i <= t_ini+1; got i=" +
                                    std::to_string(i));
    const long long x = static_cast<long long>(r - t) * std::max(k - 1, 0);
    long long f = 1;  // f(t_ini + 1)
    for (int j = t_ini; j >= i; --j)
        f = std::min(saturating_mul(x, f, cap) + 1, cap);
    return f;
}

namespace {

// Id-based worker so the pipeline can share one implementation with the
// public extra_sets_reduction. `sets` must be canonically sorted; R ids are
// kept ascending, which makes id order the canonical set order.
struct ExtraSetsWorker {
    const std::vector<std::vector<int>>& sets;
    int r, t, k;

    std::vector<int> extras = {};
    std::map<int, long long> f_table = {};
    int t_ini = 0;

    // Removes extras from `alive` (a sorted id list) in place and returns
    // this invocation's removals in ascending id order.
    std::vector<int> run(std::vector<int>& alive) {
        std::vector<int> removed_now;
        t_ini = max_shared_subset_size(alive);
        if (t_ini < t + 1) return removed_now;
        const long long cap = static_cast<long long>(alive.size()) + 1;
        f_table.clear();
        for (int i = t + 1; i <= t_ini; ++i) f_table[i] = threshold_f(i, t_ini, r, t, k, cap);
        for (int i = t_ini; i >= t + 1; --i) {
            // P -> ids of alive sets properly containing P.
            std::map<std::vector<int>, std::vector<int>> groups;
            for (int id : alive) {
                const auto& s = sets[static_cast<std::size_t>(id)];
                if (static_cast<int>(s.size()) <= i) continue;
                for_each_subset(s, i, [&](const std::vector<int>& p) { groups[p].push_back(id); });
            }
            std::set<int> dead;
            for (auto& [p, ids] : groups) {
                std::vector<int> live;
                for (int id : ids)
                    if (!dead.count(id)) live.push_back(id);
                const long long limit = f_table[i];
                if (static_cast<long long>(live.size()) > limit) {
                    for (std::size_t j = static_cast<std::size_t>(limit); j < live.size(); ++j) {
                        dead.insert(live[j]);
                        removed_now.push_back(live[j]);
                    }
                }
            }
            if (!dead.empty()) {
                std::vector<int> next;
                for (int id : alive)
                    if (!dead.count(id)) next.push_back(id);
                alive = std::move(next);
            }
        }
        std::sort(removed_now.begin(), removed_now.end());
        extras.insert(extras.end(), removed_now.begin(), removed_now.end());
        return removed_now;
    }

    // Largest i such that some i-element subset lies in two or more sets;
    // equals the maximum pairwise overlap.
    int max_shared_subset_size(const std::vector<int>& alive) const {
        int max_size = 0;
        for (int id : alive) max_size = std::max(max_size, static_cast<int>(sets[static_cast<std::size_t>(id)].size()));
        for (int i = max_size; i >= 1; --i) {
            std::map<std::vector<int>, int> count;
            bool shared = false;
            for (int id : alive) {
                const auto& s = sets[static_cast<std::size_t>(id)];
                if (static_cast<int>(s.size()) < i) continue;
                for_each_subset(s, i, [&](const std::vector<int>& p) {
                    if (++count[p] >= 2) shared = true;
                });
                if (shared) break;
            }
            if (shared) return i;
        }
        return 0;
    }
};

}  // namespace

ExtraSetsResult extra_sets_reduction(const std::vector<std::vector<int>>& R, int r, int t, int k) {
    std::vector<std::vector<int>> canon = R;
    std::sort(canon.begin(), canon.end());
    std::vector<int> alive(canon.size());
    for (std::size_t i = 0; i < canon.size(); ++i) alive[i] = static_cast<int>(i);
    ExtraSetsWorker worker{canon, r, t, k};
    worker.run(alive);
    ExtraSetsResult out;
    for (int id : alive) out.kept.push_back(canon[static_cast<std::size_t>(id)]);
    for (int id : worker.extras) out.extra.push_back(canon[static_cast<std::size_t>(id)]);
    out.f_table = std::move(worker.f_table);
    out.t_ini = worker.t_ini;
    return out;
}

ConflictBipartiteBuild build_conflict_bipartite(const std::vector<int>& O,
                                                const std::vector<std::vector<int>>& sets_with_o) {
    ConflictBipartiteBuild out;
    out.left_elements = O;
    std::sort(out.left_elements.begin(), out.left_elements.end());
    std::map<int, int> left_index;
    for (std::size_t i = 0; i < out.left_elements.size(); ++i)
        left_index[out.left_elements[i]] = static_cast<int>(i);

    // (o, stem) pairs; each set must split as {o} u stem with o in O.
    std::vector<std::pair<int, std::vector<int>>> split;
    std::set<std::vector<int>> stems;
    for (const auto& s : sets_with_o) {
        std::vector<int> o_elems;
        for (int e : s)
            if (left_index.count(e)) o_elems.push_back(e);
        if (o_elems.size() != 1)
            throw StructuralError("a set handed to the conflict bipartite graph has " +
                                  std::to_string(o_elems.size()) + " O-elements; expected exactly 1");
        std::vector<int> stem = s;
        std::erase(stem, o_elems.front());
        stems.insert(stem);
        split.push_back({o_elems.front(), std::move(stem)});
    }

    out.right_stems.assign(stems.begin(), stems.end());
    std::map<std::vector<int>, int> stem_index;
    for (std::size_t i = 0; i < out.right_stems.size(); ++i)
        stem_index[out.right_stems[i]] = static_cast<int>(i);

    out.graph.n_left = static_cast<int>(out.left_elements.size());
    out.graph.n_right = static_cast<int>(out.right_stems.size());
    out.graph.adj.assign(static_cast<std::size_t>(out.graph.n_left), {});
    for (const auto& [o, stem] : split)
        out.graph.adj[static_cast<std::size_t>(left_index.at(o))].push_back(stem_index.at(stem));
    for (auto& row : out.graph.adj) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    return out;
}

MatchingReductionResult matching_reduction(const SetInstance& inst,
                                           const std::vector<std::vector<int>>& R) {
    const std::vector<int> val_R = sorted_union(R);
    std::vector<int> O;
    for (int e = 0; e < inst.element_count(); ++e)
        if (!std::binary_search(val_R.begin(), val_R.end(), e)) O.push_back(e);

    std::set<std::vector<int>> r_member(R.begin(), R.end());
    std::vector<std::vector<int>> with_o;
    for (const auto& s : inst.sets) {
        if (r_member.count(s)) continue;
        int o_count = 0;
        for (int e : s)
            if (!std::binary_search(val_R.begin(), val_R.end(), e)) ++o_count;
        if (o_count > 0) with_o.push_back(s);
    }

    MatchingReductionResult out;
    out.bipartite = build_conflict_bipartite(O, with_o);
    out.matching = bipartite_max_matching(out.bipartite.graph);

    std::vector<bool> matched(static_cast<std::size_t>(out.bipartite.graph.n_left), false);
    for (const auto& [l, rgt] : out.matching) {
        (void)rgt;
        matched[static_cast<std::size_t>(l)] = true;
    }
    for (std::size_t i = 0; i < out.bipartite.left_elements.size(); ++i)
        if (!matched[i]) out.removed_elements.push_back(out.bipartite.left_elements[i]);

    std::set<int> removed(out.removed_elements.begin(), out.removed_elements.end());
    std::vector<std::vector<int>> surviving;
    for (const auto& s : inst.sets) {
        bool hit = false;
        for (int e : s)
            if (removed.count(e)) { hit = true; break; }
        if (hit) out.removed_sets.push_back(s);
        else surviving.push_back(s);
    }

    SetInstance next = inst;
    next.sets = std::move(surviving);
    // Dropping S(O') leaves exactly U \ O' in use.
    out.reduced = reduce_unused_elements(next);
    for (int e : out.removed_elements) {
        if (std::find(out.reduced.universe.begin(), out.reduced.universe.end(), inst.label(e)) !=
            out.reduced.universe.end())
            throw StructuralError("matching reduction failed to remove element " + inst.label(e));
    }
    return out;
}

namespace {

struct PassResult {
    std::optional<std::vector<std::vector<std::string>>> early_label_sets;  // k sets
    std::optional<SetInstance> reduced;
    ReductionTrace trace;
};

std::vector<std::vector<std::string>> to_labels(const SetInstance& inst,
                                                const std::vector<std::vector<int>>& sets) {
    std::vector<std::vector<std::string>> out;
    out.reserve(sets.size());
    for (const auto& s : sets) out.push_back(inst.labels_of(s));
    return out;
}

// One run of the kernelization pipeline (cleanup, greedy/counting loop,
// early check, matching rule). Requires mode=overlap, t <= r-2, and every
// set of size >= t+1.
PassResult run_overlap_pass(const SetInstance& input) {
    PassResult out;
    SetInstance inst = reduce_unused_elements(input);
    const int r = inst.r, t = inst.t, k = inst.k;
    const auto& sets = inst.sets;
    const int n_sets = static_cast<int>(sets.size());

    std::vector<char> in_R(static_cast<std::size_t>(n_sets), 0);
    std::vector<char> in_E(static_cast<std::size_t>(n_sets), 0);
    std::vector<std::vector<int>> element_to_R(static_cast<std::size_t>(inst.element_count()));
    std::vector<int> R_ids;

    std::vector<int> overlap_count(static_cast<std::size_t>(n_sets), 0);
    auto conflicts_with_R = [&](int id) {
        const auto& s = sets[static_cast<std::size_t>(id)];
        std::vector<int> touched;
        bool conflict = false;
        for (int e : s) {
            for (int rid : element_to_R[static_cast<std::size_t>(e)]) {
                if (overlap_count[static_cast<std::size_t>(rid)]++ == 0) touched.push_back(rid);
                if (overlap_count[static_cast<std::size_t>(rid)] > r - 2) conflict = true;
            }
            if (conflict) break;
        }
        for (int rid : touched) overlap_count[static_cast<std::size_t>(rid)] = 0;
        return conflict;
    };

    ExtraSetsWorker worker{sets, r, t, k};
    for (;;) {
        bool added = false;
        for (int id = 0; id < n_sets; ++id) {
            if (in_R[static_cast<std::size_t>(id)] || in_E[static_cast<std::size_t>(id)]) continue;
            if (conflicts_with_R(id)) continue;
            in_R[static_cast<std::size_t>(id)] = 1;
            R_ids.insert(std::lower_bound(R_ids.begin(), R_ids.end(), id), id);
            for (int e : sets[static_cast<std::size_t>(id)])
                element_to_R[static_cast<std::size_t>(e)].push_back(id);
            added = true;
        }
        if (!added) break;
        for (int id : worker.run(R_ids)) {
            in_R[static_cast<std::size_t>(id)] = 0;
            in_E[static_cast<std::size_t>(id)] = 1;
            for (int e : sets[static_cast<std::size_t>(id)])
                std::erase(element_to_R[static_cast<std::size_t>(e)], id);
        }
    }

    std::vector<std::vector<int>> R_sets;
    for (int id : R_ids) R_sets.push_back(sets[static_cast<std::size_t>(id)]);
    std::vector<std::vector<int>> extra_sets;
    std::vector<int> extras_sorted = worker.extras;
    std::sort(extras_sorted.begin(), extras_sorted.end());
    for (int id : extras_sorted) extra_sets.push_back(sets[static_cast<std::size_t>(id)]);

    out.trace.R = to_labels(inst, R_sets);
    out.trace.extra = to_labels(inst, extra_sets);
    out.trace.f_table = worker.f_table;

    // Drop the extra sets, re-clean the universe.
    SetInstance pruned = inst;
    pruned.sets.clear();
    for (int id = 0; id < n_sets; ++id)
        if (!in_E[static_cast<std::size_t>(id)]) pruned.sets.push_back(sets[static_cast<std::size_t>(id)]);
    SetInstance cleaned = reduce_unused_elements(pruned);

    // R in the cleaned instance's indices.
    std::map<std::string, int> cleaned_index;
    for (int e = 0; e < cleaned.element_count(); ++e) cleaned_index[cleaned.label(e)] = e;
    auto reindex = [&](const std::vector<int>& s) {
        std::vector<int> mapped;
        mapped.reserve(s.size());
        for (int e : s) mapped.push_back(cleaned_index.at(inst.label(e)));
        std::sort(mapped.begin(), mapped.end());
        return mapped;
    };
    std::vector<std::vector<int>> R_cleaned;
    for (const auto& s : R_sets) R_cleaned.push_back(reindex(s));
    std::sort(R_cleaned.begin(), R_cleaned.end());

    const auto M = greedy_maximal_packing(R_cleaned, t);
    out.trace.M = to_labels(cleaned, M);
    if (static_cast<int>(M.size()) >= k) {
        std::vector<std::vector<std::string>> witness;
        for (int i = 0; i < k; ++i) witness.push_back(cleaned.labels_of(M[static_cast<std::size_t>(i)]));
        out.early_label_sets = std::move(witness);
        return out;
    }

    MatchingReductionResult mr = matching_reduction(cleaned, R_cleaned);
    for (int e : mr.bipartite.left_elements) out.trace.O.push_back(cleaned.label(e));
    for (int e : mr.removed_elements) out.trace.O_removed.push_back(cleaned.label(e));
    out.trace.sets_removed_by_matching = to_labels(cleaned, mr.removed_sets);
    out.reduced = std::move(mr.reduced);
    return out;
}

bool same_instance(const SetInstance& a, const SetInstance& b) {
    return a.universe == b.universe && a.sets == b.sets && a.k == b.k;
}

PackingSolution solution_from_labels(const SetInstance& original,
                                     const std::vector<std::vector<std::string>>& label_sets,
                                     const std::vector<std::vector<int>>& forced) {
    std::map<std::string, int> index;
    for (int e = 0; e < original.element_count(); ++e) index[original.label(e)] = e;
    PackingSolution sol;
    for (const auto& ls : label_sets) {
        std::vector<int> s;
        s.reserve(ls.size());
        for (const auto& label : ls) s.push_back(index.at(label));
        std::sort(s.begin(), s.end());
        sol.sets.push_back(std::move(s));
    }
    sol.sets.insert(sol.sets.end(), forced.begin(), forced.end());
    std::sort(sol.sets.begin(), sol.sets.end());
    return sol;
}

void merge_removals(ReductionTrace& total, const ReductionTrace& pass) {
    total.extra.insert(total.extra.end(), pass.extra.begin(), pass.extra.end());
    total.O_removed.insert(total.O_removed.end(), pass.O_removed.begin(), pass.O_removed.end());
    total.sets_removed_by_matching.insert(total.sets_removed_by_matching.end(),
                                          pass.sets_removed_by_matching.begin(),
                                          pass.sets_removed_by_matching.end());
}

}  // namespace

KernelOutcome kernelize_set_overlap(const SetInstance& input) {
    input.validate();
    if (input.mode != SetMode::overlap)
        throw std::invalid_argument("kernelize_set_overlap requires mode=overlap");

    KernelOutcome out;
    out.stats.elements_before = input.element_count();
    out.stats.sets_before = static_cast<long long>(input.sets.size());

    PresolveResult pre = presolve_small_sets(input);
    const int k_eff = pre.rest.k;
    out.stats.bound = overlap_bound(input.r, input.t, std::max(k_eff, 0));

    auto finish_early = [&](const std::vector<std::vector<std::string>>& label_sets) {
        PackingSolution sol = solution_from_labels(input, label_sets, {});
        // Forced presolve sets plus however many pipeline sets are needed.
        PackingSolution full;
        full.sets = pre.forced;
        full.sets.insert(full.sets.end(), sol.sets.begin(), sol.sets.end());
        if (static_cast<int>(full.sets.size()) > input.k)
            full.sets.resize(static_cast<std::size_t>(input.k));
        std::sort(full.sets.begin(), full.sets.end());
        out.early_solution = std::move(full);
        out.stats.early_solution = true;
        out.stats.elements_after = out.stats.elements_before;
        out.stats.sets_after = out.stats.sets_before;
    };

    if (k_eff <= 0) {
        finish_early({});
        return out;
    }

    if (auto verdict = handle_t_max(pre.rest)) {
        if (*verdict) {
            std::vector<std::vector<std::string>> label_sets;
            for (int i = 0; i < k_eff; ++i)
                label_sets.push_back(pre.rest.labels_of(pre.rest.sets[static_cast<std::size_t>(i)]));
            finish_early(label_sets);
        } else {
            // Certified NO: the empty instance is an equivalent kernel.
            SetInstance empty;
            empty.r = input.r;
            empty.t = input.t;
            empty.k = k_eff;
            empty.mode = SetMode::overlap;
            out.reduced = std::move(empty);
            out.stats.elements_after = 0;
            out.stats.sets_after = 0;
        }
        return out;
    }

    // Iterate the pipeline to a fixpoint. Each pass is decision-preserving,
    // so the composition is; running the kernelizer on its own output then
    // reproduces that output bit for bit.
    SetInstance current = pre.rest;
    for (;;) {
        PassResult pass = run_overlap_pass(current);
        merge_removals(out.trace, pass.trace);
        out.trace.R = pass.trace.R;
        out.trace.M = pass.trace.M;
        out.trace.O = pass.trace.O;
        out.trace.f_table = pass.trace.f_table;
        if (pass.early_label_sets) {
            finish_early(*pass.early_label_sets);
            return out;
        }
        if (same_instance(*pass.reduced, current)) break;
        current = std::move(*pass.reduced);
    }

    out.stats.elements_after = current.element_count();
    out.stats.sets_after = static_cast<long long>(current.sets.size());
    out.reduced = std::move(current);
    return out;
}

int clique_overlap_bound(int t) {
    if (t < 0) throw std::invalid_argument("t must be non-negative");
    int best = 1;
    while (static_cast<long long>(best + 1) * best / 2 <= t) ++best;
    return best;
}

namespace {

bool entry_is_small(const Subgraph& h, bool edge_route, int limit) {
    const int size = edge_route ? static_cast<int>(h.edges.size())
                                : static_cast<int>(h.vertices.size());
    return size <= limit;
}

}  // namespace

GraphKernelOutcome kernelize_graph_overlap(const GraphInstance& inst, const EnumBudget& budget) {
    inst.validate();
    const GraphVariant variant = inst.variant;
    if (variant_is_membership(variant))
        throw std::invalid_argument("kernelize_graph_overlap requires an overlap variant");

    // clique-edge-overlap runs as vertex-overlap at the equivalent bound t';
    // a bound of r-1 or more is never binding between distinct vertex sets.
    const bool clique_route = variant == GraphVariant::clique_edge_overlap;
    const bool edge_route = variant == GraphVariant::edge_overlap;
    GraphFamily family = edge_route ? detail::strip_isolated_family(inst.family) : inst.family;
    const int r = edge_route ? family.max_edges() : family.max_vertices();
    const int t_eff = clique_route ? std::min(clique_overlap_bound(inst.t), std::max(r - 1, 0))
                                   : inst.t;

    GraphKernelOutcome out;
    out.stats.elements_before = inst.g.n;

    SubgraphCatalog cat =
        enumerate_subgraphs(inst.g, family, variant_is_induced(variant), budget);
    out.stats.sets_before = static_cast<long long>(cat.entries.size());

    // Subgraphs at or below the overlap bound are compatible with anything;
    // they go straight into any solution and k drops by their count.
    std::vector<Subgraph> small, big;
    for (const auto& h : cat.entries) {
        if (entry_is_small(h, edge_route, edge_route ? inst.t : t_eff)) small.push_back(h);
        else big.push_back(h);
    }
    const int k_eff = inst.k - static_cast<int>(small.size());

    auto finish_early = [&](const std::vector<Subgraph>& chosen_big) {
        PackingSolution sol;
        sol.subgraphs = small;
        sol.subgraphs.insert(sol.subgraphs.end(), chosen_big.begin(), chosen_big.end());
        if (static_cast<int>(sol.subgraphs.size()) > inst.k)
            sol.subgraphs.resize(static_cast<std::size_t>(inst.k));
        out.early_solution = std::move(sol);
        out.stats.early_solution = true;
        out.stats.elements_after = out.stats.elements_before;
        out.stats.sets_after = out.stats.sets_before;
    };

    if (k_eff <= 0) {
        finish_early({});
        return out;
    }

    // Same-vertex-set entries are interchangeable for the vertex routes.
    SubgraphCatalog big_cat;
    big_cat.entries = big;
    if (!edge_route) {
        std::sort(big_cat.entries.begin(), big_cat.entries.end());
        big_cat = dedupe_by_vertex_set(big_cat);
    }

    SetInstance set_inst =
        edge_route
            ? detail::set_instance_over_edges(inst.g, big_cat.entries, r, inst.t, k_eff,
                                              SetMode::overlap)
            : detail::set_instance_over_vertices(inst.g, big_cat.entries, r, t_eff, k_eff,
                                                 SetMode::overlap);

    KernelOutcome kernel = kernelize_set_overlap(set_inst);
    out.trace = kernel.trace;
    out.stats.bound = kernel.stats.bound;

    if (kernel.early_solution) {
        std::vector<Subgraph> chosen;
        for (const auto& s : kernel.early_solution->sets) {
            if (edge_route) {
                std::vector<Edge> edges;
                for (int e : s) edges.push_back(inst.g.edges[static_cast<std::size_t>(e)]);
                const Subgraph* entry = detail::entry_by_edges(big_cat.entries, edges);
                if (!entry) throw StructuralError("early solution edge set has no catalog entry");
                chosen.push_back(*entry);
            } else {
                const Subgraph* entry = detail::entry_by_vertices(big_cat.entries, s);
                if (!entry) throw StructuralError("early solution vertex set has no catalog entry");
                chosen.push_back(*entry);
            }
        }
        finish_early(chosen);
        return out;
    }

    // Reinterpret the reduced universe as an induced host graph.
    std::vector<int> keep;
    if (edge_route) {
        for (const auto& label : kernel.reduced->universe) {
            const Edge e = detail::edge_of_label(label);
            keep.push_back(e.first);
            keep.push_back(e.second);
        }
    } else {
        for (const auto& label : kernel.reduced->universe)
            keep.push_back(detail::vertex_of_label(label));
    }
    auto [reduced_graph, kept] = inst.g.induced(keep);

    // Small subgraphs surviving in the reduced graph are counted again so
    // the output instance keeps the original problem semantics.
    SubgraphCatalog reduced_cat =
        enumerate_subgraphs(reduced_graph, family, variant_is_induced(variant), budget);
    int small_after = 0;
    for (const auto& h : reduced_cat.entries)
        if (entry_is_small(h, edge_route, edge_route ? inst.t : t_eff)) ++small_after;

    GraphInstance reduced = inst;
    reduced.g = reduced_graph;
    reduced.k = k_eff + small_after;
    out.kept_vertices = kept;
    out.stats.elements_after = reduced_graph.n;
    out.stats.sets_after = static_cast<long long>(kernel.reduced->sets.size());
    out.reduced = std::move(reduced);
    return out;
}

}  // namespace opk
