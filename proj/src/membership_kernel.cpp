#include "opk/membership_kernel.hpp"

#include <algorithm>
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

// Default backend bound: the t-overlap pipeline at arity r+1, t=0 leaves at
// most 4 (r+1)^(r+1) k^r elements.
long long membership_bound(int r, int k) {
    const long long cap = (1LL << 62);
    long long b = saturating_mul(4, saturating_pow(r + 1, r + 1, cap), cap);
    return saturating_mul(b, saturating_pow(std::max(k, 0), r, cap), cap);
}

std::string pair_label(const std::string& base, int copy) {
    return base + "#" + std::to_string(copy);
}

std::string token_label(int idx) { return "⟨" + std::to_string(idx) + "⟩"; }

// Enumerates all copy assignments for one source set and appends the
// transformed sets. `pair_index(elem, copy)` resolves universe positions.
template <typename PairIndexFn>
void emit_assignments(const std::vector<int>& source, int t, int token_element,
                      const PairIndexFn& pair_index, std::vector<std::vector<int>>& out) {
    std::vector<int> copies(source.size(), 1);
    for (;;) {
        std::vector<int> transformed;
        transformed.reserve(source.size() + 1);
        for (std::size_t i = 0; i < source.size(); ++i)
            transformed.push_back(pair_index(source[i], copies[i]));
        transformed.push_back(token_element);
        std::sort(transformed.begin(), transformed.end());
        out.push_back(std::move(transformed));
        // Odometer over the copy assignment, last position fastest.
        std::size_t pos = source.size();
        while (pos > 0 && copies[pos - 1] == t) --pos;
        if (pos == 0) return;
        ++copies[pos - 1];
        std::fill(copies.begin() + static_cast<long>(pos), copies.end(), 1);
    }
}

}  // namespace

MembershipTransform transform_membership_to_disjoint(const SetInstance& inst,
                                                     const TransformBudget& budget) {
    inst.validate();
    if (inst.mode != SetMode::membership || inst.t < 1)
        throw std::invalid_argument("transform requires mode=membership with t >= 1");

    long long total_sets = 0;
    for (const auto& s : inst.sets) {
        total_sets += saturating_pow(inst.t, static_cast<int>(s.size()), budget.max_sets + 1);
        if (total_sets > budget.max_sets)
            throw BudgetError("transform_sets",
                              "transformed collection would exceed " +
                                  std::to_string(budget.max_sets) + " sets");
    }

    MembershipTransform tr;
    const int n = inst.element_count();
    const int t = inst.t;
    auto pair_index = [&](int elem, int copy) { return elem * t + (copy - 1); };

    for (int e = 0; e < n; ++e)
        for (int c = 1; c <= t; ++c) {
            tr.disjoint.universe.push_back(pair_label(inst.label(e), c));
            tr.pair_base.push_back(e);
            tr.pair_copy.push_back(c);
            tr.token_source.push_back(-1);
        }
    for (std::size_t i = 0; i < inst.sets.size(); ++i) {
        tr.disjoint.universe.push_back(token_label(static_cast<int>(i)));
        tr.pair_base.push_back(-1);
        tr.pair_copy.push_back(0);
        tr.token_source.push_back(static_cast<int>(i));
    }

    for (std::size_t i = 0; i < inst.sets.size(); ++i)
        emit_assignments(inst.sets[i], t, n * t + static_cast<int>(i), pair_index,
                         tr.disjoint.sets);
    std::sort(tr.disjoint.sets.begin(), tr.disjoint.sets.end());

    tr.disjoint.r = inst.r + 1;
    tr.disjoint.t = 0;
    tr.disjoint.k = inst.k;
    tr.disjoint.mode = SetMode::overlap;
    tr.disjoint.validate();
    return tr;
}

KernelOutcome disjoint_kernelizer(const SetInstance& inst, const DisjointBackend& backend) {
    if (inst.mode != SetMode::overlap || inst.t != 0)
        throw std::invalid_argument("disjoint_kernelizer requires mode=overlap with t=0");
    if (backend) return backend(inst);
    return kernelize_set_overlap(inst);
}

SetInstance reinterpret_set_kernel(const SetInstance& original, const MembershipTransform& transform,
                                   const SetInstance& reduced) {
    std::map<std::string, int> disjoint_index;
    for (int e = 0; e < transform.disjoint.element_count(); ++e)
        disjoint_index[transform.disjoint.label(e)] = e;

    // Surviving base elements, from the pairs left in the reduced universe.
    std::set<int> base_elements;
    for (const auto& label : reduced.universe) {
        auto it = disjoint_index.find(label);
        if (it == disjoint_index.end())
            throw StructuralError("reduced universe element \"" + label +
                                  "\" is not part of the transformed instance");
        const int base = transform.pair_base[static_cast<std::size_t>(it->second)];
        if (base >= 0) base_elements.insert(base);
    }

    // Surviving sets: each reduced set must carry exactly one token.
    std::set<int> surviving_sets;
    for (const auto& s : reduced.sets) {
        int token = -1;
        int token_count = 0;
        for (int e : s) {
            const int disjoint_e = disjoint_index.at(reduced.label(e));
            const int src = transform.token_source[static_cast<std::size_t>(disjoint_e)];
            if (src >= 0) {
                token = src;
                ++token_count;
            }
        }
        if (token_count != 1)
            throw StructuralError("a reduced set carries " + std::to_string(token_count) +
                                  " set tokens; expected exactly 1");
        surviving_sets.insert(token);
    }

    SetInstance out;
    std::vector<int> remap(static_cast<std::size_t>(original.element_count()), -1);
    for (int e : base_elements) {
        remap[static_cast<std::size_t>(e)] = static_cast<int>(out.universe.size());
        out.universe.push_back(original.label(e));
    }
    for (int idx : surviving_sets) {
        std::vector<int> mapped;
        for (int e : original.sets[static_cast<std::size_t>(idx)]) {
            if (remap[static_cast<std::size_t>(e)] < 0)
                throw StructuralError("surviving set lost base element '" + original.label(e) +
                                      "' from the reduced universe");
            mapped.push_back(remap[static_cast<std::size_t>(e)]);
        }
        std::sort(mapped.begin(), mapped.end());
        out.sets.push_back(std::move(mapped));
    }
    std::sort(out.sets.begin(), out.sets.end());
    out.r = original.r;
    out.t = original.t;
    out.k = original.k;
    out.mode = SetMode::membership;
    return out;
}

namespace {

bool same_instance(const SetInstance& a, const SetInstance& b) {
    return a.universe == b.universe && a.sets == b.sets && a.k == b.k;
}

void merge_removals(ReductionTrace& total, const ReductionTrace& pass) {
    total.extra.insert(total.extra.end(), pass.extra.begin(), pass.extra.end());
    total.O_removed.insert(total.O_removed.end(), pass.O_removed.begin(), pass.O_removed.end());
    total.sets_removed_by_matching.insert(total.sets_removed_by_matching.end(),
                                          pass.sets_removed_by_matching.begin(),
                                          pass.sets_removed_by_matching.end());
}

// Original-instance sets selected by the tokens of an early disjoint witness.
PackingSolution tokens_to_solution(const SetInstance& original, const MembershipTransform& transform,
                                   const PackingSolution& disjoint_witness) {
    std::map<std::string, int> disjoint_index;
    for (int e = 0; e < transform.disjoint.element_count(); ++e)
        disjoint_index[transform.disjoint.label(e)] = e;
    PackingSolution out;
    for (const auto& s : disjoint_witness.sets) {
        int token = -1;
        for (int e : s) {
            const int src = transform.token_source[static_cast<std::size_t>(e)];
            if (src >= 0) token = src;
        }
        if (token < 0) throw StructuralError("early disjoint witness set lacks a token");
        out.sets.push_back(original.sets[static_cast<std::size_t>(token)]);
    }
    std::sort(out.sets.begin(), out.sets.end());
    return out;
}

}  // namespace

KernelOutcome kernelize_set_membership(const SetInstance& inst, const TransformBudget& budget) {
    inst.validate();
    if (inst.mode != SetMode::membership)
        throw std::invalid_argument("kernelize_set_membership requires mode=membership");

    KernelOutcome out;
    out.stats.elements_before = inst.element_count();
    out.stats.sets_before = static_cast<long long>(inst.sets.size());
    out.stats.bound = membership_bound(inst.r, inst.k);

    if (inst.k == 0) {
        out.early_solution = PackingSolution{};
        out.stats.early_solution = true;
        out.stats.elements_after = out.stats.elements_before;
        out.stats.sets_after = out.stats.sets_before;
        return out;
    }

    std::map<std::vector<std::string>, int> original_index;
    for (std::size_t i = 0; i < inst.sets.size(); ++i)
        original_index[inst.labels_of(inst.sets[i])] = static_cast<int>(i);

    SetInstance current = inst;
    for (;;) {
        MembershipTransform tr = transform_membership_to_disjoint(current, budget);
        KernelOutcome disjoint = disjoint_kernelizer(tr.disjoint);
        merge_removals(out.trace, disjoint.trace);
        out.trace.R = disjoint.trace.R;
        out.trace.M = disjoint.trace.M;
        out.trace.O = disjoint.trace.O;
        out.trace.f_table = disjoint.trace.f_table;

        if (disjoint.early_solution) {
            PackingSolution witness = tokens_to_solution(current, tr, *disjoint.early_solution);
            // Re-express in the original instance's element indices.
            PackingSolution final_witness;
            for (const auto& s : witness.sets) {
                const int orig = original_index.at(current.labels_of(s));
                final_witness.sets.push_back(inst.sets[static_cast<std::size_t>(orig)]);
            }
            std::sort(final_witness.sets.begin(), final_witness.sets.end());
            out.early_solution = std::move(final_witness);
            out.stats.early_solution = true;
            out.stats.elements_after = out.stats.elements_before;
            out.stats.sets_after = out.stats.sets_before;
            return out;
        }

        SetInstance next = reinterpret_set_kernel(current, tr, *disjoint.reduced);
        if (same_instance(next, current)) break;
        current = std::move(next);
    }

    out.stats.elements_after = current.element_count();
    out.stats.sets_after = static_cast<long long>(current.sets.size());
    out.reduced = std::move(current);
    return out;
}

namespace {

// Shared tail for the vertex / induced / edge membership pipelines.
GraphKernelOutcome graph_membership_via_sets(const GraphInstance& inst, const GraphFamily& family,
                                             const std::vector<Subgraph>& entries,
                                             const EnumBudget&, const TransformBudget& tbudget) {
    const bool edge_route = inst.variant == GraphVariant::edge_membership;
    const int r = edge_route ? family.max_edges() : family.max_vertices();

    GraphKernelOutcome out;
    out.stats.elements_before = inst.g.n;
    out.stats.sets_before = static_cast<long long>(entries.size());

    SetInstance set_inst =
        edge_route ? detail::set_instance_over_edges(inst.g, entries, r, inst.t, inst.k,
                                                     SetMode::membership)
                   : detail::set_instance_over_vertices(inst.g, entries, r, inst.t, inst.k,
                                                        SetMode::membership);

    KernelOutcome kernel = kernelize_set_membership(set_inst, tbudget);
    out.trace = kernel.trace;
    out.stats.bound = kernel.stats.bound;

    if (kernel.early_solution) {
        PackingSolution sol;
        for (const auto& s : kernel.early_solution->sets) {
            const Subgraph* entry = nullptr;
            if (edge_route) {
                std::vector<Edge> edges;
                for (int e : s) edges.push_back(inst.g.edges[static_cast<std::size_t>(e)]);
                entry = detail::entry_by_edges(entries, edges);
            } else {
                entry = detail::entry_by_vertices(entries, s);
            }
            if (!entry) throw StructuralError("early membership witness has no catalog entry");
            sol.subgraphs.push_back(*entry);
        }
        out.early_solution = std::move(sol);
        out.stats.early_solution = true;
        out.stats.elements_after = out.stats.elements_before;
        out.stats.sets_after = out.stats.sets_before;
        return out;
    }

    std::vector<int> keep;
    for (const auto& label : kernel.reduced->universe) {
        if (edge_route) {
            const Edge e = detail::edge_of_label(label);
            keep.push_back(e.first);
            keep.push_back(e.second);
        } else {
            keep.push_back(detail::vertex_of_label(label));
        }
    }
    auto [reduced_graph, kept] = inst.g.induced(keep);
    GraphInstance reduced = inst;
    reduced.g = std::move(reduced_graph);
    out.kept_vertices = std::move(kept);
    out.stats.elements_after = reduced.g.n;
    out.stats.sets_after = static_cast<long long>(kernel.reduced->sets.size());
    out.reduced = std::move(reduced);
    return out;
}

}  // namespace

GraphKernelOutcome kernelize_graph_membership(const GraphInstance& inst,
                                              const EnumBudget& enum_budget,
                                              const TransformBudget& transform_budget) {
    inst.validate();
    const GraphVariant v = inst.variant;
    if (v != GraphVariant::vertex_membership && v != GraphVariant::induced_membership &&
        v != GraphVariant::edge_membership)
        throw std::invalid_argument("kernelize_graph_membership handles vertex/induced/edge membership");

    const bool edge_route = v == GraphVariant::edge_membership;
    GraphFamily family = edge_route ? detail::strip_isolated_family(inst.family) : inst.family;
    SubgraphCatalog cat = enumerate_subgraphs(inst.g, family, variant_is_induced(v), enum_budget);
    if (!edge_route) cat = dedupe_by_vertex_set(cat);
    return graph_membership_via_sets(inst, family, cat.entries, enum_budget, transform_budget);
}

namespace {

// Shared machinery for the ISV / NISV token pipelines: the universe is
// (object x copy) pairs plus one token per distinct edge set (ISV) or per
// distinct vertex set keyed through each entry (NISV).
struct TaggedGraphPipeline {
    const GraphInstance& inst;
    bool isv;  // false = NISV

    GraphKernelOutcome run(const EnumBudget& enum_budget, const TransformBudget& tbudget) {
        const GraphFamily family =
            isv ? inst.family : detail::strip_isolated_family(inst.family);
        const int arity = (isv ? family.max_vertices() : family.max_edges()) + 1;
        const int t = inst.t;

        GraphKernelOutcome out;
        out.stats.elements_before = inst.g.n;

        SubgraphCatalog cat = enumerate_subgraphs(inst.g, family, false, enum_budget);
        out.stats.sets_before = static_cast<long long>(cat.entries.size());

        // Tokens: ISV tokens are the distinct edge sets; NISV tokens the
        // distinct vertex sets. Pair objects: vertices for ISV, edges NISV.
        Collections col = derive_collections(cat);
        const auto& token_keys_edges = col.edge_sets;
        const auto& token_keys_vertices = col.vertex_sets;
        const int n_tokens = isv ? static_cast<int>(token_keys_edges.size())
                                 : static_cast<int>(token_keys_vertices.size());

        std::map<std::vector<Edge>, int> edge_token;
        for (std::size_t i = 0; i < token_keys_edges.size(); ++i)
            edge_token[token_keys_edges[i]] = static_cast<int>(i);
        std::map<std::vector<int>, int> vertex_token;
        for (std::size_t i = 0; i < token_keys_vertices.size(); ++i)
            vertex_token[token_keys_vertices[i]] = static_cast<int>(i);

        std::map<Edge, int> edge_index;
        for (std::size_t i = 0; i < inst.g.edges.size(); ++i)
            edge_index[inst.g.edges[i]] = static_cast<int>(i);

        const int n_objects = isv ? inst.g.n : static_cast<int>(inst.g.edges.size());

        long long total_sets = 0;
        for (const auto& h : cat.entries) {
            const int width = isv ? static_cast<int>(h.vertices.size())
                                  : static_cast<int>(h.edges.size());
            total_sets += saturating_pow(t, width, tbudget.max_sets + 1);
            if (total_sets > tbudget.max_sets)
                throw BudgetError("transform_sets", "tagged collection would exceed " +
                                                        std::to_string(tbudget.max_sets) + " sets");
        }

        SetInstance tagged;
        for (int obj = 0; obj < n_objects; ++obj) {
            const std::string base =
                isv ? detail::vertex_label(obj)
                    : detail::edge_label(inst.g.edges[static_cast<std::size_t>(obj)]);
            for (int c = 1; c <= t; ++c) tagged.universe.push_back(pair_label(base, c));
        }
        for (int i = 0; i < n_tokens; ++i) tagged.universe.push_back(token_label(i));

        auto pair_index = [&](int obj, int copy) { return obj * t + (copy - 1); };
        for (const auto& h : cat.entries) {
            std::vector<int> objects;
            int token = 0;
            if (isv) {
                objects = h.vertices;
                token = edge_token.at(h.edges);
            } else {
                for (const auto& e : h.edges) objects.push_back(edge_index.at(e));
                std::sort(objects.begin(), objects.end());
                token = vertex_token.at(h.vertices);
            }
            emit_assignments(objects, t, n_objects * t + token, pair_index, tagged.sets);
        }
        std::sort(tagged.sets.begin(), tagged.sets.end());
        tagged.sets.erase(std::unique(tagged.sets.begin(), tagged.sets.end()), tagged.sets.end());
        tagged.r = arity;
        tagged.t = 0;
        tagged.k = inst.k;
        tagged.mode = SetMode::overlap;

        KernelOutcome kernel = disjoint_kernelizer(tagged);
        out.trace = kernel.trace;
        out.stats.bound = kernel.stats.bound;

        if (kernel.early_solution) {
            PackingSolution sol;
            for (const auto& s : kernel.early_solution->sets)
                sol.subgraphs.push_back(
                    witness_subgraph(s, token_keys_edges, token_keys_vertices, n_objects, t));
            out.early_solution = std::move(sol);
            out.stats.early_solution = true;
            out.stats.elements_after = out.stats.elements_before;
            out.stats.sets_after = out.stats.sets_before;
            return out;
        }

        // Surviving vertices: bases of surviving pairs plus the vertices of
        // surviving tokens.
        std::vector<int> keep;
        for (const auto& label : kernel.reduced->universe) {
            const auto hash_pos = label.rfind('#');
            if (label.size() >= 3 && label.substr(0, 3) == "⟨") {
                const int token = std::stoi(label.substr(3, label.size() - 6));
                if (isv)
                    for (const auto& e : token_keys_edges[static_cast<std::size_t>(token)]) {
                        keep.push_back(e.first);
                        keep.push_back(e.second);
                    }
                else
                    for (int v : token_keys_vertices[static_cast<std::size_t>(token)])
                        keep.push_back(v);
            } else {
                const std::string base = label.substr(0, hash_pos);
                if (isv) {
                    keep.push_back(detail::vertex_of_label(base));
                } else {
                    const Edge e = detail::edge_of_label(base);
                    keep.push_back(e.first);
                    keep.push_back(e.second);
                }
            }
        }
        auto [reduced_graph, kept] = inst.g.induced(keep);
        GraphInstance reduced = inst;
        reduced.g = std::move(reduced_graph);
        out.kept_vertices = std::move(kept);
        out.stats.elements_after = reduced.g.n;
        out.stats.sets_after = static_cast<long long>(kernel.reduced->sets.size());
        out.reduced = std::move(reduced);
        return out;
    }

    Subgraph witness_subgraph(const std::vector<int>& s,
                              const std::vector<std::vector<Edge>>& token_keys_edges,
                              const std::vector<std::vector<int>>& token_keys_vertices,
                              int n_objects, int t) const {
        Subgraph h;
        int token = -1;
        std::vector<int> objects;
        for (int e : s) {
            if (e >= n_objects * t) token = e - n_objects * t;
            else objects.push_back(e / t);
        }
        if (token < 0) throw StructuralError("tagged witness set lacks a token");
        std::sort(objects.begin(), objects.end());
        objects.erase(std::unique(objects.begin(), objects.end()), objects.end());
        if (isv) {
            h.vertices = objects;
            h.edges = token_keys_edges[static_cast<std::size_t>(token)];
        } else {
            for (int obj : objects) h.edges.push_back(inst.g.edges[static_cast<std::size_t>(obj)]);
            std::sort(h.edges.begin(), h.edges.end());
            h.vertices = token_keys_vertices[static_cast<std::size_t>(token)];
        }
        return h;
    }
};

}  // namespace

GraphKernelOutcome kernelize_graph_membership_isv(const GraphInstance& inst,
                                                  const EnumBudget& enum_budget,
                                                  const TransformBudget& transform_budget) {
    inst.validate();
    if (inst.variant != GraphVariant::vertex_membership_isv)
        throw std::invalid_argument("expected variant vertex-membership-ISV");
    TaggedGraphPipeline pipeline{inst, true};
    return pipeline.run(enum_budget, transform_budget);
}

GraphKernelOutcome kernelize_graph_membership_nisv(const GraphInstance& inst,
                                                   const EnumBudget& enum_budget,
                                                   const TransformBudget& transform_budget) {
    inst.validate();
    if (inst.variant != GraphVariant::edge_membership_nisv)
        throw std::invalid_argument("expected variant edge-membership-NISV");
    TaggedGraphPipeline pipeline{inst, false};
    return pipeline.run(enum_budget, transform_budget);
}

}  // namespace opk
