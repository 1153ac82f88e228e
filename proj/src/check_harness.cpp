#include "opk/check_harness.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "opk/errors.hpp"
#include "opk/gadgets.hpp"
#include "opk/p2.hpp"

namespace opk {

namespace {

std::vector<std::string> sorted_labels(const std::vector<std::vector<std::string>>& label_sets) {
    std::set<std::string> out;
    for (const auto& s : label_sets) out.insert(s.begin(), s.end());
    return {out.begin(), out.end()};
}

struct TrialResult {
    bool ok = true;
    std::string detail;

    void fail(const std::string& why) {
        ok = false;
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
};

bool same_set_instance(const SetInstance& a, const SetInstance& b) {
    return a.universe == b.universe && a.sets == b.sets && a.k == b.k;
}

void run_set_trial(SplitMix64& rng, SetMode mode, const CheckOptions& opt, TrialResult& res,
                   std::string& summary, bool clustered = false) {
    SetInstance inst = clustered ? random_clustered_set_instance(rng)
                                 : random_set_instance(rng, mode, opt.max_n, opt.max_sets);
    std::ostringstream meta;
    meta << "r=" << inst.r << " t=" << inst.t << " k=" << inst.k << " n=" << inst.element_count()
         << " sets=" << inst.sets.size();
    summary = meta.str();

    const bool before = solve_set_exact(inst, opt.oracle).has_value();
    KernelOutcome out = kernelize_set(inst, opt.budgets);

    if (out.early_solution) {
        std::string why;
        if (!check_set_solution(inst, *out.early_solution, &why))
            res.fail("early solution invalid: " + why);
        if (!before) res.fail("early solution on a NO instance");
        return;
    }

    const bool after = solve_set_exact(*out.reduced, opt.oracle).has_value();
    if (before != after)
        res.fail(std::string("decision flipped: before=") + (before ? "yes" : "no"));

    if (out.stats.elements_after > out.stats.bound) res.fail("universe exceeds the size bound");
    if (mode == SetMode::overlap) {
        const long long half = overlap_reduction_bound(inst.r, inst.t, out.reduced->k);
        if (static_cast<long long>(sorted_labels(out.trace.R).size()) > half)
            res.fail("val(R) exceeds its bound");
        const long long o_kept = static_cast<long long>(out.trace.O.size()) -
                                 static_cast<long long>(out.trace.O_removed.size());
        if (o_kept > half) res.fail("surviving O exceeds its bound");
    }

    KernelOutcome again = kernelize_set(*out.reduced, opt.budgets);
    if (again.early_solution) {
        res.fail("re-kernelization returned an early solution");
    } else {
        if (!same_set_instance(*again.reduced, *out.reduced)) res.fail("kernel is not idempotent");
        if (!again.trace.extra.empty() || !again.trace.O_removed.empty())
            res.fail("re-kernelization still removed something");
    }
}

bool same_graph_instance(const GraphInstance& a, const GraphInstance& b) {
    return a.g == b.g && a.k == b.k;
}

void adjust_for_blowup(SplitMix64& rng, GraphInstance& inst) {
    // Tagged pipelines multiply the collection by t^width; keep that sane.
    if (inst.variant == GraphVariant::vertex_membership_isv ||
        inst.variant == GraphVariant::edge_membership_nisv) {
        const bool big_family = inst.family.max_edges() > 4;
        if (big_family || inst.g.n > 7) inst.t = rng.uniform_int(1, 2);
    }
}

void run_graph_trial(SplitMix64& rng, GraphVariant variant, const CheckOptions& opt,
                     TrialResult& res, std::string& summary) {
    GraphInstance inst = random_graph_instance(rng, variant, std::min(opt.max_n, 9));
    adjust_for_blowup(rng, inst);
    std::ostringstream meta;
    meta << "n=" << inst.g.n << " m=" << inst.g.edges.size() << " t=" << inst.t
         << " k=" << inst.k;
    summary = meta.str();

    const bool before = solve_graph_exact(inst, opt.oracle).has_value();
    GraphKernelOutcome out = kernelize_graph(inst, opt.budgets);

    if (out.early_solution) {
        std::string why;
        if (!check_graph_solution(inst, *out.early_solution, &why))
            res.fail("early solution invalid: " + why);
        if (!before) res.fail("early solution on a NO instance");
        return;
    }

    const bool after = solve_graph_exact(*out.reduced, opt.oracle).has_value();
    if (before != after)
        res.fail(std::string("decision flipped: before=") + (before ? "yes" : "no"));
    if (out.reduced->g.n > inst.g.n) res.fail("reduced graph grew");

    GraphKernelOutcome again = kernelize_graph(*out.reduced, opt.budgets);
    if (again.early_solution) res.fail("re-kernelization returned an early solution");
    else if (!same_graph_instance(*again.reduced, *out.reduced))
        res.fail("graph kernel is not idempotent");
}

void run_p3_lift_trial(SplitMix64& rng, const CheckOptions& opt, TrialResult& res,
                       std::string& summary) {
    const Graph g = random_graph(rng, 1, 5);
    const int t = 1;
    const int k = rng.uniform_int(0, 3);
    LiftedInstance lift = lift_p3_membership(g, k, t);
    std::ostringstream meta;
    meta << "n=" << g.n << " k=" << k << " lifted_n=" << lift.graph.n << " k_new=" << lift.k_new;
    summary = meta.str();

    const GraphFamily family{{make_path(3)}};
    const GraphInstance base{g, family, t, k, GraphVariant::vertex_membership};
    const GraphInstance lifted{lift.graph, family, t + 1, lift.k_new,
                               GraphVariant::vertex_membership};
    const bool before = solve_graph_exact(base, opt.oracle).has_value();
    const bool after = solve_graph_exact(lifted, opt.oracle).has_value();
    if (before != after)
        res.fail(std::string("lift flipped the decision: base=") + (before ? "yes" : "no"));
}

void run_c3_lift_trial(SplitMix64& rng, const CheckOptions& opt, TrialResult& res,
                       std::string& summary) {
    const Graph g = random_graph(rng, 1, 5);
    const int t = 1;
    const int k = rng.uniform_int(0, 3);
    LiftedInstance lift = lift_c3_edge_membership(g, k, t);
    std::ostringstream meta;
    meta << "n=" << g.n << " m=" << g.edges.size() << " k=" << k << " k_new=" << lift.k_new;
    summary = meta.str();

    const GraphFamily family{{make_clique(3)}};
    const GraphInstance base{g, family, t, k, GraphVariant::edge_membership};
    const GraphInstance lifted{lift.graph, family, t + 1, lift.k_new,
                               GraphVariant::edge_membership};
    const bool before = solve_graph_exact(base, opt.oracle).has_value();
    const bool after = solve_graph_exact(lifted, opt.oracle).has_value();
    if (before != after)
        res.fail(std::string("lift flipped the decision: base=") + (before ? "yes" : "no"));
}

void run_p2_trial(SplitMix64& rng, const CheckOptions& opt, TrialResult& res,
                  std::string& summary) {
    const Graph g = random_graph(rng, 2, std::min(opt.max_n, 8));
    const int t = rng.uniform_int(1, 3);
    const int k = rng.uniform_int(0, 6);
    std::ostringstream meta;
    meta << "n=" << g.n << " m=" << g.edges.size() << " t=" << t << " k=" << k;
    summary = meta.str();

    auto fast = solve_p2_membership(g, t, k);
    const GraphFamily family{{make_clique(2)}};
    const GraphInstance inst{g, family, t, k, GraphVariant::vertex_membership};
    const bool exact = solve_graph_exact(inst, opt.oracle).has_value();
    if (fast.has_value() != exact)
        res.fail(std::string("p2 solver disagrees with the oracle: exact=") +
                 (exact ? "yes" : "no"));
    if (fast) {
        std::string why;
        if (!check_graph_solution(inst, *fast, &why)) res.fail("p2 witness invalid: " + why);
    }
}

}  // namespace

bool is_known_check_variant(const std::string& name) {
    if (name == "set-overlap" || name == "set-overlap-clustered" || name == "set-membership" ||
        name == "p3-lift" || name == "c3-lift" || name == "p2")
        return true;
    return variant_from_string(name).has_value();
}

CheckReport run_check(const CheckOptions& options) {
    CheckReport report;
    std::ostringstream out;
    SplitMix64 master(options.seed);

    std::vector<std::string> variants = options.variants;
    if (variants.empty()) variants = {"set-overlap"};

    for (int trial = 0; trial < options.trials; ++trial) {
        const std::string& variant = variants[static_cast<std::size_t>(trial) % variants.size()];
        SplitMix64 rng = master.split();
        TrialResult res;
        std::string summary;
        try {
            if (variant == "set-overlap") {
                run_set_trial(rng, SetMode::overlap, options, res, summary);
            } else if (variant == "set-overlap-clustered") {
                run_set_trial(rng, SetMode::overlap, options, res, summary, true);
            } else if (variant == "set-membership") {
                run_set_trial(rng, SetMode::membership, options, res, summary);
            } else if (variant == "p3-lift") {
                run_p3_lift_trial(rng, options, res, summary);
            } else if (variant == "c3-lift") {
                run_c3_lift_trial(rng, options, res, summary);
            } else if (variant == "p2") {
                run_p2_trial(rng, options, res, summary);
            } else if (auto gv = variant_from_string(variant)) {
                run_graph_trial(rng, *gv, options, res, summary);
            } else {
                res.fail("unknown variant name");
            }
        } catch (const BudgetError& e) {
            res.fail(std::string("budget exceeded: ") + e.what());
        } catch (const std::exception& e) {
            res.fail(std::string("exception: ") + e.what());
        }
        ++report.trials;
        if (!res.ok) ++report.failures;
        if (options.verbose || !res.ok) {
            out << "trial " << trial << " " << variant << " [" << summary << "] "
                << (res.ok ? "pass" : "FAIL " + res.detail) << "\n";
        }
    }

    out << "checked " << report.trials << " trials, " << report.failures << " failures\n";
    report.text = out.str();
    return report;
}

}  // namespace opk
