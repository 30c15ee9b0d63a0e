#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "adaseq/graph.hpp"
#include "adaseq/states.hpp"
#include "adaseq/utility.hpp"

namespace adaseq {

// Answers state queries for vertices as they are selected. Backed by a
// ground-truth realization, a replay map, or nothing at all (the
// non-adaptive mode, where no state is ever revealed).
class FeedbackOracle {
public:
    static FeedbackOracle never() { return FeedbackOracle{}; }

    static FeedbackOracle from_realization(Realization phi) {
        FeedbackOracle o;
        o.reveal_ = [phi = std::move(phi)](VertexId v) -> std::optional<State> {
            return phi.at(v);
        };
        return o;
    }

    static FeedbackOracle from_map(std::map<VertexId, State> truth, State fallback) {
        FeedbackOracle o;
        o.reveal_ = [truth = std::move(truth), fallback](VertexId v) -> std::optional<State> {
            auto it = truth.find(v);
            return it == truth.end() ? fallback : it->second;
        };
        return o;
    }

    static FeedbackOracle from_function(std::function<std::optional<State>(VertexId)> fn) {
        FeedbackOracle o;
        o.reveal_ = std::move(fn);
        return o;
    }

    std::optional<State> reveal(VertexId v) const {
        return reveal_ ? reveal_(v) : std::nullopt;
    }

private:
    std::function<std::optional<State>(VertexId)> reveal_;
};

enum class TieBreak {
    lowest_item_id, // lexicographic (src, dst) under canonical edge ids
    highest_item_id,
};

struct PolicyStep {
    ItemId item = 0;   // chosen edge or hyperedge
    double delta = 0;  // its conditional expected gain at selection time
    std::vector<VertexId> appended;
    std::vector<std::pair<VertexId, State>> observed;
};

struct PolicyTrace {
    Sequence sigma;
    std::vector<PolicyStep> steps;
    PartialRealization final_psi; // vertex states observed by the end of the run
    std::string note;             // non-empty when the run was flagged (e.g. stuck start)

    double total_delta() const {
        double t = 0;
        for (const PolicyStep& s : steps) t += s.delta;
        return t;
    }
};

// Knobs shared by the greedy policies. The defaults reproduce the bare
// algorithms; the experiment harness seeds prior knowledge and bans
// re-recommending items the user is already known to hold.
struct GreedyOptions {
    TieBreak tie = TieBreak::lowest_item_id;
    PartialRealization initial_psi;  // states known before the first pick
    std::vector<VertexId> exclude;   // vertices that must never be appended
};

namespace detail {

struct ArgmaxState {
    bool any = false;
    double best = 0.0;
    ItemId item = 0;
};

inline void consider(ArgmaxState& s, ItemId id, double delta, TieBreak tie) {
    bool better = !s.any || delta > s.best;
    if (!better && delta == s.best && tie == TieBreak::highest_item_id) better = id > s.item;
    if (better) {
        s.any = true;
        s.best = delta;
        s.item = id;
    }
    // lowest_item_id: ids are scanned in ascending order, first hit wins
}

inline bool in(const std::vector<VertexId>& vs, VertexId v) {
    return std::find(vs.begin(), vs.end(), v) != vs.end();
}

} // namespace detail

// Adaptive Sequence Greedy. While |sigma| <= k - 2: among the edges whose
// destination is still selectable, pick the one with the largest
// conditional expected gain given the edge states induced so far; append
// its missing endpoints and observe their states through the oracle.
//
// A vertex counts as "already held" when it is in sigma, in the seeded
// knowledge, or excluded; such vertices are neither appended nor valid
// destinations. With empty options this is exactly the textbook loop.
inline PolicyTrace adaptive_sequence_greedy(const WeightedDigraph& g, const UtilityFunction& h,
                                            const EdgeStateRule& rule,
                                            const Marginals& marginals,
                                            const FeedbackOracle& feedback, int k,
                                            const GreedyOptions& opt = {}) {
    PolicyTrace trace;
    trace.final_psi = opt.initial_psi;

    auto held = [&](VertexId v) {
        return trace.sigma.contains(v) || opt.initial_psi.contains(v) ||
               detail::in(opt.exclude, v);
    };

    while (static_cast<int>(trace.sigma.size()) <= k - 2) {
        EdgeStateMap psi_edges =
            induce_edge_partial(g, trace.final_psi, induced_edges(trace.sigma, g), rule);

        detail::ArgmaxState best;
        for (EdgeId id : valid_edges(trace.sigma, g)) {
            if (held(g.edge(id).dst)) continue;
            auto dist = edge_state_distribution(g, id, trace.final_psi, marginals, rule);
            double delta = marginal_gain(h, id, psi_edges, dist);
            detail::consider(best, id, delta, opt.tie);
        }
        if (!best.any) break;

        const Edge& e = g.edge(best.item);
        PolicyStep step;
        step.item = best.item;
        step.delta = best.best;
        if (!(e.src == e.dst || held(e.src))) step.appended.push_back(e.src);
        step.appended.push_back(e.dst);
        for (VertexId v : step.appended) {
            trace.sigma.items.push_back(v);
            if (auto s = feedback.reveal(v)) {
                trace.final_psi = observe(trace.final_psi, v, *s);
                step.observed.emplace_back(v, *s);
            }
        }
        trace.steps.push_back(std::move(step));
    }
    return trace;
}

// Sequence-Greedy without states: the same loop with a never-reveal oracle,
// so every gain is computed from the priors and nothing enters psi.
inline PolicyTrace nonadaptive_sequence_greedy(const WeightedDigraph& g,
                                               const UtilityFunction& h,
                                               const EdgeStateRule& rule,
                                               const Marginals& marginals, int k,
                                               const GreedyOptions& opt = {}) {
    GreedyOptions o = opt;
    o.initial_psi = PartialRealization{};
    for (const auto& [v, s] : opt.initial_psi.observed()) o.exclude.push_back(v);
    return adaptive_sequence_greedy(g, h, rule, marginals, FeedbackOracle::never(), k, o);
}

// Adaptive Hyper Sequence Greedy. While |sigma| <= k - r: among hyperedges
// whose overlap with sigma is an in-order prefix, pick the best by
// conditional gain, append its missing vertices in hyperedge order, then
// refresh the hyperedge-state view over everything now fully induced.
inline PolicyTrace adaptive_hyper_sequence_greedy(const OrderedHypergraph& hg,
                                                  const UtilityFunction& h,
                                                  const EdgeStateRule& rule,
                                                  const Marginals& marginals,
                                                  const FeedbackOracle& feedback, int k,
                                                  const GreedyOptions& opt = {}) {
    PolicyTrace trace;
    trace.final_psi = opt.initial_psi;
    const int r = static_cast<int>(hg.max_arity());

    auto held = [&](VertexId v) {
        return trace.sigma.contains(v) || opt.initial_psi.contains(v) ||
               detail::in(opt.exclude, v);
    };

    while (static_cast<int>(trace.sigma.size()) <= k - r) {
        HyperedgeStateMap psi_hyper = induce_hyperedge_partial(
            hg, trace.final_psi, fully_induced_hyperedges(trace.sigma, hg), rule);

        detail::ArgmaxState best;
        for (HyperedgeId id : hyper_valid_edges(trace.sigma, hg)) {
            bool blocked = false;
            for (VertexId v : hg.hyperedge(id).vertices)
                if (!trace.sigma.contains(v) && held(v)) blocked = true;
            if (blocked) continue;
            auto dist = hyperedge_state_distribution(hg, id, trace.final_psi, marginals, rule);
            double delta = marginal_gain(h, id, psi_hyper, dist);
            detail::consider(best, id, delta, opt.tie);
        }
        if (!best.any) break;

        PolicyStep step;
        step.item = best.item;
        step.delta = best.best;
        for (VertexId v : hg.hyperedge(best.item).vertices) {
            if (trace.sigma.contains(v)) continue;
            step.appended.push_back(v);
            trace.sigma.items.push_back(v);
            if (auto s = feedback.reveal(v)) {
                trace.final_psi = observe(trace.final_psi, v, *s);
                step.observed.emplace_back(v, *s);
            }
        }
        trace.steps.push_back(std::move(step));
    }
    return trace;
}

// The k most popular vertices by self-loop weight (missing self-loop means
// popularity zero), excluding `exclude`; ties by ascending vertex id.
inline Sequence frequency_baseline(const WeightedDigraph& g, int k,
                                   const std::vector<VertexId>& exclude = {}) {
    std::vector<VertexId> order;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (!detail::in(exclude, v)) order.push_back(v);
    std::stable_sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
        return g.self_loop_weight(a).value_or(0.0) > g.self_loop_weight(b).value_or(0.0);
    });
    if (k < 0) k = 0;
    if (order.size() > static_cast<std::size_t>(k)) order.resize(static_cast<std::size_t>(k));
    return Sequence(std::move(order));
}

// Frontier-constrained greedy for link navigation: only edges leaving the
// last confirmed page are candidates, a rejected pick (state 0) keeps the
// frontier in place, and reaching target_stop with a confirmed pick ends
// the run. Makes up to k single-vertex picks.
inline PolicyTrace path_constrained_greedy(const WeightedDigraph& g, const UtilityFunction& h,
                                           const EdgeStateRule& rule,
                                           const Marginals& marginals,
                                           const FeedbackOracle& feedback, int k, VertexId start,
                                           std::optional<VertexId> target_stop = std::nullopt,
                                           const GreedyOptions& opt = {}) {
    if (start >= g.vertex_count()) throw InputError("start vertex out of range");
    PolicyTrace trace;
    trace.final_psi = opt.initial_psi;

    auto [first_out, last_out] = g.out_edge_range(start);
    if (first_out == last_out) {
        trace.note = "start vertex has no outgoing edges";
        return trace;
    }

    auto held = [&](VertexId v) {
        return trace.sigma.contains(v) || v == start || opt.initial_psi.contains(v) ||
               detail::in(opt.exclude, v);
    };

    VertexId frontier = start;
    while (static_cast<int>(trace.sigma.size()) < k) {
        EdgeStateMap psi_edges =
            induce_edge_partial(g, trace.final_psi, induced_edges(trace.sigma, g), rule);

        detail::ArgmaxState best;
        auto [lo, hi] = g.out_edge_range(frontier);
        for (EdgeId id = lo; id < hi; ++id) {
            if (held(g.edge(id).dst)) continue;
            auto dist = edge_state_distribution(g, id, trace.final_psi, marginals, rule);
            double delta = marginal_gain(h, id, psi_edges, dist);
            detail::consider(best, id, delta, opt.tie);
        }
        if (!best.any) break;

        VertexId pick = g.edge(best.item).dst;
        PolicyStep step;
        step.item = best.item;
        step.delta = best.best;
        step.appended.push_back(pick);
        trace.sigma.items.push_back(pick);

        State confirmed = 0;
        if (auto s = feedback.reveal(pick)) {
            trace.final_psi = observe(trace.final_psi, pick, *s);
            step.observed.emplace_back(pick, *s);
            confirmed = *s;
        }
        trace.steps.push_back(std::move(step));
        if (confirmed == 1) {
            frontier = pick;
            if (target_stop && pick == *target_stop) break;
        }
    }
    return trace;
}

// Re-checks a digraph trace after the fact: every chosen edge must have
// been in the valid set of its own step and the budget respected.
inline bool validate_trace(const WeightedDigraph& g, const PolicyTrace& trace, int k) {
    if (static_cast<int>(trace.sigma.size()) > k) return false;
    Sequence prefix;
    std::size_t consumed = 0;
    for (const PolicyStep& step : trace.steps) {
        std::vector<EdgeId> valid = valid_edges(prefix, g);
        if (std::find(valid.begin(), valid.end(), step.item) == valid.end()) return false;
        for (VertexId v : step.appended) {
            if (consumed >= trace.sigma.size() || trace.sigma.items[consumed] != v) return false;
            prefix.items.push_back(v);
            ++consumed;
        }
    }
    return consumed == trace.sigma.size();
}

} // namespace adaseq
