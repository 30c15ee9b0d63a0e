#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "adaseq/errors.hpp"
#include "adaseq/graph.hpp"
#include "adaseq/states.hpp"

namespace adaseq {

// Items are edge ids (digraph) or hyperedge ids (hypergraph).
using ItemId = std::uint32_t;

// Weakly adaptive set submodular objective h over (item set, item states).
// Both bundled utilities depend only on the items in state 1: items in
// state 0 or with unknown state contribute nothing, so value_of_ones is
// the primitive and evaluate/value are derived views.
class UtilityFunction {
public:
    virtual ~UtilityFunction() = default;

    // h of the given set of state-1 items.
    virtual double value_of_ones(std::span<const ItemId> ones) const = 0;

    // h(items, states): only members of `items` that are in state 1 count.
    double evaluate(std::span<const ItemId> items, const std::map<ItemId, State>& states) const {
        std::vector<ItemId> ones;
        ones.reserve(items.size());
        for (ItemId id : items) {
            auto it = states.find(id);
            if (it != states.end() && it->second == 1) ones.push_back(id);
        }
        return value_of_ones(ones);
    }

    // h(psi) = h(dom(psi), states of psi).
    double value(const std::map<ItemId, State>& psi) const {
        std::vector<ItemId> ones;
        for (const auto& [id, s] : psi)
            if (s == 1) ones.push_back(id);
        return value_of_ones(ones);
    }
};

// Probabilistic coverage: h(E1) = sum over destinations j of
// 1 - prod_{items in E1 ending at j} (1 - w). For a digraph the destination
// of an edge (i, j) is j; for a hypergraph it is the hyperedge's last vertex.
class CoverageUtility final : public UtilityFunction {
public:
    CoverageUtility() = default;
    CoverageUtility(std::vector<VertexId> destinations, std::vector<double> weights)
        : dest_(std::move(destinations)), weight_(std::move(weights)) {
        if (dest_.size() != weight_.size())
            throw InputError("coverage utility: destination/weight size mismatch");
        for (double w : weight_)
            if (w < 0.0 || w > 1.0) throw InputError("coverage weight outside [0,1]");
    }

    static CoverageUtility from_digraph(const WeightedDigraph& g) {
        std::vector<VertexId> dest;
        std::vector<double> w;
        for (const Edge& e : g.edges()) {
            dest.push_back(e.dst);
            w.push_back(e.weight);
        }
        return CoverageUtility(std::move(dest), std::move(w));
    }

    static CoverageUtility from_hypergraph(const OrderedHypergraph& h,
                                           std::vector<double> weights) {
        if (weights.size() != h.hyperedge_count())
            throw InputError("coverage utility: one weight per hyperedge required");
        std::vector<VertexId> dest;
        for (const OrderedHyperedge& e : h.hyperedges()) dest.push_back(e.vertices.back());
        return CoverageUtility(std::move(dest), std::move(weights));
    }

    double value_of_ones(std::span<const ItemId> ones) const override {
        // uncovered probability per destination touched by `ones`
        constexpr std::size_t kSmall = 16;
        std::array<std::pair<VertexId, double>, kSmall> small;
        std::size_t used = 0;
        std::map<VertexId, double> big;
        bool use_big = false;
        for (ItemId id : ones) {
            VertexId j = dest_.at(id);
            double factor = 1.0 - weight_[id];
            if (!use_big) {
                std::size_t s = 0;
                while (s < used && small[s].first != j) ++s;
                if (s < used) {
                    small[s].second *= factor;
                    continue;
                }
                if (used < kSmall) {
                    small[used++] = {j, factor};
                    continue;
                }
                for (std::size_t t = 0; t < used; ++t) big.emplace(small[t]);
                use_big = true;
            }
            auto [it, inserted] = big.emplace(j, factor);
            if (!inserted) it->second *= factor;
        }
        double total = 0.0;
        if (use_big) {
            for (const auto& [j, uncovered] : big) total += 1.0 - uncovered;
        } else {
            for (std::size_t s = 0; s < used; ++s) total += 1.0 - small[s].second;
        }
        return total;
    }

    double weight(ItemId id) const { return weight_.at(id); }
    VertexId destination(ItemId id) const { return dest_.at(id); }
    std::size_t item_count() const { return weight_.size(); }

private:
    std::vector<VertexId> dest_;
    std::vector<double> weight_;
};

// Modular objective: h(E1) = sum of weights of state-1 items. Unit weights
// give the edge-counting utility.
class LinearUtility final : public UtilityFunction {
public:
    LinearUtility() = default;
    explicit LinearUtility(std::vector<double> weights) : weight_(std::move(weights)) {
        for (double w : weight_)
            if (w < 0.0) throw InputError("linear utility weight must be non-negative");
    }

    static LinearUtility counting(std::size_t item_count) {
        return LinearUtility(std::vector<double>(item_count, 1.0));
    }

    double value_of_ones(std::span<const ItemId> ones) const override {
        double total = 0.0;
        for (ItemId id : ones) total += weight_.at(id);
        return total;
    }

    double weight(ItemId id) const { return weight_.at(id); }
    std::size_t item_count() const { return weight_.size(); }

private:
    std::vector<double> weight_;
};

// Per-vertex prior P(state = 1), used for every vertex whose state has not
// been observed yet.
struct Marginals {
    std::vector<double> q;

    static Marginals constant(std::size_t n, double value) {
        if (value < 0.0 || value > 1.0) throw InputError("marginal outside [0,1]");
        return Marginals{std::vector<double>(n, value)};
    }

    // Amazon-style prior: the self-loop weight w_ii estimates the
    // probability that the vertex is in state 1; `fallback` covers
    // vertices without a self-loop.
    static Marginals from_self_loops(const WeightedDigraph& g, double fallback) {
        Marginals m{std::vector<double>(g.vertex_count(), fallback)};
        for (VertexId v = 0; v < g.vertex_count(); ++v)
            if (auto w = g.self_loop_weight(v)) m.q[v] = *w;
        return m;
    }

    static Marginals from_distribution(const StateDistribution& dist) {
        Marginals m{std::vector<double>(dist.vertex_count(), 0.0)};
        for (VertexId v = 0; v < dist.vertex_count(); ++v) m.q[v] = dist.marginal_one(v);
        return m;
    }

    double at(VertexId v) const { return q.at(v); }
};

namespace detail {

// {P(endpoint = 0), P(endpoint = 1)} given observations, else the prior.
inline std::array<double, 2> endpoint_distribution(VertexId v, const PartialRealization& psi,
                                                   const Marginals& marginals) {
    if (auto s = psi.get(v)) return *s == 1 ? std::array{0.0, 1.0} : std::array{1.0, 0.0};
    double q = marginals.at(v);
    return {1.0 - q, q};
}

inline std::array<double, 2> combined_endpoint_state(const EdgeStateRule& rule, VertexId src,
                                                     VertexId dst,
                                                     const PartialRealization& psi,
                                                     const Marginals& marginals) {
    std::array<double, 2> out{0.0, 0.0};
    auto ps = rule.uses_source ? endpoint_distribution(src, psi, marginals)
                               : std::array{1.0, 0.0};
    auto pd = rule.uses_destination ? endpoint_distribution(dst, psi, marginals)
                                    : std::array{1.0, 0.0};
    for (State s = 0; s < kBinaryAlphabet; ++s)
        for (State d = 0; d < kBinaryAlphabet; ++d) {
            double p = ps[s] * pd[d];
            if (p == 0.0) continue;
            out[rule.apply(s, d) == 1 ? 1 : 0] += p;
        }
    return out;
}

} // namespace detail

// Distribution {P(edge state = 0), P(edge state = 1)} of one edge given the
// vertex observations in psi and the priors everywhere else. Endpoints are
// treated as independent, matching the independent-bernoulli model.
inline std::array<double, 2> edge_state_distribution(const WeightedDigraph& g, EdgeId e,
                                                     const PartialRealization& psi,
                                                     const Marginals& marginals,
                                                     const EdgeStateRule& rule) {
    const Edge& edge = g.edge(e);
    return detail::combined_endpoint_state(rule, edge.src, edge.dst, psi, marginals);
}

inline std::array<double, 2> hyperedge_state_distribution(const OrderedHypergraph& h,
                                                          HyperedgeId e,
                                                          const PartialRealization& psi,
                                                          const Marginals& marginals,
                                                          const EdgeStateRule& rule) {
    const OrderedHyperedge& he = h.hyperedge(e);
    return detail::combined_endpoint_state(rule, he.vertices.front(), he.vertices.back(), psi,
                                           marginals);
}

inline void validate_distribution(std::span<const double> dist) {
    double sum = 0.0;
    for (double p : dist) {
        if (p < 0.0) throw InputError("negative probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw InputError("state distribution does not sum to 1");
}

// Delta(e | psi): expected gain of acquiring item e on top of the observed
// item states psi, where state_dist[s] = P(e is in state s | psi).
inline double marginal_gain(const UtilityFunction& h, ItemId e,
                            const std::map<ItemId, State>& psi,
                            std::span<const double> state_dist) {
    if (psi.count(e)) throw InputError("item already present in the conditioning realization");
    validate_distribution(state_dist);
    double base = h.value(psi);
    double gain = 0.0;
    auto extended = psi;
    for (State s = 0; s < static_cast<State>(state_dist.size()); ++s) {
        if (state_dist[s] == 0.0) continue;
        extended[e] = s;
        gain += state_dist[s] * (h.value(extended) - base);
    }
    return gain;
}

// Closed form of the coverage gain of edge e = (i, j):
//   p_one * w_ij * prod over state-1 edges (i', j) in psi of (1 - w_i'j).
inline double coverage_marginal_closed_form(const CoverageUtility& cov, ItemId e,
                                            const std::map<ItemId, State>& psi, double p_one) {
    if (psi.count(e)) throw InputError("item already present in the conditioning realization");
    double uncovered = 1.0;
    for (const auto& [id, s] : psi)
        if (s == 1 && cov.destination(id) == cov.destination(e))
            uncovered *= 1.0 - cov.weight(id);
    return p_one * cov.weight(e) * uncovered;
}

inline constexpr std::size_t kSetGainGuard = 12;

// Delta(A | psi): exact expected gain of acquiring the whole set A, where
// joint[mask] = P(states of A = mask) with bit t = state of A[t]. Binary
// alphabet; |A| capped to keep the 2^|A| enumeration honest.
inline double set_marginal_gain(const UtilityFunction& h, std::span<const ItemId> items,
                                const std::map<ItemId, State>& psi,
                                std::span<const double> joint) {
    if (items.size() > kSetGainGuard)
        throw CapacityError("set marginal gain limited to " + std::to_string(kSetGainGuard) +
                            " items");
    for (ItemId id : items)
        if (psi.count(id))
            throw InputError("item already present in the conditioning realization");
    if (joint.size() != (std::size_t{1} << items.size()))
        throw InputError("joint distribution size must be 2^|A|");
    validate_distribution(joint);
    double base = h.value(psi);
    double gain = 0.0;
    for (std::size_t mask = 0; mask < joint.size(); ++mask) {
        if (joint[mask] == 0.0) continue;
        auto extended = psi;
        for (std::size_t t = 0; t < items.size(); ++t)
            extended[items[t]] = (mask >> t) & 1 ? 1 : 0;
        gain += joint[mask] * (h.value(extended) - base);
    }
    return gain;
}

// f(sigma, phi) = h(E(sigma), phi^E) for a digraph instance.
inline double sequence_value(const WeightedDigraph& g, const UtilityFunction& h,
                             const EdgeStateRule& rule, const Sequence& sigma,
                             const Realization& phi) {
    std::vector<ItemId> ones;
    for (EdgeId id : induced_edges(sigma, g)) {
        const Edge& e = g.edge(id);
        if (rule.apply(phi.at(e.src), phi.at(e.dst)) == 1) ones.push_back(id);
    }
    return h.value_of_ones(ones);
}

inline double hyper_sequence_value(const OrderedHypergraph& hg, const UtilityFunction& h,
                                   const EdgeStateRule& rule, const Sequence& sigma,
                                   const Realization& phi) {
    std::vector<ItemId> ones;
    for (HyperedgeId id : fully_induced_hyperedges(sigma, hg)) {
        const OrderedHyperedge& e = hg.hyperedge(id);
        if (rule.apply(phi.at(e.vertices.front()), phi.at(e.vertices.back())) == 1)
            ones.push_back(id);
    }
    return h.value_of_ones(ones);
}

// f_avg of a policy under exact enumeration of the state distribution: the
// policy is re-run once per realization with that realization as its
// feedback, and the resulting sequences are scored under the same
// realization. value_fn(sigma, phi) supplies f(sigma, phi).
inline double policy_expected_value_exact(
    const StateDistribution& dist,
    const std::function<Sequence(const Realization&)>& run_policy,
    const std::function<double(const Sequence&, const Realization&)>& value_fn) {
    double total = 0.0;
    for (const auto& [phi, p] : enumerate_realizations(dist))
        total += p * value_fn(run_policy(phi), phi);
    return total;
}

// Monte-Carlo estimate of the same quantity; deterministic given the seed.
inline double policy_expected_value_sampled(
    const StateDistribution& dist,
    const std::function<Sequence(const Realization&)>& run_policy,
    const std::function<double(const Sequence&, const Realization&)>& value_fn,
    std::size_t samples, std::uint64_t seed) {
    if (samples == 0) throw InputError("sample count must be positive");
    double total = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        Realization phi = sample_realization(dist, derive_seed(seed, i));
        total += value_fn(run_policy(phi), phi);
    }
    return total / static_cast<double>(samples);
}

} // namespace adaseq
