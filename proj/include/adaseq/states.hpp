#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "adaseq/errors.hpp"
#include "adaseq/graph.hpp"
#include "adaseq/rng.hpp"

namespace adaseq {

// Vertex and edge states come from a small finite alphabet; everything in
// this toolkit uses the binary alphabet {0, 1}.
using State = int;

inline constexpr int kBinaryAlphabet = 2;

// Total map vertex -> state.
class Realization {
public:
    Realization() = default;
    explicit Realization(std::vector<State> states) : states_(std::move(states)) {}
    Realization(std::size_t n, State fill) : states_(n, fill) {}

    std::size_t size() const { return states_.size(); }
    State at(VertexId v) const { return states_.at(v); }
    State& at(VertexId v) { return states_.at(v); }
    const std::vector<State>& states() const { return states_; }
    bool operator==(const Realization& other) const = default;

private:
    std::vector<State> states_;
};

// Partial map vertex -> state. Unknown states are simply absent; there is
// no sentinel value in the alphabet.
class PartialRealization {
public:
    PartialRealization() = default;
    explicit PartialRealization(std::map<VertexId, State> observed)
        : observed_(std::move(observed)) {}

    std::size_t size() const { return observed_.size(); }
    bool empty() const { return observed_.empty(); }
    bool contains(VertexId v) const { return observed_.count(v) != 0; }
    std::optional<State> get(VertexId v) const {
        auto it = observed_.find(v);
        if (it == observed_.end()) return std::nullopt;
        return it->second;
    }
    const std::map<VertexId, State>& observed() const { return observed_; }
    bool operator==(const PartialRealization& other) const = default;

private:
    std::map<VertexId, State> observed_;
};

// Returns psi extended with (v, s); psi itself is unchanged. Re-observing
// the same state is a no-op, a contradicting state is an error.
inline PartialRealization observe(const PartialRealization& psi, VertexId v, State s) {
    if (auto prior = psi.get(v)) {
        if (*prior != s)
            throw InputError("vertex " + std::to_string(v) +
                             " already observed with a different state");
        return psi;
    }
    auto m = psi.observed();
    m.emplace(v, s);
    return PartialRealization(std::move(m));
}

// dom(psi) subset of dom(psi2), agreeing wherever psi is defined.
inline bool is_subrealization(const PartialRealization& psi, const PartialRealization& psi2) {
    for (const auto& [v, s] : psi.observed()) {
        auto other = psi2.get(v);
        if (!other || *other != s) return false;
    }
    return true;
}

// Deterministic map from endpoint states to an edge state. The rule also
// declares which endpoints it reads, which determines when a partially
// observed edge already has a known state. For a hyperedge the "source" is
// its first vertex and the "destination" its last.
struct EdgeStateRule {
    bool uses_source = true;
    bool uses_destination = false;
    std::function<State(State, State)> apply = [](State s, State) { return s; };

    // The state of an edge (i, j) equals the state of i.
    static EdgeStateRule start_vertex() { return EdgeStateRule{}; }

    static EdgeStateRule end_vertex() {
        return EdgeStateRule{false, true, [](State, State d) { return d; }};
    }

    // State 1 only when both endpoints are in state 1.
    static EdgeStateRule both_one() {
        return EdgeStateRule{true, true,
                             [](State s, State d) { return s == 1 && d == 1 ? 1 : 0; }};
    }
};

using EdgeStateMap = std::map<EdgeId, State>;

// Edge states induced by the vertex observations in psi: an edge gets a
// state as soon as every endpoint the rule reads has been observed.
inline EdgeStateMap induce_edge_partial(const WeightedDigraph& g, const PartialRealization& psi,
                                        std::span<const EdgeId> edges,
                                        const EdgeStateRule& rule) {
    EdgeStateMap out;
    for (EdgeId id : edges) {
        const Edge& e = g.edge(id);
        auto src = psi.get(e.src);
        auto dst = psi.get(e.dst);
        if (rule.uses_source && !src) continue;
        if (rule.uses_destination && !dst) continue;
        out.emplace(id, rule.apply(src.value_or(0), dst.value_or(0)));
    }
    return out;
}

using HyperedgeStateMap = std::map<HyperedgeId, State>;

inline HyperedgeStateMap induce_hyperedge_partial(const OrderedHypergraph& h,
                                                  const PartialRealization& psi,
                                                  std::span<const HyperedgeId> hyperedges,
                                                  const EdgeStateRule& rule) {
    HyperedgeStateMap out;
    for (HyperedgeId id : hyperedges) {
        const OrderedHyperedge& e = h.hyperedge(id);
        auto first = psi.get(e.vertices.front());
        auto last = psi.get(e.vertices.back());
        if (rule.uses_source && !first) continue;
        if (rule.uses_destination && !last) continue;
        out.emplace(id, rule.apply(first.value_or(0), last.value_or(0)));
    }
    return out;
}

// Distribution over vertex realizations. Three kinds:
//   - bernoulli: independent per-vertex P(state = 1)
//   - point_mass: a single fixed realization
//   - replay: a deterministic ground-truth map (possibly partial) built
//     from held-out data; policies query it as a feedback oracle
class StateDistribution {
public:
    enum class Kind { Bernoulli, PointMass, Replay };

    static StateDistribution bernoulli(std::vector<double> q) {
        for (double p : q)
            if (p < 0.0 || p > 1.0) throw InputError("bernoulli parameter outside [0,1]");
        StateDistribution d;
        d.kind_ = Kind::Bernoulli;
        d.n_ = q.size();
        d.q_ = std::move(q);
        return d;
    }

    static StateDistribution point_mass(Realization phi) {
        StateDistribution d;
        d.kind_ = Kind::PointMass;
        d.n_ = phi.size();
        d.phi_ = std::move(phi);
        return d;
    }

    static StateDistribution replay(std::map<VertexId, State> truth, std::size_t n) {
        StateDistribution d;
        d.kind_ = Kind::Replay;
        d.n_ = n;
        d.truth_ = std::move(truth);
        return d;
    }

    Kind kind() const { return kind_; }
    std::size_t vertex_count() const { return n_; }

    // P(state(v) = 1); deterministic kinds give 0 or 1.
    double marginal_one(VertexId v) const {
        switch (kind_) {
        case Kind::Bernoulli:
            return q_.at(v);
        case Kind::PointMass:
            return phi_.at(v) == 1 ? 1.0 : 0.0;
        case Kind::Replay: {
            auto it = truth_.find(v);
            if (it == truth_.end())
                throw InputError("replay distribution has no state for vertex " +
                                 std::to_string(v));
            return it->second == 1 ? 1.0 : 0.0;
        }
        }
        return 0.0;
    }

    const std::map<VertexId, State>& replay_truth() const { return truth_; }

private:
    Kind kind_ = Kind::Bernoulli;
    std::size_t n_ = 0;
    std::vector<double> q_;
    Realization phi_;
    std::map<VertexId, State> truth_;
};

// One realization drawn from dist; bit-deterministic given the seed.
inline Realization sample_realization(const StateDistribution& dist, std::uint64_t seed) {
    switch (dist.kind()) {
    case StateDistribution::Kind::PointMass:
    case StateDistribution::Kind::Replay: {
        Realization phi(dist.vertex_count(), 0);
        for (VertexId v = 0; v < dist.vertex_count(); ++v)
            phi.at(v) = dist.marginal_one(v) >= 1.0 ? 1 : 0;
        return phi;
    }
    case StateDistribution::Kind::Bernoulli: {
        SplitMix64 rng(seed);
        Realization phi(dist.vertex_count(), 0);
        for (VertexId v = 0; v < dist.vertex_count(); ++v)
            phi.at(v) = rng.uniform01() < dist.marginal_one(v) ? 1 : 0;
        return phi;
    }
    }
    return Realization{};
}

inline constexpr std::size_t kEnumerationVertexGuard = 20;

// All realizations of positive probability with their probabilities, in
// ascending bitmask order (bit v set = vertex v in state 1). Exact support
// for expectations over p(phi); binary alphabet only.
inline std::vector<std::pair<Realization, double>>
enumerate_realizations(const StateDistribution& dist) {
    const std::size_t n = dist.vertex_count();
    if (dist.kind() != StateDistribution::Kind::Bernoulli) {
        return {{sample_realization(dist, 0), 1.0}};
    }
    if (n > kEnumerationVertexGuard)
        throw CapacityError("exact enumeration limited to " +
                            std::to_string(kEnumerationVertexGuard) + " vertices");
    std::vector<std::pair<Realization, double>> out;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        double p = 1.0;
        for (VertexId v = 0; v < n; ++v) {
            double q = dist.marginal_one(v);
            p *= (mask >> v) & 1 ? q : 1.0 - q;
            if (p == 0.0) break;
        }
        if (p == 0.0) continue;
        Realization phi(n, 0);
        for (VertexId v = 0; v < n; ++v)
            if ((mask >> v) & 1) phi.at(v) = 1;
        out.emplace_back(std::move(phi), p);
    }
    return out;
}

// Total edge-state view of a full realization.
inline EdgeStateMap induce_edge_total(const WeightedDigraph& g, const Realization& phi,
                                      const EdgeStateRule& rule) {
    EdgeStateMap out;
    for (EdgeId id = 0; id < g.edge_count(); ++id) {
        const Edge& e = g.edge(id);
        out.emplace(id, rule.apply(phi.at(e.src), phi.at(e.dst)));
    }
    return out;
}

inline HyperedgeStateMap induce_hyperedge_total(const OrderedHypergraph& h,
                                                const Realization& phi,
                                                const EdgeStateRule& rule) {
    HyperedgeStateMap out;
    for (HyperedgeId id = 0; id < h.hyperedge_count(); ++id) {
        const OrderedHyperedge& e = h.hyperedge(id);
        out.emplace(id, rule.apply(phi.at(e.vertices.front()), phi.at(e.vertices.back())));
    }
    return out;
}

} // namespace adaseq
