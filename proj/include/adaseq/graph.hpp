#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "adaseq/errors.hpp"

namespace adaseq {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using HyperedgeId = std::uint32_t;

struct Edge {
    VertexId src = 0;
    VertexId dst = 0;
    double weight = 0.0;
};

// An ordered selection of distinct vertices.
struct Sequence {
    std::vector<VertexId> items;

    Sequence() = default;
    Sequence(std::initializer_list<VertexId> init) : items(init) {}
    explicit Sequence(std::vector<VertexId> v) : items(std::move(v)) {}

    std::size_t size() const { return items.size(); }
    bool empty() const { return items.empty(); }
    bool contains(VertexId v) const {
        return std::find(items.begin(), items.end(), v) != items.end();
    }
    bool operator==(const Sequence& other) const = default;
};

// Immutable directed graph with per-edge weights in [0, 1]. Self-loops are
// allowed, parallel edges are not. Edge ids are the rank of (src, dst) in
// lexicographic order, so identical edge sets always get identical ids.
class WeightedDigraph {
public:
    WeightedDigraph() = default;

    WeightedDigraph(std::size_t n, std::vector<Edge> edges,
                    std::vector<std::string> labels = {})
        : n_(n), edges_(std::move(edges)), labels_(std::move(labels)) {
        if (!labels_.empty() && labels_.size() != n_)
            throw InputError("label table size does not match vertex count");
        std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
            return std::pair(a.src, a.dst) < std::pair(b.src, b.dst);
        });
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            const Edge& e = edges_[i];
            if (e.src >= n_ || e.dst >= n_)
                throw InputError("edge endpoint out of range");
            if (e.weight < 0.0 || e.weight > 1.0)
                throw InputError("edge weight outside [0,1]");
            if (i > 0 && edges_[i - 1].src == e.src && edges_[i - 1].dst == e.dst)
                throw InputError("duplicate edge (" + std::to_string(e.src) + "," +
                                 std::to_string(e.dst) + ")");
        }
        out_begin_.assign(n_ + 1, 0);
        for (const Edge& e : edges_) ++out_begin_[e.src + 1];
        for (std::size_t v = 0; v < n_; ++v) out_begin_[v + 1] += out_begin_[v];
    }

    std::size_t vertex_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    std::span<const Edge> edges() const { return edges_; }
    const Edge& edge(EdgeId id) const { return edges_.at(id); }

    std::optional<EdgeId> find_edge(VertexId src, VertexId dst) const {
        auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair(src, dst),
                                   [](const Edge& e, const std::pair<VertexId, VertexId>& key) {
                                       return std::pair(e.src, e.dst) < key;
                                   });
        if (it == edges_.end() || it->src != src || it->dst != dst) return std::nullopt;
        return static_cast<EdgeId>(it - edges_.begin());
    }

    // Edge ids sourced at v form the contiguous id range [first, last).
    std::pair<EdgeId, EdgeId> out_edge_range(VertexId v) const {
        return {static_cast<EdgeId>(out_begin_.at(v)),
                static_cast<EdgeId>(out_begin_.at(v + 1))};
    }

    std::optional<double> self_loop_weight(VertexId v) const {
        if (auto id = find_edge(v, v)) return edges_[*id].weight;
        return std::nullopt;
    }

    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(VertexId v) const {
        static const std::string empty;
        return labels_.empty() ? empty : labels_.at(v);
    }

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> out_begin_;
    std::vector<std::string> labels_;
};

// Hyperedge with an explicit vertex order; vertices must be distinct.
struct OrderedHyperedge {
    std::vector<VertexId> vertices;

    OrderedHyperedge() = default;
    OrderedHyperedge(std::initializer_list<VertexId> init) : vertices(init) {}
    explicit OrderedHyperedge(std::vector<VertexId> v) : vertices(std::move(v)) {}

    std::size_t size() const { return vertices.size(); }
    bool operator==(const OrderedHyperedge& other) const = default;
};

// Immutable ordered hypergraph. Hyperedge ids are the rank of the vertex
// sequence in lexicographic order.
class OrderedHypergraph {
public:
    OrderedHypergraph() = default;

    OrderedHypergraph(std::size_t n, std::vector<OrderedHyperedge> hyperedges)
        : n_(n), hyperedges_(std::move(hyperedges)) {
        std::sort(hyperedges_.begin(), hyperedges_.end(),
                  [](const OrderedHyperedge& a, const OrderedHyperedge& b) {
                      return a.vertices < b.vertices;
                  });
        for (std::size_t i = 0; i < hyperedges_.size(); ++i) {
            const auto& verts = hyperedges_[i].vertices;
            if (verts.empty()) throw InputError("empty hyperedge");
            for (std::size_t a = 0; a < verts.size(); ++a) {
                if (verts[a] >= n_) throw InputError("hyperedge vertex out of range");
                for (std::size_t b = a + 1; b < verts.size(); ++b)
                    if (verts[a] == verts[b])
                        throw InputError("repeated vertex within hyperedge");
            }
            if (i > 0 && hyperedges_[i - 1] == hyperedges_[i])
                throw InputError("duplicate hyperedge");
            max_len_ = std::max(max_len_, verts.size());
        }
    }

    std::size_t vertex_count() const { return n_; }
    std::size_t hyperedge_count() const { return hyperedges_.size(); }
    std::span<const OrderedHyperedge> hyperedges() const { return hyperedges_; }
    const OrderedHyperedge& hyperedge(HyperedgeId id) const { return hyperedges_.at(id); }

    // Largest hyperedge length; 0 for an empty hypergraph.
    std::size_t max_arity() const { return max_len_; }

private:
    std::size_t n_ = 0;
    std::vector<OrderedHyperedge> hyperedges_;
    std::size_t max_len_ = 0;
};

namespace detail {

// Positions of sigma's items, or -1. Validates sigma against the graph.
inline std::vector<int> sequence_positions(const Sequence& sigma, std::size_t n) {
    std::vector<int> pos(n, -1);
    for (std::size_t i = 0; i < sigma.items.size(); ++i) {
        VertexId v = sigma.items[i];
        if (v >= n) throw InputError("sequence contains unknown vertex id");
        if (pos[v] != -1) throw InputError("sequence contains repeated vertex");
        pos[v] = static_cast<int>(i);
    }
    return pos;
}

} // namespace detail

// E(sigma): edges whose source appears in sigma at or before its destination.
// A self-loop is induced as soon as its vertex enters sigma.
inline std::vector<EdgeId> induced_edges(const Sequence& sigma, const WeightedDigraph& g) {
    std::vector<int> pos = detail::sequence_positions(sigma, g.vertex_count());
    std::vector<EdgeId> out;
    for (EdgeId id = 0; id < g.edge_count(); ++id) {
        const Edge& e = g.edge(id);
        if (pos[e.src] != -1 && pos[e.dst] != -1 && pos[e.src] <= pos[e.dst])
            out.push_back(id);
    }
    return out;
}

// Largest number of incoming edges over all vertices; self-loops count.
inline std::size_t max_in_degree(const WeightedDigraph& g) {
    std::vector<std::size_t> deg(g.vertex_count(), 0);
    for (const Edge& e : g.edges()) ++deg[e.dst];
    return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

// Edges still selectable by the greedy policy: destination not yet in sigma.
inline std::vector<EdgeId> valid_edges(const Sequence& sigma, const WeightedDigraph& g) {
    std::vector<int> pos = detail::sequence_positions(sigma, g.vertex_count());
    std::vector<EdgeId> out;
    for (EdgeId id = 0; id < g.edge_count(); ++id)
        if (pos[g.edge(id).dst] == -1) out.push_back(id);
    return out;
}

namespace detail {

// Length of the prefix of e matched by sigma, or -1 when sigma's overlap
// with e is not an in-order prefix.
inline int matched_prefix(const std::vector<int>& pos, const OrderedHyperedge& e) {
    std::size_t len = 0;
    while (len < e.vertices.size() && pos[e.vertices[len]] != -1) ++len;
    int prev = -1;
    for (std::size_t i = 0; i < len; ++i) {
        int p = pos[e.vertices[i]];
        if (p < prev) return -1; // prefix present but out of order
        prev = p;
    }
    for (std::size_t i = len; i < e.vertices.size(); ++i)
        if (pos[e.vertices[i]] != -1) return -1; // overlap beyond the prefix
    return static_cast<int>(len);
}

} // namespace detail

// Hyperedges whose overlap with sigma is an in-order (possibly empty) prefix
// and which are not yet fully contained in sigma.
inline std::vector<HyperedgeId> hyper_valid_edges(const Sequence& sigma,
                                                  const OrderedHypergraph& h) {
    std::vector<int> pos = detail::sequence_positions(sigma, h.vertex_count());
    std::vector<HyperedgeId> out;
    for (HyperedgeId id = 0; id < h.hyperedge_count(); ++id) {
        const OrderedHyperedge& e = h.hyperedge(id);
        int len = detail::matched_prefix(pos, e);
        if (len >= 0 && static_cast<std::size_t>(len) < e.size()) out.push_back(id);
    }
    return out;
}

// Hyperedges all of whose vertices occur in sigma in the hyperedge's order
// (not necessarily contiguously).
inline std::vector<HyperedgeId> fully_induced_hyperedges(const Sequence& sigma,
                                                         const OrderedHypergraph& h) {
    std::vector<int> pos = detail::sequence_positions(sigma, h.vertex_count());
    std::vector<HyperedgeId> out;
    for (HyperedgeId id = 0; id < h.hyperedge_count(); ++id) {
        const OrderedHyperedge& e = h.hyperedge(id);
        int prev = -1;
        bool ok = true;
        for (VertexId v : e.vertices) {
            int p = pos[v];
            if (p == -1 || p < prev) {
                ok = false;
                break;
            }
            prev = p;
        }
        if (ok) out.push_back(id);
    }
    return out;
}

// Hyperedges ending at each vertex, maximized; the hypergraph analogue of
// max_in_degree (a length-1 hyperedge ends at its only vertex).
inline std::size_t hyper_max_in_degree(const OrderedHypergraph& h) {
    std::vector<std::size_t> deg(h.vertex_count(), 0);
    for (const OrderedHyperedge& e : h.hyperedges()) ++deg[e.vertices.back()];
    return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

} // namespace adaseq
