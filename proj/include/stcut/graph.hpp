#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_set>
#include <utility>
#include <vector>

#include "stcut/vertex_set.hpp"

namespace stcut {

using Weight = std::int64_t;

// Undirected edges are stored with u < v.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    static Edge normalized(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }
    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct Arc {
    Vertex tail = 0;
    Vertex head = 0;
    friend bool operator==(const Arc&, const Arc&) = default;
    friend auto operator<=>(const Arc&, const Arc&) = default;
};

/// s-t cut stored as the t-side indicator: bit set <=> vertex in T.
class Cut {
public:
    Cut() = default;
    Cut(VertexSet t_side, Vertex s, Vertex t) : t_side_(std::move(t_side)) {
        if (t_side_.contains(s) || !t_side_.contains(t))
            throw std::invalid_argument("cut must place s on the S side and t on the T side");
    }
    static Cut from_source_side(const VertexSet& s_side, Vertex s, Vertex t) {
        return Cut(s_side.complement(), s, t);
    }

    int universe() const { return t_side_.universe(); }
    bool in_t(Vertex v) const { return t_side_.contains(v); }
    bool in_s(Vertex v) const { return !t_side_.contains(v); }
    const VertexSet& t_side() const { return t_side_; }
    VertexSet s_side() const { return t_side_.complement(); }

    friend bool operator==(const Cut&, const Cut&) = default;

private:
    VertexSet t_side_;
};

/// Simple undirected unit-weight graph with designated terminals.
class Graph {
public:
    Graph() = default;
    Graph(int n, Vertex s, Vertex t) : n_(n), s_(s), t_(t) {
        if (n < 2) throw std::invalid_argument("graph needs at least two vertices");
        if (s == t) throw std::invalid_argument("terminals must differ");
        if (s < 0 || s >= n || t < 0 || t >= n) throw std::invalid_argument("terminal out of range");
    }

    int n() const { return n_; }
    Vertex s() const { return s_; }
    Vertex t() const { return t_; }
    std::size_t num_edges() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }

    bool has_edge(Vertex a, Vertex b) const {
        if (a == b) return false;
        return index_.count(key(Edge::normalized(a, b))) > 0;
    }
    bool has_edge(const Edge& e) const { return has_edge(e.u, e.v); }

    // Returns false when the edge is already present.
    bool try_add_edge(Vertex a, Vertex b) {
        check_vertex(a);
        check_vertex(b);
        if (a == b) throw std::invalid_argument("self-loops are not allowed");
        const Edge e = Edge::normalized(a, b);
        if (!index_.insert(key(e)).second) return false;
        edges_.push_back(e);
        return true;
    }
    void add_edge(Vertex a, Vertex b) {
        if (!try_add_edge(a, b)) throw std::invalid_argument("duplicate edge");
    }
    void add_edge(const Edge& e) { add_edge(e.u, e.v); }

    bool remove_edge(Vertex a, Vertex b) {
        const Edge e = Edge::normalized(a, b);
        if (index_.erase(key(e)) == 0) return false;
        edges_.erase(std::find(edges_.begin(), edges_.end(), e));
        return true;
    }

    Graph empty_like() const { return Graph(n_, s_, t_); }

    /// Edges of *this not present in `other`.
    Graph minus(const Graph& other) const {
        Graph out = empty_like();
        for (const auto& e : edges_)
            if (!other.has_edge(e)) out.add_edge(e);
        return out;
    }
    /// Union as edge sets.
    Graph united(const Graph& other) const {
        Graph out = *this;
        for (const auto& e : other.edges()) out.try_add_edge(e.u, e.v);
        return out;
    }

    std::vector<std::vector<Vertex>> adjacency() const {
        std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n_));
        for (const auto& e : edges_) {
            adj[static_cast<std::size_t>(e.u)].push_back(e.v);
            adj[static_cast<std::size_t>(e.v)].push_back(e.u);
        }
        return adj;
    }

    /// |E(S, V \ S)| where S is any vertex subset.
    Weight boundary(const VertexSet& side) const {
        Weight c = 0;
        for (const auto& e : edges_) c += side.contains(e.u) != side.contains(e.v) ? 1 : 0;
        return c;
    }

private:
    std::uint64_t key(const Edge& e) const {
        return static_cast<std::uint64_t>(e.u) * static_cast<std::uint64_t>(n_) + static_cast<std::uint64_t>(e.v);
    }
    void check_vertex(Vertex v) const {
        if (v < 0 || v >= n_) throw std::out_of_range("edge endpoint out of range");
    }

    int n_ = 0;
    Vertex s_ = 0;
    Vertex t_ = 1;
    std::vector<Edge> edges_;
    std::unordered_set<std::uint64_t> index_;
};

/// Adjacency rows as bitsets; boundary() in O(n^2 / 64).
class BitAdjacency {
public:
    BitAdjacency() = default;
    explicit BitAdjacency(int n) : rows_(static_cast<std::size_t>(n), VertexSet(n)) {}
    explicit BitAdjacency(const Graph& g) : BitAdjacency(g.n()) {
        for (const auto& e : g.edges()) add(e);
    }
    void add(const Edge& e) {
        rows_[static_cast<std::size_t>(e.u)].insert(e.v);
        rows_[static_cast<std::size_t>(e.v)].insert(e.u);
    }
    Weight boundary(const VertexSet& side) const {
        Weight c = 0;
        for (Vertex v : side.members()) c += rows_[static_cast<std::size_t>(v)].count_outside(side);
        return c;
    }
    const VertexSet& row(Vertex v) const { return rows_[static_cast<std::size_t>(v)]; }

private:
    std::vector<VertexSet> rows_;
};

/// Undirected graph with positive integer weights. Adding an existing pair
/// increases its multiplicity.
class WeightedGraph {
public:
    WeightedGraph() = default;
    explicit WeightedGraph(int n) : n_(n) {}

    int n() const { return n_; }
    const std::map<Edge, Weight>& edges() const { return edges_; }
    std::size_t num_edges() const { return edges_.size(); }

    void add_edge(Vertex a, Vertex b, Weight w) {
        if (a == b) throw std::invalid_argument("self-loops are not allowed");
        if (a < 0 || b < 0 || a >= n_ || b >= n_) throw std::out_of_range("edge endpoint out of range");
        if (w <= 0) throw std::invalid_argument("edge weights must be positive");
        edges_[Edge::normalized(a, b)] += w;
    }
    Weight weight(Vertex a, Vertex b) const {
        auto it = edges_.find(Edge::normalized(a, b));
        return it == edges_.end() ? 0 : it->second;
    }
    Weight total_weight() const {
        Weight sum = 0;
        for (const auto& [e, w] : edges_) sum += w;
        return sum;
    }
    Weight max_weight() const {
        Weight mx = 0;
        for (const auto& [e, w] : edges_) mx = std::max(mx, w);
        return mx;
    }
    Weight boundary(const VertexSet& side) const {
        Weight c = 0;
        for (const auto& [e, w] : edges_)
            if (side.contains(e.u) != side.contains(e.v)) c += w;
        return c;
    }

    static WeightedGraph from(const Graph& g) {
        WeightedGraph out(g.n());
        for (const auto& e : g.edges()) out.add_edge(e.u, e.v, 1);
        return out;
    }

private:
    int n_ = 0;
    std::map<Edge, Weight> edges_;
};

/// Directed graph with positive integer arc weights.
class WeightedDigraph {
public:
    WeightedDigraph() = default;
    explicit WeightedDigraph(int n) : n_(n) {}

    int n() const { return n_; }
    const std::map<Arc, Weight>& arcs() const { return arcs_; }
    std::size_t num_arcs() const { return arcs_.size(); }

    void add_arc(Vertex tail, Vertex head, Weight w) {
        if (tail == head) throw std::invalid_argument("self-loops are not allowed");
        if (tail < 0 || head < 0 || tail >= n_ || head >= n_) throw std::out_of_range("arc endpoint out of range");
        if (w <= 0) throw std::invalid_argument("arc weights must be positive");
        arcs_[Arc{tail, head}] += w;
    }
    Weight weight(Vertex tail, Vertex head) const {
        auto it = arcs_.find(Arc{tail, head});
        return it == arcs_.end() ? 0 : it->second;
    }
    Weight total_weight() const {
        Weight sum = 0;
        for (const auto& [a, w] : arcs_) sum += w;
        return sum;
    }
    Weight max_weight() const {
        Weight mx = 0;
        for (const auto& [a, w] : arcs_) mx = std::max(mx, w);
        return mx;
    }
    /// Weight of arcs leaving S = complement(t_side) into t_side.
    Weight forward_weight(const VertexSet& t_side) const {
        Weight c = 0;
        for (const auto& [a, w] : arcs_)
            if (!t_side.contains(a.tail) && t_side.contains(a.head)) c += w;
        return c;
    }

private:
    int n_ = 0;
    std::map<Arc, Weight> arcs_;
};

/// Mixed graph: an undirected unit part and an explicit directed weighted part.
struct MixedGraph {
    Graph g;
    WeightedDigraph f;

    MixedGraph() = default;
    explicit MixedGraph(Graph undirected) : g(std::move(undirected)), f(g.n()) {}
    MixedGraph(Graph undirected, WeightedDigraph directed) : g(std::move(undirected)), f(std::move(directed)) {
        if (g.n() != f.n()) throw std::invalid_argument("mixed graph parts disagree on vertex count");
    }
    int n() const { return g.n(); }
    Vertex s() const { return g.s(); }
    Vertex t() const { return g.t(); }
};

/// Mixed graph whose undirected part carries integer multiplicities; the
/// shape produced by contraction and by sparsifier unions.
struct WeightedMixedGraph {
    int n = 0;
    Vertex s = 0;
    Vertex t = 1;
    WeightedGraph undirected;
    WeightedDigraph directed;

    WeightedMixedGraph() = default;
    WeightedMixedGraph(int n_, Vertex s_, Vertex t_) : n(n_), s(s_), t(t_), undirected(n_), directed(n_) {}
    static WeightedMixedGraph from(const MixedGraph& m) {
        WeightedMixedGraph out(m.n(), m.s(), m.t());
        for (const auto& e : m.g.edges()) out.undirected.add_edge(e.u, e.v, 1);
        for (const auto& [a, w] : m.f.arcs()) out.directed.add_arc(a.tail, a.head, w);
        return out;
    }
    static WeightedMixedGraph from(const Graph& g) { return from(MixedGraph(g)); }
};

inline void check_cut_dimension(int n, const Cut& cut) {
    if (cut.universe() != n) throw std::invalid_argument("cut dimension does not match graph");
}

inline Weight cut_weight(const Graph& g, const Cut& cut) {
    check_cut_dimension(g.n(), cut);
    return g.boundary(cut.t_side());
}
inline Weight cut_weight(const WeightedGraph& g, const Cut& cut) {
    check_cut_dimension(g.n(), cut);
    return g.boundary(cut.t_side());
}
inline Weight cut_weight(const WeightedDigraph& f, const Cut& cut) {
    check_cut_dimension(f.n(), cut);
    return f.forward_weight(cut.t_side());
}
inline Weight cut_weight(const MixedGraph& m, const Cut& cut) {
    return cut_weight(m.g, cut) + cut_weight(m.f, cut);
}
inline Weight cut_weight(const WeightedMixedGraph& m, const Cut& cut) {
    return cut_weight(m.undirected, cut) + cut_weight(m.directed, cut);
}

/// Disjoint blocks covering [0, n).
class Partition {
public:
    Partition() = default;

    static Partition from_blocks(int n, const std::vector<std::vector<Vertex>>& blocks) {
        Partition p;
        p.block_of_.assign(static_cast<std::size_t>(n), -1);
        int id = 0;
        for (const auto& block : blocks) {
            if (block.empty()) throw std::invalid_argument("partition blocks must be non-empty");
            for (Vertex v : block) {
                if (v < 0 || v >= n) throw std::out_of_range("partition vertex out of range");
                if (p.block_of_[static_cast<std::size_t>(v)] != -1)
                    throw std::invalid_argument("partition blocks overlap");
                p.block_of_[static_cast<std::size_t>(v)] = id;
            }
            ++id;
        }
        for (int b : p.block_of_)
            if (b == -1) throw std::invalid_argument("partition does not cover every vertex");
        p.count_ = id;
        return p;
    }
    static Partition singletons(int n) {
        Partition p;
        p.block_of_.resize(static_cast<std::size_t>(n));
        std::iota(p.block_of_.begin(), p.block_of_.end(), 0);
        p.count_ = n;
        return p;
    }

    int n() const { return static_cast<int>(block_of_.size()); }
    int size() const { return count_; }
    int block_of(Vertex v) const { return block_of_.at(static_cast<std::size_t>(v)); }

    std::vector<std::vector<Vertex>> blocks() const {
        std::vector<std::vector<Vertex>> out(static_cast<std::size_t>(count_));
        for (Vertex v = 0; v < n(); ++v) out[static_cast<std::size_t>(block_of(v))].push_back(v);
        return out;
    }

    /// True when no block is split by the cut.
    bool respected_by(const VertexSet& t_side) const {
        std::vector<int> side(static_cast<std::size_t>(count_), -1);
        for (Vertex v = 0; v < n(); ++v) {
            const int here = t_side.contains(v) ? 1 : 0;
            int& seen = side[static_cast<std::size_t>(block_of(v))];
            if (seen == -1) seen = here;
            else if (seen != here) return false;
        }
        return true;
    }

    /// Expands a cut on the block graph back to the original vertices.
    Cut lift(const Cut& block_cut, Vertex s, Vertex t) const {
        VertexSet t_side(n());
        for (Vertex v = 0; v < n(); ++v)
            if (block_cut.in_t(block_of(v))) t_side.insert(v);
        return Cut(t_side, s, t);
    }

private:
    std::vector<int> block_of_;
    int count_ = 0;
};

/// Contracts each block to a super-vertex; intra-block edges vanish and
/// parallel edges become multiplicities.
inline WeightedMixedGraph contract(const WeightedMixedGraph& graph, const Partition& partition) {
    if (partition.n() != graph.n) throw std::invalid_argument("partition size does not match graph");
    const int bs = partition.block_of(graph.s);
    const int bt = partition.block_of(graph.t);
    if (bs == bt) throw std::invalid_argument("s and t fall in the same block");
    WeightedMixedGraph out(partition.size(), bs, bt);
    for (const auto& [e, w] : graph.undirected.edges()) {
        const int a = partition.block_of(e.u), b = partition.block_of(e.v);
        if (a != b) out.undirected.add_edge(a, b, w);
    }
    for (const auto& [arc, w] : graph.directed.arcs()) {
        const int a = partition.block_of(arc.tail), b = partition.block_of(arc.head);
        if (a != b) out.directed.add_arc(a, b, w);
    }
    return out;
}
inline WeightedMixedGraph contract(const MixedGraph& graph, const Partition& partition) {
    return contract(WeightedMixedGraph::from(graph), partition);
}

}  // namespace stcut
