#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <stdexcept>
#include <vector>

#include "stcut/graph.hpp"

namespace stcut {

// Dinic on integer capacities. Each add() creates a forward/backward arc pair.
class FlowNetwork {
public:
    explicit FlowNetwork(int n) : head_(static_cast<std::size_t>(n), -1) {}

    int n() const { return static_cast<int>(head_.size()); }

    int add(Vertex u, Vertex v, Weight cap_uv, Weight cap_vu) {
        const int id = static_cast<int>(to_.size());
        push(u, v, cap_uv);
        push(v, u, cap_vu);
        return id;
    }

    Weight run(Vertex s, Vertex t) {
        Weight total = 0;
        while (bfs(s, t)) {
            it_.assign(head_.begin(), head_.end());
            while (Weight pushed = dfs(s, t, std::numeric_limits<Weight>::max())) total += pushed;
        }
        return total;
    }

    // Net flow sent along the pair created by add(): positive means u -> v.
    Weight net(int id) const { return (initial_[static_cast<std::size_t>(id)] - cap_[static_cast<std::size_t>(id)]); }
    Weight pair_net(int id) const {
        // Undirected pairs start with equal capacity both ways, so the
        // difference of the two residuals is twice the net flow.
        return (cap_[static_cast<std::size_t>(id + 1)] - cap_[static_cast<std::size_t>(id)] -
                (initial_[static_cast<std::size_t>(id + 1)] - initial_[static_cast<std::size_t>(id)])) / 2;
    }

    /// Vertices reachable from s through arcs with spare capacity.
    VertexSet reachable(Vertex s) const {
        VertexSet seen(n());
        std::vector<Vertex> stack{s};
        seen.insert(s);
        while (!stack.empty()) {
            const Vertex u = stack.back();
            stack.pop_back();
            for (int e = head_[static_cast<std::size_t>(u)]; e != -1; e = next_[static_cast<std::size_t>(e)]) {
                const Vertex v = to_[static_cast<std::size_t>(e)];
                if (cap_[static_cast<std::size_t>(e)] > 0 && !seen.contains(v)) {
                    seen.insert(v);
                    stack.push_back(v);
                }
            }
        }
        return seen;
    }

private:
    void push(Vertex u, Vertex v, Weight cap) {
        to_.push_back(v);
        cap_.push_back(cap);
        initial_.push_back(cap);
        next_.push_back(head_[static_cast<std::size_t>(u)]);
        head_[static_cast<std::size_t>(u)] = static_cast<int>(to_.size()) - 1;
    }
    bool bfs(Vertex s, Vertex t) {
        level_.assign(head_.size(), -1);
        std::queue<Vertex> q;
        level_[static_cast<std::size_t>(s)] = 0;
        q.push(s);
        while (!q.empty()) {
            const Vertex u = q.front();
            q.pop();
            for (int e = head_[static_cast<std::size_t>(u)]; e != -1; e = next_[static_cast<std::size_t>(e)]) {
                const Vertex v = to_[static_cast<std::size_t>(e)];
                if (cap_[static_cast<std::size_t>(e)] > 0 && level_[static_cast<std::size_t>(v)] < 0) {
                    level_[static_cast<std::size_t>(v)] = level_[static_cast<std::size_t>(u)] + 1;
                    q.push(v);
                }
            }
        }
        return level_[static_cast<std::size_t>(t)] >= 0;
    }
    Weight dfs(Vertex u, Vertex t, Weight limit) {
        if (u == t) return limit;
        for (int& e = it_[static_cast<std::size_t>(u)]; e != -1; e = next_[static_cast<std::size_t>(e)]) {
            const Vertex v = to_[static_cast<std::size_t>(e)];
            if (cap_[static_cast<std::size_t>(e)] <= 0 || level_[static_cast<std::size_t>(v)] != level_[static_cast<std::size_t>(u)] + 1) continue;
            if (Weight got = dfs(v, t, std::min(limit, cap_[static_cast<std::size_t>(e)]))) {
                cap_[static_cast<std::size_t>(e)] -= got;
                cap_[static_cast<std::size_t>(e ^ 1)] += got;
                return got;
            }
        }
        return 0;
    }

    std::vector<int> head_, next_, it_, level_;
    std::vector<Vertex> to_;
    std::vector<Weight> cap_, initial_;
};

/// f edge-disjoint unit s->t paths.
struct FlowDecomposition {
    Vertex s = 0;
    Vertex t = 1;
    int n = 0;
    std::vector<std::vector<Vertex>> paths;

    Weight value() const { return static_cast<Weight>(paths.size()); }

    /// Directed arc multiset of the union of the paths.
    WeightedDigraph arcs() const {
        WeightedDigraph out(n);
        for (const auto& p : paths)
            for (std::size_t i = 0; i + 1 < p.size(); ++i) out.add_arc(p[i], p[i + 1], 1);
        return out;
    }
    std::size_t arc_count() const {
        std::size_t c = 0;
        for (const auto& p : paths) c += p.size() - 1;
        return c;
    }
    FlowDecomposition prefix(std::size_t count) const {
        FlowDecomposition out{s, t, n, {}};
        out.paths.assign(paths.begin(), paths.begin() + static_cast<std::ptrdiff_t>(std::min(count, paths.size())));
        return out;
    }
};

struct FlowError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

namespace detail {

// Finds one directed cycle among arcs with positive multiplicity, if any.
inline std::vector<Vertex> find_cycle(int n, const std::vector<std::map<Vertex, Weight>>& out) {
    std::vector<int> color(static_cast<std::size_t>(n), 0);
    std::vector<Vertex> parent(static_cast<std::size_t>(n), -1);
    for (Vertex root = 0; root < n; ++root) {
        if (color[static_cast<std::size_t>(root)] != 0) continue;
        std::vector<std::pair<Vertex, std::map<Vertex, Weight>::const_iterator>> stack;
        stack.emplace_back(root, out[static_cast<std::size_t>(root)].begin());
        color[static_cast<std::size_t>(root)] = 1;
        while (!stack.empty()) {
            auto& [u, it] = stack.back();
            if (it == out[static_cast<std::size_t>(u)].end()) {
                color[static_cast<std::size_t>(u)] = 2;
                stack.pop_back();
                continue;
            }
            const Vertex v = it->first;
            ++it;
            if (color[static_cast<std::size_t>(v)] == 1) {
                std::vector<Vertex> cycle{v};
                for (Vertex x = u; x != v; x = parent[static_cast<std::size_t>(x)]) cycle.push_back(x);
                std::reverse(cycle.begin() + 1, cycle.end());
                return cycle;
            }
            if (color[static_cast<std::size_t>(v)] == 0) {
                color[static_cast<std::size_t>(v)] = 1;
                parent[static_cast<std::size_t>(v)] = u;
                stack.emplace_back(v, out[static_cast<std::size_t>(v)].begin());
            }
        }
    }
    return {};
}

}  // namespace detail

/// Cancels antiparallel arcs and circulations, then splits into unit paths.
/// The union of the returned paths is acyclic.
inline FlowDecomposition make_noncircular(const WeightedDigraph& flow, Vertex s, Vertex t) {
    const int n = flow.n();
    std::vector<Weight> balance(static_cast<std::size_t>(n), 0);
    for (const auto& [a, w] : flow.arcs()) {
        balance[static_cast<std::size_t>(a.tail)] += w;
        balance[static_cast<std::size_t>(a.head)] -= w;
    }
    for (Vertex v = 0; v < n; ++v)
        if (v != s && v != t && balance[static_cast<std::size_t>(v)] != 0)
            throw FlowError("flow violates conservation");
    const Weight value = balance[static_cast<std::size_t>(s)];
    if (value < 0) throw FlowError("flow runs into the source");

    std::vector<std::map<Vertex, Weight>> out(static_cast<std::size_t>(n));
    for (const auto& [a, w] : flow.arcs()) {
        const Weight back = flow.weight(a.head, a.tail);
        if (w > back) out[static_cast<std::size_t>(a.tail)][a.head] = w - back;
    }
    auto take = [&](Vertex u, Vertex v, Weight amount) {
        auto& m = out[static_cast<std::size_t>(u)];
        auto it = m.find(v);
        it->second -= amount;
        if (it->second == 0) m.erase(it);
    };
    for (;;) {
        auto cycle = detail::find_cycle(n, out);
        if (cycle.empty()) break;
        Weight low = std::numeric_limits<Weight>::max();
        for (std::size_t i = 0; i < cycle.size(); ++i)
            low = std::min(low, out[static_cast<std::size_t>(cycle[i])].at(cycle[(i + 1) % cycle.size()]));
        for (std::size_t i = 0; i < cycle.size(); ++i) take(cycle[i], cycle[(i + 1) % cycle.size()], low);
    }

    FlowDecomposition dec{s, t, n, {}};
    for (Weight i = 0; i < value; ++i) {
        std::vector<Vertex> path{s};
        Vertex u = s;
        while (u != t) {
            auto& m = out[static_cast<std::size_t>(u)];
            if (m.empty()) throw FlowError("flow decomposition got stuck");
            const Vertex v = m.begin()->first;
            take(u, v, 1);
            path.push_back(v);
            u = v;
        }
        dec.paths.push_back(std::move(path));
    }
    return dec;
}

/// Max flow on a weighted mixed graph, with per-edge flows for later use.
struct MixedFlow {
    Weight value = 0;
    std::map<Edge, Weight> undirected_flow;  // signed: positive means e.u -> e.v
    std::map<Arc, Weight> arc_flow;
    Cut cut;  // canonical: S = vertices reachable from s in the final residual

    WeightedDigraph as_digraph(int n) const {
        WeightedDigraph out(n);
        for (const auto& [e, x] : undirected_flow) {
            if (x > 0) out.add_arc(e.u, e.v, x);
            if (x < 0) out.add_arc(e.v, e.u, -x);
        }
        for (const auto& [a, x] : arc_flow)
            if (x > 0) out.add_arc(a.tail, a.head, x);
        return out;
    }
};

inline MixedFlow max_flow_detailed(const WeightedMixedGraph& g) {
    FlowNetwork net(g.n);
    std::vector<std::pair<Edge, int>> und;
    std::vector<std::pair<Arc, int>> dir;
    for (const auto& [e, w] : g.undirected.edges()) und.emplace_back(e, net.add(e.u, e.v, w, w));
    for (const auto& [a, w] : g.directed.arcs()) dir.emplace_back(a, net.add(a.tail, a.head, w, 0));
    MixedFlow out;
    out.value = net.run(g.s, g.t);
    for (const auto& [e, id] : und)
        if (Weight x = net.pair_net(id); x != 0) out.undirected_flow[e] = x;
    for (const auto& [a, id] : dir)
        if (Weight x = net.net(id); x != 0) out.arc_flow[a] = x;
    out.cut = Cut::from_source_side(net.reachable(g.s), g.s, g.t);
    return out;
}

struct MaxFlowResult {
    Weight value = 0;
    FlowDecomposition decomposition;
    Cut cut;
};

inline MaxFlowResult max_flow(const WeightedMixedGraph& g) {
    auto detailed = max_flow_detailed(g);
    MaxFlowResult r;
    r.value = detailed.value;
    r.decomposition = make_noncircular(detailed.as_digraph(g.n), g.s, g.t);
    r.cut = detailed.cut;
    return r;
}
inline MaxFlowResult max_flow(const MixedGraph& g) { return max_flow(WeightedMixedGraph::from(g)); }
inline MaxFlowResult max_flow(const Graph& g) { return max_flow(WeightedMixedGraph::from(g)); }

inline Weight max_flow_value(const WeightedMixedGraph& g) { return max_flow_detailed(g).value; }
inline Weight max_flow_value(const MixedGraph& g) { return max_flow_value(WeightedMixedGraph::from(g)); }
inline Weight max_flow_value(const Graph& g) { return max_flow_value(WeightedMixedGraph::from(g)); }

inline std::pair<Weight, Cut> min_cut(const WeightedMixedGraph& g) {
    auto d = max_flow_detailed(g);
    return {d.value, d.cut};
}
inline std::pair<Weight, Cut> min_cut(const MixedGraph& g) { return min_cut(WeightedMixedGraph::from(g)); }
inline std::pair<Weight, Cut> min_cut(const Graph& g) { return min_cut(WeightedMixedGraph::from(g)); }

/// Flow paths as an undirected subgraph of g; rejects paths off g or reusing an edge.
inline Graph flow_edges(const Graph& g, const FlowDecomposition& flow) {
    Graph used = g.empty_like();
    for (const auto& p : flow.paths) {
        if (p.empty() || p.front() != g.s() || p.back() != g.t()) throw FlowError("flow path must run from s to t");
        for (std::size_t i = 0; i + 1 < p.size(); ++i) {
            if (!g.has_edge(p[i], p[i + 1])) throw FlowError("flow uses an edge outside the graph");
            if (!used.try_add_edge(p[i], p[i + 1])) throw FlowError("flow uses an edge twice");
        }
    }
    return used;
}

/// G_F: G minus the flow edges, plus every flow arc reversed at weight 2.
inline MixedGraph residual(const Graph& g, const FlowDecomposition& flow) {
    const Graph used = flow_edges(g, flow);
    WeightedDigraph back(g.n());
    for (const auto& p : flow.paths)
        for (std::size_t i = 0; i + 1 < p.size(); ++i) back.add_arc(p[i + 1], p[i], 2);
    return MixedGraph(g.minus(used), std::move(back));
}

/// |E_G(S,T)| == value(F) + w_{G_F}(S,T).
inline bool cut_identity_check(const Graph& g, const FlowDecomposition& flow, const Cut& cut) {
    const MixedGraph gf = residual(g, flow);
    return cut_weight(g, cut) == flow.value() + cut_weight(gf, cut);
}

/// Acyclic-flow size bound sqrt(2 f W) * n, for unit-weight graphs W = 1.
inline bool within_flow_cover_bound(std::size_t weight, Weight value, int n, Weight max_multiplicity = 1) {
    return static_cast<double>(weight) <=
           static_cast<double>(n) * std::sqrt(2.0 * static_cast<double>(value) * static_cast<double>(max_multiplicity)) + 1e-9;
}

}  // namespace stcut
