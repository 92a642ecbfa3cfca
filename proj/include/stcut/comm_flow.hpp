#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "stcut/comm.hpp"
#include "stcut/context.hpp"
#include "stcut/flow.hpp"
#include "stcut/forest_packing.hpp"
#include "stcut/rsw.hpp"
#include "stcut/sparsifier.hpp"
#include "stcut/witness.hpp"

namespace stcut {

struct SparsifierAudit {
    Party party = Party::alice;
    Graph input;
    SparseGraph output;
    double eps = 0;
};

struct CommContext {
    explicit CommContext(std::uint64_t seed = 1) : seed(seed) {}

    std::uint64_t seed;
    std::uint64_t searches = 0;  // sparsifier searches so far; seeds each one
    Transcript transcript;
    int witness_cap = 12;
    bool fallback_used = false;
    std::vector<SparsifierAudit> audits;

    std::mt19937_64 search_rng(Party p) {
        std::seed_seq seq{seed, ++searches, static_cast<std::uint64_t>(p)};
        return std::mt19937_64(seq);
    }
};

struct Exchanged {
    WeightedGraph joined;
    bool exact = true;
};

/// Each player sends a bounded-weight eps-sparsifier of its graph. When both
/// are the graphs themselves the union is taken as a set.
inline Exchanged exchange_sparsifiers(const Graph& a, const Graph& b, double eps, Channel& ch, CommContext& ctx) {
    Exchanged out;
    out.joined = WeightedGraph(a.n());
    std::vector<WeightedGraph> got;
    for (Party p : {Party::alice, Party::bob}) {
        const Graph& mine = p == Party::alice ? a : b;
        auto rng = ctx.search_rng(p);
        const auto sparse = bounded_weight_sparsifier(mine, eps, rng).graph;
        ctx.audits.push_back({p, mine, sparse, eps});
        out.exact = out.exact && sparse.exact;
        got.push_back(ch.send_weighted(p, sparse.numer));
    }
    for (const auto& g : got)
        for (const auto& [e, w] : g.edges()) {
            if (out.exact && out.joined.weight(e.u, e.v) > 0) continue;
            out.joined.add_edge(e.u, e.v, w);
        }
    return out;
}

inline double exchanged_nu(const Exchanged& x, Vertex s, Vertex t, const WeightedDigraph* arcs = nullptr) {
    WeightedMixedGraph m(x.joined.n(), s, t);
    m.undirected = x.joined;
    if (arcs) m.directed = *arcs;
    return static_cast<double>(max_flow_value(m));
}

inline Graph restrict_to(const Graph& g, const VertexSet& active) {
    Graph out = g.empty_like();
    for (const auto& e : g.edges())
        if (active.contains(e.u) && active.contains(e.v)) out.add_edge(e);
    return out;
}

inline VertexSet reachable_from(const Graph& g, Vertex s) {
    const auto adj = g.adjacency();
    VertexSet seen(g.n(), {s});
    std::vector<Vertex> stack{s};
    while (!stack.empty()) {
        const Vertex u = stack.back();
        stack.pop_back();
        for (Vertex v : adj[static_cast<std::size_t>(u)])
            if (!seen.contains(v)) {
                seen.insert(v);
                stack.push_back(v);
            }
    }
    return seen;
}

struct Preprocessed {
    TwoPartyInstance instance;
    Graph h;
    VertexSet active;
};

/// Both players send spanning forests; everything not reachable from s is dropped.
inline Preprocessed preprocess(const TwoPartyInstance& inst, const Graph& h, Channel& ch) {
    ch.next_round();
    Graph grown = h;
    for (Party p : {Party::alice, Party::bob})
        for (const auto& e : ch.send_edges(p, MessageKind::forest, spanning_forest(inst.of(p)))) grown.try_add_edge(e.u, e.v);
    const VertexSet active = reachable_from(grown, inst.s());
    return {TwoPartyInstance(restrict_to(inst.alice, active), restrict_to(inst.bob, active)), restrict_to(grown, active), active};
}

struct GrowCommStep {
    const Graph* h = nullptr;
    WitnessParams params;
    const FlowDecomposition* flow = nullptr;
    const VertexSet* active = nullptr;
    BigInt count;
    std::optional<Edge> alice, bob;
};

struct GrowCommOptions {
    int witness_cap = 12;
    std::function<void(const GrowCommStep&)> observer;
};

struct GrowCommResult {
    Graph h;
    int rounds = 0;
    bool fallback = false;
};

/// Players alternately declare the private edge that kills the most residual
/// witnesses, until nu(h) >= f - k'. Above the witness cap, each round's edge
/// is instead the first private edge leaving the s-side of h's residual cut.
inline GrowCommResult grow_flow_comm(const TwoPartyInstance& inst, const VertexSet& active, Graph h, const WitnessParams& p,
                                     Channel& ch, const GrowCommOptions& opts = {}) {
    p.validate();
    GrowCommResult out;
    out.fallback = active.size() > opts.witness_cap;
    std::optional<FlowDecomposition> fixed;
    while (max_flow_value(h) < p.f - p.k_prime) {
        ch.next_round();
        ++out.rounds;
        std::optional<Edge> picks[2];
        if (!out.fallback) {
            if (!fixed) fixed = max_flow(h).decomposition.prefix(static_cast<std::size_t>(p.f - p.k));
            const BigInt now = residual_witness_count(h, p, *fixed, active, opts.witness_cap);
            for (Party who : {Party::alice, Party::bob}) {
                std::optional<Edge> best;
                BigInt best_kill = 0;
                for (const auto& e : inst.of(who).edges()) {
                    if (h.has_edge(e) || (picks[0] && *picks[0] == e)) continue;
                    Graph more = h;
                    more.add_edge(e);
                    const BigInt kill = now - residual_witness_count(more, p, *fixed, active, opts.witness_cap);
                    if (kill > best_kill) {
                        best_kill = kill;
                        best = e;
                    }
                }
                picks[static_cast<int>(who)] = ch.send_edge(who, best);
            }
            if (opts.observer) opts.observer(GrowCommStep{&h, p, &*fixed, &active, now, picks[0], picks[1]});
        } else {
            const VertexSet reach = min_cut(h).second.s_side();
            for (Party who : {Party::alice, Party::bob}) {
                std::optional<Edge> first;
                for (const auto& e : inst.of(who).edges())
                    if (!h.has_edge(e) && reach.contains(e.u) != reach.contains(e.v)) {
                        first = e;
                        break;
                    }
                picks[static_cast<int>(who)] = ch.send_edge(who, first);
                if (first) break;
            }
        }
        if (!picks[0] && !picks[1]) throw PromiseViolation("neither player can extend H although nu(H) < f - k'");
        for (const auto& e : picks)
            if (e) h.try_add_edge(e->u, e->v);
    }
    out.h = std::move(h);
    return out;
}

struct CommStage {
    int k = 0;
    int k_prime = 0;
    long bits = 0;
    int rounds = 0;
};

struct LargeFlowCommResult {
    Graph h;
    double f_hat = 0;
    double lambda = 0;
    double f = 0;
    bool empty_branch = false;
    bool fallback = false;
    std::vector<CommStage> stages;
};

inline LargeFlowCommResult large_flow_comm_promised(const TwoPartyInstance& inst, int f, int delta_param, Channel& ch,
                                                    CommContext& ctx, const GrowCommOptions& base = {}) {
    LargeFlowCommResult out;
    out.h = Graph(inst.n(), inst.s(), inst.t());
    if (f <= delta_param) return out;
    auto pre = preprocess(inst, out.h, ch);
    out.h = pre.h;
    GrowCommOptions opts = base;
    opts.witness_cap = ctx.witness_cap;
    int k = f;
    while (k > delta_param && k > 0) {
        const int kp = std::max(k / 2, delta_param);
        const std::size_t first = ch.transcript().messages().size();
        auto r = grow_flow_comm(pre.instance, pre.active, std::move(out.h), WitnessParams{f, k, kp}, ch, opts);
        out.h = std::move(r.h);
        out.fallback |= r.fallback;
        out.stages.push_back({k, kp, ch.transcript().bits_since(first), r.rounds});
        k = kp;
    }
    ctx.fallback_used |= out.fallback;
    return out;
}

/// nu(output) >= nu(G_A ∪ G_B) - delta.
inline LargeFlowCommResult large_flow_comm(const TwoPartyInstance& inst, int delta, Channel& ch, CommContext& ctx,
                                           std::optional<double> f_hat = std::nullopt, const GrowCommOptions& base = {}) {
    const int n = inst.n();
    if (delta < 1 || delta > n) throw std::invalid_argument("large_flow_comm needs 1 <= delta <= n");
    if (!f_hat) {
        ch.next_round();
        f_hat = exchanged_nu(exchange_sparsifiers(inst.alice, inst.bob, 0.01, ch, ctx), inst.s(), inst.t());
    }
    LargeFlowCommResult out;
    out.h = Graph(n, inst.s(), inst.t());
    out.f_hat = *f_hat;
    if (out.f_hat <= 0.99 * delta) {
        out.empty_branch = true;
        return out;
    }
    out.lambda = delta / (20.0 * out.f_hat);
    ch.next_round();
    out.f = exchanged_nu(exchange_sparsifiers(inst.alice, inst.bob, out.lambda, ch, ctx), inst.s(), inst.t());
    if (out.f <= (1 - out.lambda) * delta) {
        out.empty_branch = true;
        return out;
    }
    const int target = static_cast<int>(std::ceil(out.f / (1 + out.lambda) - 1e-9));
    const int slack = static_cast<int>(std::floor(out.lambda * out.f / 10 + 1e-9));
    auto r = large_flow_comm_promised(inst, target, slack, ch, ctx, base);
    out.h = std::move(r.h);
    out.stages = std::move(r.stages);
    out.fallback = r.fallback;
    return out;
}

/// Each player's share of the undirected part of (G_A ∪ G_B)_F, plus the
/// reversed arcs of F, which both know. F must lie inside h.
struct ResidualSplit {
    TwoPartyInstance parts;
    WeightedDigraph arcs;
};

inline ResidualSplit residual_split(const TwoPartyInstance& inst, const Graph& h, const FlowDecomposition& flow) {
    const Graph used = flow_edges(h, flow);
    const MixedGraph gf = residual(h, flow);
    return {TwoPartyInstance(inst.alice.minus(used), inst.bob.minus(used)), gf.f};
}

class CommBackend : public EdgeBackend {
public:
    CommBackend(TwoPartyInstance packed, Channel& ch, CommContext& ctx) : packed_(std::move(packed)), ch_(ch), ctx_(ctx) {}
    int n() const override { return packed_.n(); }
    Vertex s() const override { return packed_.s(); }
    Vertex t() const override { return packed_.t(); }
    SparseGraph sparsify(double eps) override {
        ch_.next_round();
        auto x = exchange_sparsifiers(packed_.alice, packed_.bob, eps, ch_, ctx_);
        return SparseGraph{std::move(x.joined), 1, eps, x.exact};
    }
    std::vector<Edge> discover_crossing_edges(const Partition& part) override {
        ch_.next_round();
        Graph seen(packed_.n(), packed_.s(), packed_.t());
        for (Party p : {Party::alice, Party::bob}) {
            std::vector<Edge> mine;
            for (const auto& e : packed_.of(p).edges())
                if (part.block_of(e.u) != part.block_of(e.v)) mine.push_back(e);
            for (const auto& e : ch_.send_edges(p, MessageKind::edges, mine)) seen.try_add_edge(e.u, e.v);
        }
        auto out = seen.edges();
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    TwoPartyInstance packed_;
    Channel& ch_;
    CommContext& ctx_;
};

struct PackedInstance {
    TwoPartyInstance packed;
    int f = 0;
    double nu_estimate = 0;
    Exchanged sketch;
};

/// f = 99 nu(G*_A ∪ G*_B ∪ F) from 1/100-sparsifiers, then each player
/// replaces its graph by an f-forest packing of it.
inline PackedInstance rsw_comm_preprocess(const TwoPartyInstance& inst, const WeightedDigraph& arcs, Channel& ch,
                                          CommContext& ctx) {
    ch.next_round();
    auto sketch = exchange_sparsifiers(inst.alice, inst.bob, 0.01, ch, ctx);
    const double nu = exchanged_nu(sketch, inst.s(), inst.t(), &arcs);
    const int f = static_cast<int>(std::ceil(99 * nu - 1e-9));
    if (f == 0) return {inst, 0, nu, std::move(sketch)};
    TwoPartyInstance packed(forest_packing(inst.alice, f).as_graph(inst.alice), forest_packing(inst.bob, f).as_graph(inst.bob));
    return {std::move(packed), f, nu, std::move(sketch)};
}

struct CommCutResult {
    Weight value = 0;
    Cut cut;
    double nu_hat = 0;
    int delta = 0;
    Weight flow_value = 0;  // |F| from the large-flow phase
    int f = 0;               // packing depth
    double eps = 0;
    bool fallback = false;
    LargeFlowCommResult large;
};

/// Exact minimum s-t cut of G_A ∪ G_B. Everything the players learn about
/// each other passes through `ctx.transcript`.
inline CommCutResult min_cut_comm(const TwoPartyInstance& inst, CommContext& ctx, const GrowCommOptions& grow = {}) {
    const int n = inst.n();
    const Vertex s = inst.s(), t = inst.t();
    Channel ch(n, ctx.transcript);
    CommCutResult out;

    ch.next_round();
    const auto sketch = exchange_sparsifiers(inst.alice, inst.bob, 0.01, ch, ctx);
    out.nu_hat = exchanged_nu(sketch, s, t);
    if (out.nu_hat <= 0) {
        WeightedMixedGraph m(n, s, t);
        m.undirected = sketch.joined;
        out.cut = min_cut(m).second;
        return out;
    }

    out.delta = std::clamp(static_cast<int>(std::ceil(std::pow(out.nu_hat, 6.0 / 7.0) - 1e-9)), 1, n);
    out.large = large_flow_comm(inst, out.delta, ch, ctx, out.nu_hat, grow);
    out.fallback = out.large.fallback;
    const FlowDecomposition flow = max_flow(out.large.h).decomposition;
    out.flow_value = flow.value();
    const auto split = residual_split(inst, out.large.h, flow);

    auto packed = rsw_comm_preprocess(split.parts, split.arcs, ch, ctx);
    out.f = packed.f;
    if (packed.f == 0) {
        WeightedMixedGraph m(n, s, t);
        m.undirected = packed.sketch.joined;
        m.directed = split.arcs;
        out.value = out.flow_value;
        out.cut = min_cut(m).second;
        return out;
    }
    out.eps = choose_eps_comm(packed.f);
    CommBackend backend(std::move(packed.packed), ch, ctx);
    const auto r = rsw_min_cut(backend, split.arcs, out.eps);
    out.value = out.flow_value + r.value;
    out.cut = r.cut;
    return out;
}

}  // namespace stcut
