#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "stcut/context.hpp"
#include "stcut/flow.hpp"
#include "stcut/global_min_cut.hpp"

namespace stcut {

/// Access to the undirected part G of a mixed graph (G, F).
class EdgeBackend {
public:
    virtual ~EdgeBackend() = default;
    virtual int n() const = 0;
    virtual Vertex s() const = 0;
    virtual Vertex t() const = 0;
    virtual SparseGraph sparsify(double eps) = 0;
    /// Every edge of G whose endpoints lie in different blocks.
    virtual std::vector<Edge> discover_crossing_edges(const Partition& partition) = 0;
};

class OracleBackend : public EdgeBackend {
public:
    OracleBackend(CutView view, RunContext& ctx) : view_(std::move(view)), ctx_(ctx) {}
    int n() const override { return view_.n(); }
    Vertex s() const override { return view_.s(); }
    Vertex t() const override { return view_.t(); }
    SparseGraph sparsify(double eps) override {
        ScopedTag tag(view_.oracle(), "rsw_sparsify");
        return sparsify_recorded(view_, eps, ctx_, "rsw");
    }
    std::vector<Edge> discover_crossing_edges(const Partition& partition) override {
        ScopedTag tag(view_.oracle(), "rsw_learn");
        return view_.learn_contracted(partition);
    }

private:
    CutView view_;
    RunContext& ctx_;
};

inline double clamp_eps(double raw) { return std::min(raw, 0.199); }

inline double choose_eps_cut_query(int n, double nu_estimate) {
    if (nu_estimate < 1) throw std::invalid_argument("nu estimate must be at least 1");
    return clamp_eps(std::pow(static_cast<double>(n) * nu_estimate, -1.0 / 6.0));
}

inline double choose_eps_comm(double f) {
    if (f < 1) throw std::invalid_argument("f must be at least 1");
    return clamp_eps(std::pow(f, -1.0 / 3.0));
}

struct RswResult {
    Weight value = 0;
    Cut cut;
    double eps = 0;
    double nu_h = 0;
    int blocks = 0;
    std::size_t learned = 0;
    double threshold = 0;           // 3 eps nu(H), real units
    double contracted_k_weight = 0;  // |K<V_1..V_z>|, real units
    double flow_weight = 0;          // weight of the non-circular max flow of H
    double flow_bound = 0;           // n sqrt(2 nu(H) W)
    bool k_undirected = true;
};

/// Minimum s-t cut of (G, F) with G behind `backend` and F explicit.
inline RswResult rsw_min_cut(EdgeBackend& backend, const WeightedDigraph& f, double eps) {
    if (!(eps > 0 && eps < 0.2)) throw std::invalid_argument("eps must lie in (0, 1/5)");
    const int n = backend.n();
    const Vertex s = backend.s(), t = backend.t();
    RswResult out;
    out.eps = eps;

    const SparseGraph gp = backend.sparsify(eps);
    const Weight d = gp.denom;
    // H = G' ∪ F with every weight scaled by the denominator.
    WeightedMixedGraph h(n, s, t);
    h.undirected = gp.numer;
    for (const auto& [a, w] : f.arcs()) h.directed.add_arc(a.tail, a.head, w * d);

    const MixedFlow raw = max_flow_detailed(h);
    out.nu_h = static_cast<double>(raw.value) / static_cast<double>(d);
    const FlowDecomposition acyclic = make_noncircular(raw.as_digraph(n), s, t);
    const WeightedDigraph used = acyclic.arcs();
    out.flow_weight = static_cast<double>(used.total_weight()) / static_cast<double>(d);
    const double w_max = std::max<double>(gp.max_weight(), static_cast<double>(f.max_weight()));
    out.flow_bound = n * std::sqrt(2.0 * out.nu_h * std::max(w_max, 1.0));

    // K: what the flow leaves of the undirected edges of H.
    WeightedGraph k(n);
    for (const auto& [e, w] : h.undirected.edges()) {
        Weight load = 0;
        load += std::max<Weight>(0, used.weight(e.u, e.v) - h.directed.weight(e.u, e.v));
        load += std::max<Weight>(0, used.weight(e.v, e.u) - h.directed.weight(e.v, e.u));
        if (w - load > 0) k.add_edge(e.u, e.v, w - load);
    }

    out.threshold = 3 * eps * out.nu_h;
    const double scaled = std::max(out.threshold * static_cast<double>(d), 0.5);
    const Partition part = connectivity_decomposition(k, scaled);
    if (part.block_of(s) == part.block_of(t)) throw std::logic_error("decomposition merged s and t");
    out.blocks = part.size();
    for (const auto& [e, w] : k.edges())
        if (part.block_of(e.u) != part.block_of(e.v)) out.contracted_k_weight += static_cast<double>(w) / static_cast<double>(d);

    const auto crossing = backend.discover_crossing_edges(part);
    out.learned = crossing.size();
    WeightedMixedGraph small(part.size(), part.block_of(s), part.block_of(t));
    for (const auto& e : crossing) small.undirected.add_edge(part.block_of(e.u), part.block_of(e.v), 1);
    for (const auto& [a, w] : f.arcs()) {
        const int x = part.block_of(a.tail), y = part.block_of(a.head);
        if (x != y) small.directed.add_arc(x, y, w);
    }
    const auto [value, block_cut] = min_cut(small);
    out.value = value;
    out.cut = part.lift(block_cut, s, t);
    return out;
}

}  // namespace stcut
