#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stcut/context.hpp"
#include "stcut/find_long_edge.hpp"
#include "stcut/flow.hpp"
#include "stcut/witness.hpp"

namespace stcut {

// What a test observer sees right before an accepted edge joins H.
struct GrowStep {
    const Graph* h = nullptr;
    WitnessParams params;
    const std::vector<Rational>* z = nullptr;  // null in fallback mode
    Edge edge;
    Rational delta;
};

struct GrowOptions {
    int witness_cap = 12;
    std::uint64_t seed = 1;
    std::function<void(const GrowStep&)> observer;
};

struct GrowResult {
    Graph h;
    int iterations = 0;
    bool fallback = false;
    long queries = 0;
};

/// Adds edges of G to h until nu(h) >= f - k'. Below the witness cap each
/// edge comes from FindLongEdge on the exact potential with delta = 1, 1/2, ...
/// Above it, an augmenting-path edge crossing the current residual cut.
inline GrowResult grow_flow_halving(CutOracle& oracle, Graph h, const WitnessParams& p, const GrowOptions& opts = {}) {
    p.validate();
    const int n = oracle.n();
    const long before = oracle.total_queries();
    GrowResult out;
    out.fallback = n > opts.witness_cap;
    FindLongEdge finder(opts.seed);
    const Rational floor_delta(1, 4L * n);
    while (max_flow_value(h) < p.f - p.k_prime) {
        CutView rest(oracle, h);
        std::optional<Edge> edge;
        if (!out.fallback) {
            const auto z = witness_summary(h, p, opts.witness_cap).z_hat();
            Rational delta = 1;
            for (; delta >= floor_delta && !edge; delta /= 2) {
                edge = finder.run(rest, z, delta).edge;
                if (edge && opts.observer) opts.observer(GrowStep{&h, p, &z, *edge, delta});
            }
        } else {
            const VertexSet reach = min_cut(h).second.s_side();
            edge = rest.find_edge(reach, reach.complement());
            if (edge && opts.observer) opts.observer(GrowStep{&h, p, nullptr, *edge, Rational(0)});
        }
        if (!edge) throw PromiseViolation("no edge of G extends H although nu(H) < f - k'");
        h.add_edge(*edge);
        ++out.iterations;
    }
    out.h = std::move(h);
    out.queries = oracle.total_queries() - before;
    return out;
}

struct StageRecord {
    int k = 0;
    int k_prime = 0;
    long queries = 0;
    int iterations = 0;
};

struct PromisedResult {
    Graph h;
    std::vector<StageRecord> stages;
    bool fallback = false;
};

/// Halves the deficit k = f, f/2, ... until it reaches delta_param.
inline PromisedResult large_flow_promised(CutOracle& oracle, int f, int delta_param, const GrowOptions& opts = {}) {
    PromisedResult out{Graph(oracle.n(), oracle.s(), oracle.t()), {}, false};
    ScopedTag tag(oracle, "large_flow");
    int k = f;
    while (k > delta_param && k > 0) {
        const int kp = std::max(k / 2, delta_param);
        auto r = grow_flow_halving(oracle, std::move(out.h), WitnessParams{f, k, kp}, opts);
        out.h = std::move(r.h);
        out.fallback |= r.fallback;
        out.stages.push_back({k, kp, r.queries, r.iterations});
        k = kp;
    }
    return out;
}

struct LargeFlowResult {
    Graph h;
    double estimate = 0;   // nu of the lambda-sparsifier
    double lambda = 0;
    bool empty_branch = false;
    PromisedResult promised;
};

/// nu(output) >= nu(G) - delta, using a lambda-sparsifier with lambda = delta/(10n).
inline LargeFlowResult large_flow(CutOracle& oracle, int delta, RunContext& ctx) {
    const int n = oracle.n();
    if (delta < 1 || delta > n) throw std::invalid_argument("large_flow needs 1 <= delta <= n");
    LargeFlowResult out;
    out.h = Graph(n, oracle.s(), oracle.t());
    out.lambda = static_cast<double>(delta) / (10.0 * n);
    {
        ScopedTag tag(oracle, "approx_nu");
        const auto sparse = sparsify_recorded(CutView(oracle), out.lambda, ctx, "large_flow");
        out.estimate = sparse_nu(sparse, oracle.s(), oracle.t());
    }
    if (out.estimate <= (1 - out.lambda) * delta) {
        out.empty_branch = true;
        return out;
    }
    // nu(G) is an integer, so the promise nu(G) >= estimate/(1+lambda) rounds up.
    const int f = static_cast<int>(std::ceil(out.estimate / (1 + out.lambda) - 1e-9));
    GrowOptions opts;
    opts.witness_cap = ctx.witness_cap;
    opts.seed = ctx.rng();
    out.promised = large_flow_promised(oracle, f, delta / 10, opts);
    ctx.fallback_used |= out.promised.fallback;
    out.h = out.promised.h;
    return out;
}

}  // namespace stcut
