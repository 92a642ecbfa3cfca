#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "stcut/flow.hpp"
#include "stcut/oracle.hpp"
#include "stcut/spectral.hpp"

namespace stcut {

/// Weighted subgraph with weights numer(e) / denom.
struct SparseGraph {
    WeightedGraph numer;
    Weight denom = 1;
    double eps = 0;
    bool exact = false;

    int n() const { return numer.n(); }
    double cut(const VertexSet& side) const {
        return static_cast<double>(numer.boundary(side)) / static_cast<double>(denom);
    }
    double total_weight() const { return static_cast<double>(numer.total_weight()) / static_cast<double>(denom); }
    double max_weight() const { return static_cast<double>(numer.max_weight()) / static_cast<double>(denom); }

    static SparseGraph exactly(const Graph& g) {
        return SparseGraph{WeightedGraph::from(g), 1, 0.0, true};
    }
};

enum class SparsifierMode { sampled, exact };

struct SampleOptions {
    SparsifierMode mode = SparsifierMode::sampled;
    double sample_constant = 1.0;
    int retries = 3;
};

struct SampledSparsifier {
    SparseGraph graph;
    long samples = 0;     // 0 when the graph was learned outright
    int attempts = 0;
    bool fallback = false;  // degree check kept failing, graph learned outright
};

inline long sample_budget(int n, double eps, double c) {
    const double q = c * n * std::log(std::max(n, 2)) / (eps * eps);
    return q > 4e18 ? std::numeric_limits<long>::max() : static_cast<long>(std::ceil(q));
}

/// Uniform edge sampling with reweighting m/q. When q >= m, or in exact
/// mode, the graph is learned outright through find_edge.
inline SampledSparsifier sparsify_by_queries(const CutView& view, double eps, std::mt19937_64& rng,
                                             const SampleOptions& opts = {}) {
    if (!(eps > 0 && eps < 1)) throw std::invalid_argument("eps must lie in (0,1)");
    ScopedTag tag(view.oracle(), "sparsify");
    SampledSparsifier out;
    auto learn_all = [&] {
        Graph g(view.n(), view.s(), view.t());
        for (const auto& e : view.learn_contracted(Partition::singletons(view.n()))) g.add_edge(e);
        out.graph = SparseGraph::exactly(g);
        out.graph.eps = eps;
    };
    if (opts.mode == SparsifierMode::exact) {
        learn_all();
        return out;
    }
    EdgeSampler sampler(view);
    const long m = sampler.edge_count();
    const long q = sample_budget(view.n(), eps, opts.sample_constant);
    if (q >= m) {
        learn_all();
        return out;
    }
    // Degrees are already known exactly; a sample whose weighted degrees miss
    // (1 +- eps) is certainly bad and gets redrawn.
    for (int attempt = 1; attempt <= opts.retries; ++attempt) {
        out.attempts = attempt;
        std::map<Edge, Weight> counts;
        for (long i = 0; i < q; ++i) ++counts[sampler.sample(rng)];
        WeightedGraph numer(view.n());
        Weight g = q;
        for (const auto& [e, c] : counts) g = std::gcd(g, c * m);
        for (const auto& [e, c] : counts) numer.add_edge(e.u, e.v, c * m / g);
        SparseGraph h{std::move(numer), q / g, eps, false};
        bool ok = true;
        std::vector<double> hdeg(static_cast<std::size_t>(view.n()), 0);
        for (const auto& [e, w] : h.numer.edges()) {
            hdeg[static_cast<std::size_t>(e.u)] += static_cast<double>(w) / static_cast<double>(h.denom);
            hdeg[static_cast<std::size_t>(e.v)] += static_cast<double>(w) / static_cast<double>(h.denom);
        }
        for (Vertex v = 0; v < view.n() && ok; ++v) {
            const double d = static_cast<double>(view.cut(VertexSet(view.n(), {v})));
            const double got = hdeg[static_cast<std::size_t>(v)];
            ok = got >= (1 - eps) * d - 1e-9 && got <= (1 + eps) * d + 1e-9;
        }
        out.samples += q;
        if (ok) {
            out.graph = std::move(h);
            return out;
        }
    }
    out.fallback = true;
    learn_all();
    return out;
}

/// (1 +- eps) check against ground truth: every cut for n <= 14, otherwise
/// `samples` random cuts.
inline bool verify_sparsifier(const WeightedGraph& truth, const SparseGraph& h, double eps, std::mt19937_64& rng,
                              int samples = 10000) {
    const int n = truth.n();
    auto ok = [&](const VertexSet& side) {
        const double want = static_cast<double>(truth.boundary(side));
        const double got = h.cut(side);
        return got >= (1 - eps) * want - 1e-9 && got <= (1 + eps) * want + 1e-9;
    };
    if (n <= 14) {
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << (n - 1)); ++mask)
            if (!ok(VertexSet::from_mask(n, mask))) return false;
        return true;
    }
    std::bernoulli_distribution coin(0.5);
    for (int i = 0; i < samples; ++i) {
        VertexSet side(n);
        for (Vertex v = 0; v < n; ++v)
            if (coin(rng)) side.insert(v);
        if (!ok(side)) return false;
    }
    return true;
}
inline bool verify_sparsifier(const Graph& truth, const SparseGraph& h, double eps, std::mt19937_64& rng,
                              int samples = 10000) {
    return verify_sparsifier(WeightedGraph::from(truth), h, eps, rng, samples);
}

/// nu of the sparsifier (rational weights), as a real number.
inline double sparse_nu(const SparseGraph& h, Vertex s, Vertex t) {
    WeightedMixedGraph m(h.n(), s, t);
    m.undirected = h.numer;
    return static_cast<double>(max_flow_value(m)) / static_cast<double>(h.denom);
}

struct HalveOptions {
    double C = 4.0;
    int retry_cap = 500;
};

struct HalveResult {
    WeightedGraph graph;
    bool halved = false;  // false when no edge was light enough to sample
    int attempts = 0;
    double error_bound = 0;
    std::size_t low_edges = 0;
    double spectral_lo = 1, spectral_hi = 1;
};

/// One halving step: every edge with w_e R_e <= n/(lambda m) survives with
/// probability 1/2 at twice its weight. Redrawn until the edge count lands in
/// m(1/2 +- lambda) and the spectral error stays within the bound.
inline HalveResult one_shot_halve(const WeightedGraph& g, double lambda, std::mt19937_64& rng,
                                  const HalveOptions& opts = {}) {
    if (!(lambda > 0 && lambda <= 0.1)) throw std::invalid_argument("lambda must lie in (0, 1/10]");
    const int n = g.n();
    const double m = static_cast<double>(g.num_edges());
    HalveResult out;
    out.graph = g;
    if (g.num_edges() == 0) return out;
    const auto profile = resistance_profile(g);
    const double cut_off = n / (lambda * m);
    std::vector<char> low(profile.edges.size(), 0);
    for (std::size_t i = 0; i < profile.edges.size(); ++i)
        if (profile.leverage(i) <= cut_off) {
            low[i] = 1;
            ++out.low_edges;
        }
    if (out.low_edges == 0) return out;
    out.error_bound = std::sqrt(opts.C * n * std::log(std::max(n, 2)) / (lambda * m));
    std::bernoulli_distribution keep(0.5);
    for (int attempt = 1; attempt <= opts.retry_cap; ++attempt) {
        WeightedGraph h(n);
        for (std::size_t i = 0; i < profile.edges.size(); ++i) {
            const auto& e = profile.edges[i];
            const Weight w = g.weight(e.u, e.v);
            if (!low[i]) h.add_edge(e.u, e.v, w);
            else if (keep(rng)) h.add_edge(e.u, e.v, 2 * w);
        }
        const double count = static_cast<double>(h.num_edges());
        if (count < m * (0.5 - lambda) || count > m * (0.5 + lambda)) continue;
        const auto [lo, hi] = relative_spectrum(g, h);
        if (lo < 1 - out.error_bound - 1e-9 || hi > 1 + out.error_bound + 1e-9) continue;
        out.graph = std::move(h);
        out.halved = true;
        out.attempts = attempt;
        out.spectral_lo = lo;
        out.spectral_hi = hi;
        return out;
    }
    throw std::runtime_error("one_shot_halve: no acceptable halving after " + std::to_string(opts.retry_cap) + " draws");
}

struct BoundedOptions {
    double C = 4.0;
    double log_constant = 1.0;  // lambda = 1 / (log_constant * ln n), capped at 1/10
    int forced_depth = -1;      // override the computed depth
    int retry_cap = 200;
    double edge_constant = 1.0;  // c_edges in the reported n log^2 n / eps^2 budget
};

struct BoundedResult {
    SparseGraph graph;
    int depth = 0;
    double lambda = 0;
    int attempts = 0;
    double edge_budget = 0;
};

inline int bounded_weight_depth(int n, long m, double eps, double lambda, double C) {
    if (m == 0) return 0;
    const double ln = std::log(std::max(n, 2));
    const double base = std::sqrt(n * ln * ln / static_cast<double>(m));
    const double cap = eps / (40.0 * std::sqrt(C));
    if (base > cap) return 0;
    int depth = 0;
    while (base * std::pow(0.5 - lambda, -(depth + 1) / 2.0) <= cap) ++depth;
    return depth;
}

/// Repeated halving; every weight is a power of two and the largest is 2^depth.
inline BoundedResult bounded_weight_sparsifier(const Graph& g, double eps, std::mt19937_64& rng,
                                               const BoundedOptions& opts = {}) {
    if (!(eps > 0 && eps < 1)) throw std::invalid_argument("eps must lie in (0,1)");
    const int n = g.n();
    BoundedResult out;
    out.lambda = std::min(0.1, 1.0 / (opts.log_constant * std::log(std::max(n, 3))));
    out.depth = opts.forced_depth >= 0 ? opts.forced_depth
                                       : bounded_weight_depth(n, static_cast<long>(g.num_edges()), eps, out.lambda, opts.C);
    const double ln = std::log(std::max(n, 2));
    out.edge_budget = opts.edge_constant * n * ln * ln / (eps * eps);
    const WeightedGraph base = WeightedGraph::from(g);
    if (out.depth == 0 || g.num_edges() == 0) {
        out.depth = 0;
        out.graph = SparseGraph{base, 1, eps, true};
        return out;
    }
    HalveOptions halve{opts.C, opts.retry_cap};
    const Weight top = Weight{1} << out.depth;
    for (int attempt = 1; attempt <= opts.retry_cap; ++attempt) {
        WeightedGraph h = base;
        for (int level = 0; level < out.depth; ++level) h = one_shot_halve(h, out.lambda, rng, halve).graph;
        if (h.max_weight() != top) continue;
        const auto [lo, hi] = relative_spectrum(base, h);
        if (lo < 1 - eps || hi > 1 + eps) continue;
        out.attempts = attempt;
        out.graph = SparseGraph{std::move(h), 1, eps, false};
        return out;
    }
    throw std::runtime_error("bounded_weight_sparsifier: retry cap reached");
}

}  // namespace stcut
