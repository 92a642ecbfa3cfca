#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "stcut/comm_flow.hpp"
#include "stcut/large_flow_cq.hpp"
#include "stcut/rsw.hpp"

namespace stcut {

struct CqCutResult {
    Weight value = 0;
    Cut cut;
    double estimate = 0;
    int delta = 0;
    Weight flow_value = 0;
    FlowDecomposition flow;  // max flow of the large-flow subgraph
    double eps = 0;
    bool fallback = false;
};

/// Exact minimum s-t cut using nothing but cut queries on `oracle`.
inline CqCutResult min_cut_cq(CutOracle& oracle, RunContext& ctx) {
    const int n = oracle.n();
    const Vertex s = oracle.s(), t = oracle.t();
    CqCutResult out;
    out.delta = std::clamp(static_cast<int>(std::floor(std::pow(n, 0.8))), 1, n);
    const auto lf = large_flow(oracle, out.delta, ctx);
    out.estimate = lf.estimate;
    out.fallback = lf.promised.fallback;
    if (lf.estimate <= 0) {
        // A cut sparsifier keeps zero cuts at zero.
        const SparseGraph& sketch = ctx.sparsifiers.back().graph;
        WeightedMixedGraph m(n, s, t);
        m.undirected = sketch.numer;
        out.cut = min_cut(m).second;
        return out;
    }
    const FlowDecomposition flow = max_flow(lf.h).decomposition;
    out.flow_value = flow.value();
    out.flow = flow;
    const MixedGraph hf = residual(lf.h, flow);
    OracleBackend backend(CutView(oracle, flow_edges(lf.h, flow)), ctx);
    out.eps = choose_eps_cut_query(n, std::max(1.0, lf.estimate - static_cast<double>(out.flow_value)));
    const auto r = rsw_min_cut(backend, hf.f, out.eps);
    out.value = out.flow_value + r.value;
    out.cut = r.cut;
    return out;
}

/// Grows H one find_edge at a time across the residual cut of H until no
/// edge of G leaves it.
inline std::pair<Weight, Cut> augmenting_min_cut(CutOracle& oracle) {
    Graph h(oracle.n(), oracle.s(), oracle.t());
    for (;;) {
        const auto [value, cut] = min_cut(h);
        const VertexSet reach = cut.s_side();
        const auto e = CutView(oracle, h).find_edge(reach, reach.complement());
        if (!e) return {value, cut};
        h.add_edge(*e);
    }
}

inline std::pair<Weight, Cut> learn_all_min_cut(CutOracle& oracle) {
    Graph g(oracle.n(), oracle.s(), oracle.t());
    for (const auto& e : CutView(oracle).learn_contracted(Partition::singletons(oracle.n()))) g.add_edge(e);
    return min_cut(g);
}

// ---------------------------------------------------------------- generators

struct InstanceSpec {
    std::string kind;
    std::map<std::string, std::string> params;

    std::string label() const {
        std::string out = kind;
        for (const auto& [k, v] : params) out += " " + k + "=" + v;
        return out;
    }
    bool has(const std::string& key) const { return params.count(key) > 0; }
    int integer(const std::string& key) const {
        auto it = params.find(key);
        if (it == params.end()) throw std::invalid_argument(kind + " needs " + key);
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(it->second, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != it->second.size()) throw std::invalid_argument(key + " must be an integer");
        return v;
    }
    double real(const std::string& key) const {
        auto it = params.find(key);
        if (it == params.end()) throw std::invalid_argument(kind + " needs " + key);
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(it->second, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != it->second.size()) throw std::invalid_argument(key + " must be a number");
        return v;
    }
};

inline Graph path_graph(int n) {
    if (n < 2) throw std::invalid_argument("path needs n >= 2");
    Graph g(n, 0, n - 1);
    for (Vertex v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

inline Graph complete_graph(int n) {
    if (n < 2) throw std::invalid_argument("complete needs n >= 2");
    Graph g(n, 0, n - 1);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

inline Graph er_graph(int n, double p, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("er needs n >= 2");
    if (!(p >= 0 && p <= 1)) throw std::invalid_argument("er needs 0 <= p <= 1");
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(p);
    Graph g(n, 0, n - 1);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (coin(rng)) g.add_edge(u, v);
    return g;
}

/// s touches exactly `nu` inner vertices and t touches all of them, so the
/// max flow is `nu`; the inner vertices form a G(n-2, 1/2) for texture.
inline Graph flow_gadget(int n, int nu, std::uint64_t seed) {
    if (n < 3) throw std::invalid_argument("flow-gadget needs n >= 3");
    if (nu < 0 || nu > n - 2) throw std::invalid_argument("flow-gadget needs 0 <= nu <= n - 2");
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(0.5);
    std::vector<Vertex> inner(static_cast<std::size_t>(n - 2));
    for (std::size_t i = 0; i < inner.size(); ++i) inner[i] = static_cast<Vertex>(i + 1);
    Graph g(n, 0, n - 1);
    for (Vertex u : inner)
        for (Vertex v : inner)
            if (u < v && coin(rng)) g.add_edge(u, v);
    std::shuffle(inner.begin(), inner.end(), rng);
    for (int i = 0; i < nu; ++i) g.add_edge(0, inner[static_cast<std::size_t>(i)]);
    for (Vertex v : inner) g.add_edge(v, n - 1);
    return g;
}

/// Two G(n/2, p) clusters, s in one and t in the other, joined by `bridge`
/// random edges.
inline Graph two_cluster(int n, double p, int bridge, std::uint64_t seed) {
    if (n < 4) throw std::invalid_argument("two-cluster needs n >= 4");
    const int half = n / 2;
    if (bridge < 0 || static_cast<long>(bridge) > static_cast<long>(half) * (n - half))
        throw std::invalid_argument("two-cluster bridge count out of range");
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(p);
    Graph g(n, 0, n - 1);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if ((u < half) == (v < half) && coin(rng)) g.add_edge(u, v);
    std::uniform_int_distribution<Vertex> left(0, half - 1), right(half, n - 1);
    for (int added = 0; added < bridge;)
        if (g.try_add_edge(left(rng), right(rng))) ++added;
    return g;
}

inline Graph generate(const InstanceSpec& spec, std::uint64_t seed) {
    const int n = spec.integer("n");
    if (spec.kind == "path") return path_graph(n);
    if (spec.kind == "complete") return complete_graph(n);
    if (spec.kind == "er") return er_graph(n, spec.real("p"), seed);
    if (spec.kind == "flow-gadget") return flow_gadget(n, spec.integer("nu"), seed);
    if (spec.kind == "two-cluster")
        return two_cluster(n, spec.has("p") ? spec.real("p") : 0.8, spec.has("bridge") ? spec.integer("bridge") : 2, seed);
    throw std::invalid_argument("unknown instance kind '" + spec.kind + "'");
}

/// Hands each edge to Alice or Bob: "random" by a seeded coin, "alternating"
/// by edge order, "alice" gives Bob nothing.
inline TwoPartyInstance split(const Graph& g, const std::string& how, std::uint64_t seed) {
    Graph a = g.empty_like(), b = g.empty_like();
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::bernoulli_distribution coin(0.5);
    std::size_t i = 0;
    for (const auto& e : g.edges()) {
        bool to_alice = true;
        if (how == "random") to_alice = coin(rng);
        else if (how == "alternating") to_alice = i % 2 == 0;
        else if (how != "alice") throw std::invalid_argument("unknown split '" + how + "'");
        (to_alice ? a : b).add_edge(e);
        ++i;
    }
    return TwoPartyInstance(std::move(a), std::move(b));
}

// ------------------------------------------------------------------- reports

struct RunOptions {
    std::uint64_t seed = 1;
    SparsifierMode sparsifier = SparsifierMode::sampled;
    int witness_cap = 12;
};

struct RunReport {
    std::string algorithm;
    std::string instance;
    int n = 0;
    long m = 0;
    Weight nu = 0;  // reference, from the flow engine
    Weight value = 0;
    bool correct = false;
    long cost = 0;
    std::string unit;  // "queries" or "bits"
    std::map<std::string, long> breakdown;
    std::uint64_t seed = 0;
    std::string mode = "exact";  // "witness" or "fallback" for the sublinear drivers
    bool sparsifier_ok = true;
    double seconds = 0;
};

namespace detail {

inline RunReport start_report(const std::string& algorithm, const std::string& instance, const Graph& g,
                              const RunOptions& opts) {
    RunReport r;
    r.algorithm = algorithm;
    r.instance = instance;
    r.n = g.n();
    r.m = static_cast<long>(g.num_edges());
    r.nu = max_flow_value(g);
    r.seed = opts.seed;
    return r;
}

// The claimed value must be the reference and the claimed cut must have it.
inline bool judge(const Graph& g, Weight ref, Weight value, const Cut& cut) {
    return value == ref && cut.universe() == g.n() && cut_weight(g, cut) == value;
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace detail

inline RunReport run_cq(const Graph& g, const RunOptions& opts, const std::string& instance = "") {
    auto r = detail::start_report("cq", instance, g, opts);
    const auto t0 = std::chrono::steady_clock::now();
    CutOracle oracle(g);
    RunContext ctx(opts.seed);
    ctx.sample.mode = opts.sparsifier;
    ctx.witness_cap = opts.witness_cap;
    const auto out = min_cut_cq(oracle, ctx);
    r.seconds = detail::seconds_since(t0);
    r.value = out.value;
    r.correct = detail::judge(g, r.nu, out.value, out.cut);
    r.cost = oracle.total_queries();
    r.unit = "queries";
    r.breakdown = oracle.ledger().per_tag();
    r.mode = ctx.fallback_used ? "fallback" : "witness";
    std::mt19937_64 check(opts.seed + 7);
    for (const auto& rec : ctx.sparsifiers)
        r.sparsifier_ok = r.sparsifier_ok && verify_sparsifier(g.minus(rec.removed), rec.graph, rec.eps, check, 2000);
    return r;
}

inline RunReport run_comm(const TwoPartyInstance& inst, const RunOptions& opts, const std::string& instance = "") {
    const Graph g = inst.joined();
    auto r = detail::start_report("comm", instance, g, opts);
    const auto t0 = std::chrono::steady_clock::now();
    CommContext ctx(opts.seed);
    ctx.witness_cap = opts.witness_cap;
    const auto out = min_cut_comm(inst, ctx);
    r.seconds = detail::seconds_since(t0);
    r.value = out.value;
    r.correct = detail::judge(g, r.nu, out.value, out.cut);
    r.cost = ctx.transcript.total_bits();
    r.unit = "bits";
    for (const auto& m : ctx.transcript.messages()) r.breakdown[kind_name(m.kind)] += m.bits;
    r.mode = out.fallback ? "fallback" : "witness";
    return r;
}

inline RunReport run_baseline(const std::string& which, const Graph& g, const RunOptions& opts,
                              const std::string& instance = "") {
    auto r = detail::start_report(which, instance, g, opts);
    const auto t0 = std::chrono::steady_clock::now();
    CutOracle oracle(g);
    std::pair<Weight, Cut> out;
    if (which == "augmenting") {
        ScopedTag tag(oracle, "augment");
        out = augmenting_min_cut(oracle);
    } else if (which == "learn-all") {
        ScopedTag tag(oracle, "learn");
        out = learn_all_min_cut(oracle);
    } else {
        throw std::invalid_argument("unknown baseline '" + which + "'");
    }
    r.seconds = detail::seconds_since(t0);
    r.value = out.first;
    r.correct = detail::judge(g, r.nu, out.first, out.second);
    r.cost = oracle.total_queries();
    r.unit = "queries";
    r.breakdown = oracle.ledger().per_tag();
    return r;
}

inline const std::vector<std::string>& known_algorithms() {
    static const std::vector<std::string> names{"cq", "comm", "augmenting", "learn-all"};
    return names;
}

inline RunReport run_algorithm(const std::string& algorithm, const InstanceSpec& spec, const RunOptions& opts) {
    const Graph g = generate(spec, opts.seed);
    const std::string label = spec.label();
    if (algorithm == "cq") return run_cq(g, opts, label);
    if (algorithm == "comm") {
        const std::string how = spec.params.count("split") ? spec.params.at("split") : "random";
        return run_comm(split(g, how, opts.seed), opts, label);
    }
    return run_baseline(algorithm, g, opts, label);
}

inline std::string csv_header(bool timing) {
    return std::string("algorithm,instance,seed,n,m,nu,value,correct,cost,unit,mode,sparsifier_ok,breakdown") +
           (timing ? ",seconds" : "") + "\n";
}

inline std::string csv_row(const RunReport& r, bool timing) {
    std::ostringstream out;
    std::string breakdown;
    for (const auto& [k, v] : r.breakdown) breakdown += (breakdown.empty() ? "" : ";") + k + "=" + std::to_string(v);
    out << r.algorithm << ",\"" << r.instance << "\"," << r.seed << ',' << r.n << ',' << r.m << ',' << r.nu << ','
        << r.value << ',' << (r.correct ? 1 : 0) << ',' << r.cost << ',' << r.unit << ',' << r.mode << ','
        << (r.sparsifier_ok ? 1 : 0) << ",\"" << breakdown << '"';
    if (timing) out << ',' << r.seconds;
    out << '\n';
    return out.str();
}

// --------------------------------------------------------------------- sweeps

struct SweepError : std::runtime_error {
    SweepError(int line, const std::string& msg) : std::runtime_error("line " + std::to_string(line) + ": " + msg), line(line) {}
    int line;
};

struct SweepSpec {
    std::vector<std::string> algorithms;
    std::vector<InstanceSpec> instances;
    std::vector<std::uint64_t> seeds;
};

/// Lines: `algorithms a b ..`, `instance kind key=value ..`, `seeds 1 2 ..`;
/// `#` starts a comment.
inline SweepSpec parse_sweep(std::istream& in) {
    SweepSpec spec;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
        std::istringstream words(raw);
        std::string head;
        if (!(words >> head)) continue;
        std::string w;
        if (head == "algorithms") {
            while (words >> w) {
                const auto& known = known_algorithms();
                if (std::find(known.begin(), known.end(), w) == known.end()) throw SweepError(line, "unknown algorithm '" + w + "'");
                spec.algorithms.push_back(w);
            }
        } else if (head == "instance") {
            InstanceSpec inst;
            if (!(words >> inst.kind)) throw SweepError(line, "instance needs a kind");
            while (words >> w) {
                const auto eq = w.find('=');
                if (eq == std::string::npos || eq == 0) throw SweepError(line, "expected key=value, got '" + w + "'");
                inst.params[w.substr(0, eq)] = w.substr(eq + 1);
            }
            try {
                generate(inst, 1);
                if (inst.has("split")) split(Graph(2, 0, 1), inst.params.at("split"), 1);
            } catch (const std::invalid_argument& e) {
                throw SweepError(line, e.what());
            }
            spec.instances.push_back(std::move(inst));
        } else if (head == "seeds") {
            while (words >> w) {
                std::size_t used = 0;
                unsigned long long v = 0;
                try {
                    v = std::stoull(w, &used);
                } catch (const std::exception&) {
                    used = 0;
                }
                if (used != w.size() || w.front() == '-') throw SweepError(line, "bad seed '" + w + "'");
                spec.seeds.push_back(v);
            }
        } else {
            throw SweepError(line, "unknown directive '" + head + "'");
        }
    }
    if (spec.algorithms.empty()) throw SweepError(line, "no algorithms listed");
    if (spec.instances.empty()) throw SweepError(line, "no instances listed");
    if (spec.seeds.empty()) spec.seeds.push_back(1);
    return spec;
}

/// One report per (algorithm, instance, seed), in that nesting order.
inline std::vector<RunReport> run_sweep(const SweepSpec& spec, RunOptions base) {
    std::vector<RunReport> out;
    for (const auto& alg : spec.algorithms)
        for (const auto& inst : spec.instances)
            for (auto seed : spec.seeds) {
                base.seed = seed;
                out.push_back(run_algorithm(alg, inst, base));
            }
    return out;
}

}  // namespace stcut
