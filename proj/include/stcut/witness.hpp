#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "stcut/flow.hpp"
#include "stcut/graph.hpp"

namespace stcut {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct WitnessParams {
    int f = 0;
    int k = 0;
    int k_prime = 0;

    int pad() const { return f - k_prime - 1; }         // |Y|
    int residual_budget() const { return k - k_prime - 1; }
    void validate() const {
        if (!(0 <= k_prime && k_prime < k && k <= f)) throw std::invalid_argument("need 0 <= k' < k <= f");
    }
};

struct EnumerationCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Binomials {
public:
    const BigInt& operator()(long n, long r) {
        static const BigInt zero = 0;
        if (r < 0 || n < 0 || r > n) return zero;
        auto key = std::make_pair(n, r);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        BigInt c = 1;
        const long rr = std::min(r, n - r);
        for (long i = 1; i <= rr; ++i) c = c * (n - rr + i) / i;
        return cache_.emplace(key, std::move(c)).first->second;
    }

private:
    std::map<std::pair<long, long>, BigInt> cache_;
};

/// Calls fn(t_side, s_count, t_count) for every s-t cut of the active vertices.
template <class Fn>
void for_each_active_cut(int n, Vertex s, Vertex t, const VertexSet& active, int cap, Fn&& fn) {
    std::vector<Vertex> free;
    for (Vertex v : active.members())
        if (v != s && v != t) free.push_back(v);
    if (static_cast<int>(free.size()) + 2 > cap) throw EnumerationCapExceeded("witness enumeration over the vertex cap");
    const int total = static_cast<int>(free.size()) + 2;
    const std::uint64_t limit = std::uint64_t{1} << free.size();
    for (std::uint64_t mask = 0; mask < limit; ++mask) {
        VertexSet t_side(n);
        t_side.insert(t);
        for (std::size_t i = 0; i < free.size(); ++i)
            if ((mask >> i) & 1U) t_side.insert(free[i]);
        const int tc = t_side.size();
        fn(t_side, total - tc, tc);
    }
}

namespace detail {

inline Weight crossing_edges(const BitAdjacency& adj, const VertexSet& s_side, const VertexSet& t_side) {
    Weight c = 0;
    for (Vertex v : s_side.members()) c += adj.row(v).count_common(t_side);
    return c;
}

}  // namespace detail

/// Weighted witness counts: every qualifying cut (c <= |Y|) contributes
/// C(|S||T| - c, |Y| - c), the number of pads Y over unordered crossing pairs.
struct WitnessSummary {
    int n = 0;
    BigInt count;
    std::vector<BigInt> t_weight;             // total weight of cuts with v in T
    std::vector<std::vector<BigInt>> split;   // optional: weight of cuts separating u, v

    Rational z(Vertex v) const {
        if (count == 0) throw std::domain_error("no witnesses");
        return Rational(t_weight[static_cast<std::size_t>(v)], count);
    }
    std::vector<Rational> z_hat() const {
        std::vector<Rational> out;
        for (Vertex v = 0; v < n; ++v) out.push_back(z(v));
        return out;
    }
    Rational split_probability(Vertex u, Vertex v) const {
        return Rational(split.at(static_cast<std::size_t>(u)).at(static_cast<std::size_t>(v)), count);
    }
};

inline WitnessSummary witness_summary(const Graph& h, const WitnessParams& p, const VertexSet& active, int cap = 22,
                                      bool with_split = false) {
    p.validate();
    const int n = h.n();
    const BitAdjacency adj(h);
    Binomials binom;
    WitnessSummary out;
    out.n = n;
    out.t_weight.assign(static_cast<std::size_t>(n), 0);
    if (with_split) out.split.assign(static_cast<std::size_t>(n), std::vector<BigInt>(static_cast<std::size_t>(n), 0));
    const int r = p.pad();
    for_each_active_cut(n, h.s(), h.t(), active, cap, [&](const VertexSet& ts, int sc, int tc) {
        VertexSet ss = active;
        for (Vertex v : ts.members()) ss.erase(v);
        const Weight c = detail::crossing_edges(adj, ss, ts);
        if (c > r) return;
        const BigInt& w = binom(static_cast<long>(sc) * tc - c, r - c);
        if (w == 0) return;
        out.count += w;
        for (Vertex v : ts.members()) out.t_weight[static_cast<std::size_t>(v)] += w;
        if (with_split)
            for (Vertex a : ss.members())
                for (Vertex b : ts.members()) {
                    out.split[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] += w;
                    out.split[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] += w;
                }
    });
    return out;
}
inline WitnessSummary witness_summary(const Graph& h, const WitnessParams& p, int cap = 22, bool with_split = false) {
    return witness_summary(h, p, VertexSet::full(h.n()), cap, with_split);
}

inline BigInt witness_count(const Graph& h, const WitnessParams& p, int cap = 22) {
    return witness_summary(h, p, cap).count;
}

inline std::vector<Rational> z_hat(const Graph& h, const WitnessParams& p, int cap = 22) {
    return witness_summary(h, p, cap).z_hat();
}

/// Residual witnesses relative to a fixed flow F of h: cuts of H_F with
/// w <= k - k' - 1, each padded by any X of at most k - k' - 1 - w free pairs.
inline BigInt residual_witness_count(const Graph& h, const WitnessParams& p, const FlowDecomposition& flow,
                                     const VertexSet& active, int cap = 22) {
    p.validate();
    if (flow.value() != p.f - p.k) throw std::invalid_argument("residual flow must have value f - k");
    const int n = h.n();
    const MixedGraph hf = residual(h, flow);
    const BitAdjacency und(hf.g);
    std::vector<std::pair<Arc, Weight>> arcs(hf.f.arcs().begin(), hf.f.arcs().end());
    Binomials binom;
    BigInt total = 0;
    const int budget = p.residual_budget();
    for_each_active_cut(n, h.s(), h.t(), active, cap, [&](const VertexSet& ts, int sc, int tc) {
        VertexSet ss = active;
        for (Vertex v : ts.members()) ss.erase(v);
        const Weight undirected = detail::crossing_edges(und, ss, ts);
        Weight w = undirected, occupied = undirected;
        for (const auto& [a, aw] : arcs)
            if (ss.contains(a.tail) && ts.contains(a.head)) {
                w += aw;
                ++occupied;
            }
        if (w > budget) return;
        const long free_pairs = static_cast<long>(sc) * tc - occupied;
        for (long x = 0; x <= budget - w; ++x) total += binom(free_pairs, x);
    });
    return total;
}
inline BigInt residual_witness_count(const Graph& h, const WitnessParams& p, const FlowDecomposition& flow, int cap = 22) {
    return residual_witness_count(h, p, flow, VertexSet::full(h.n()), cap);
}

}  // namespace stcut
