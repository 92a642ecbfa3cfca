#pragma once

#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "stcut/graph.hpp"

namespace stcut {

struct GlobalCut {
    Weight value = 0;
    VertexSet side;  // one shore, never empty and never all of V
};

namespace detail {

inline std::vector<std::vector<Weight>> dense_weights(const WeightedGraph& g) {
    const auto n = static_cast<std::size_t>(g.n());
    std::vector<std::vector<Weight>> w(n, std::vector<Weight>(n, 0));
    for (const auto& [e, x] : g.edges()) {
        w[static_cast<std::size_t>(e.u)][static_cast<std::size_t>(e.v)] += x;
        w[static_cast<std::size_t>(e.v)][static_cast<std::size_t>(e.u)] += x;
    }
    return w;
}

}  // namespace detail

inline GlobalCut global_min_cut_brute_force(const WeightedGraph& g) {
    const int n = g.n();
    if (n < 2) throw std::invalid_argument("global min cut needs two vertices");
    if (n > 30) throw std::invalid_argument("brute-force global min cut limited to n <= 30");
    GlobalCut best{std::numeric_limits<Weight>::max(), VertexSet(n)};
    // Vertex n-1 is pinned outside the side set.
    const std::uint64_t limit = std::uint64_t{1} << (n - 1);
    for (std::uint64_t mask = 1; mask < limit; ++mask) {
        VertexSet side = VertexSet::from_mask(n, mask);
        const Weight c = g.boundary(side);
        if (c < best.value) best = {c, side};
    }
    return best;
}

inline GlobalCut stoer_wagner(const WeightedGraph& g) {
    const int n = g.n();
    if (n < 2) throw std::invalid_argument("global min cut needs two vertices");
    auto w = detail::dense_weights(g);
    std::vector<std::vector<Vertex>> merged(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) merged[static_cast<std::size_t>(v)] = {v};
    std::vector<Vertex> alive(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) alive[static_cast<std::size_t>(v)] = v;

    GlobalCut best{std::numeric_limits<Weight>::max(), VertexSet(n)};
    while (alive.size() > 1) {
        std::vector<Weight> key(static_cast<std::size_t>(n), 0);
        std::vector<char> added(static_cast<std::size_t>(n), 0);
        Vertex prev = -1, last = -1;
        for (std::size_t step = 0; step < alive.size(); ++step) {
            Vertex pick = -1;
            for (Vertex v : alive)
                if (!added[static_cast<std::size_t>(v)] && (pick == -1 || key[static_cast<std::size_t>(v)] > key[static_cast<std::size_t>(pick)]))
                    pick = v;
            if (pick < 0) break;
            added[static_cast<std::size_t>(pick)] = 1;
            prev = last;
            last = pick;
            for (Vertex v : alive)
                if (!added[static_cast<std::size_t>(v)])
                    key[static_cast<std::size_t>(v)] += w[static_cast<std::size_t>(pick)][static_cast<std::size_t>(v)];
        }
        const Weight phase = key[static_cast<std::size_t>(last)];
        if (phase < best.value) {
            best.value = phase;
            best.side = VertexSet::from_range(n, merged[static_cast<std::size_t>(last)]);
        }
        auto& into = merged[static_cast<std::size_t>(prev)];
        const auto& from = merged[static_cast<std::size_t>(last)];
        into.insert(into.end(), from.begin(), from.end());
        for (Vertex v : alive) {
            w[static_cast<std::size_t>(prev)][static_cast<std::size_t>(v)] += w[static_cast<std::size_t>(last)][static_cast<std::size_t>(v)];
            w[static_cast<std::size_t>(v)][static_cast<std::size_t>(prev)] = w[static_cast<std::size_t>(prev)][static_cast<std::size_t>(v)];
        }
        w[static_cast<std::size_t>(prev)][static_cast<std::size_t>(prev)] = 0;
        std::erase(alive, last);
    }
    return best;
}

inline GlobalCut global_min_cut(const WeightedGraph& g) {
    return g.n() <= 12 ? global_min_cut_brute_force(g) : stoer_wagner(g);
}

/// Subgraph induced on `members`, relabeled 0..|members|-1 in the given order.
inline WeightedGraph induced(const WeightedGraph& g, const std::vector<Vertex>& members) {
    std::vector<int> local(static_cast<std::size_t>(g.n()), -1);
    for (std::size_t i = 0; i < members.size(); ++i) local[static_cast<std::size_t>(members[i])] = static_cast<int>(i);
    WeightedGraph out(static_cast<int>(members.size()));
    for (const auto& [e, w] : g.edges()) {
        const int a = local[static_cast<std::size_t>(e.u)], b = local[static_cast<std::size_t>(e.v)];
        if (a >= 0 && b >= 0) out.add_edge(a, b, w);
    }
    return out;
}

/// Splits V until every block induces global min cut >= threshold.
inline Partition connectivity_decomposition(const WeightedGraph& g, double threshold) {
    if (threshold < 0) throw std::invalid_argument("threshold must be non-negative");
    std::vector<std::vector<Vertex>> blocks;
    std::vector<std::vector<Vertex>> work;
    work.emplace_back();
    for (Vertex v = 0; v < g.n(); ++v) work.back().push_back(v);
    while (!work.empty()) {
        auto members = std::move(work.back());
        work.pop_back();
        if (members.size() < 2) {
            blocks.push_back(std::move(members));
            continue;
        }
        const auto sub = induced(g, members);
        const auto cut = global_min_cut(sub);
        if (static_cast<double>(cut.value) >= threshold) {
            blocks.push_back(std::move(members));
            continue;
        }
        std::vector<Vertex> in, out;
        for (std::size_t i = 0; i < members.size(); ++i)
            (cut.side.contains(static_cast<Vertex>(i)) ? in : out).push_back(members[i]);
        work.push_back(std::move(out));
        work.push_back(std::move(in));
    }
    std::sort(blocks.begin(), blocks.end());
    return Partition::from_blocks(g.n(), blocks);
}

}  // namespace stcut
