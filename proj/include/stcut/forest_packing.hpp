#pragma once

#include <numeric>
#include <stdexcept>
#include <vector>

#include "stcut/graph.hpp"

namespace stcut {

class DisjointSets {
public:
    explicit DisjointSets(int n) : parent_(static_cast<std::size_t>(n)) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    int find(int v) {
        while (parent_[static_cast<std::size_t>(v)] != v) {
            parent_[static_cast<std::size_t>(v)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(v)])];
            v = parent_[static_cast<std::size_t>(v)];
        }
        return v;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent_[static_cast<std::size_t>(a)] = b;
        return true;
    }

private:
    std::vector<int> parent_;
};

struct ForestPacking {
    std::vector<std::vector<Edge>> forests;

    std::size_t num_edges() const {
        std::size_t c = 0;
        for (const auto& f : forests) c += f.size();
        return c;
    }
    Graph as_graph(const Graph& like) const {
        Graph out = like.empty_like();
        for (const auto& f : forests)
            for (const auto& e : f) out.add_edge(e);
        return out;
    }
};

/// Greedy spanning forests F_1..F_k, each taken from what the earlier ones left.
inline ForestPacking forest_packing(const Graph& g, int k) {
    if (k < 1) throw std::invalid_argument("forest packing needs k >= 1");
    ForestPacking p;
    std::vector<Edge> rest = g.edges();
    for (int i = 0; i < k && !rest.empty(); ++i) {
        DisjointSets dsu(g.n());
        std::vector<Edge> forest, left;
        for (const auto& e : rest) (dsu.unite(e.u, e.v) ? forest : left).push_back(e);
        p.forests.push_back(std::move(forest));
        rest = std::move(left);
    }
    while (static_cast<int>(p.forests.size()) < k) p.forests.emplace_back();
    return p;
}

/// Spanning forest of a single graph; the 1-packing.
inline std::vector<Edge> spanning_forest(const Graph& g) { return forest_packing(g, 1).forests.front(); }

}  // namespace stcut
