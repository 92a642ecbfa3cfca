#pragma once

#include <random>
#include <string>
#include <vector>

#include "stcut/sparsifier.hpp"

namespace stcut {

struct PromiseViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One sparsifier built during a run, kept so a harness holding the true
// graph can audit it afterwards. `removed` is the locally known part of G
// that the sparsified view subtracted.
struct SparsifierRecord {
    std::string where;
    SparseGraph graph;
    Graph removed;
    double eps = 0;
};

struct RunContext {
    explicit RunContext(std::uint64_t seed = 1) : rng(seed), seed(seed) {}

    std::mt19937_64 rng;
    std::uint64_t seed;
    SampleOptions sample;
    int witness_cap = 12;
    bool fallback_used = false;
    std::vector<SparsifierRecord> sparsifiers;
};

inline SparseGraph sparsify_recorded(const CutView& view, double eps, RunContext& ctx, const std::string& where) {
    auto r = sparsify_by_queries(view, eps, ctx.rng, ctx.sample);
    ctx.sparsifiers.push_back({where, r.graph, view.removed(), eps});
    return r.graph;
}

}  // namespace stcut
