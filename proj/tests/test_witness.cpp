#include <gtest/gtest.h>

#include <random>

#include "brute.hpp"
#include "stcut/large_flow_cq.hpp"

using namespace stcut;

namespace {

Graph complete(int n) {
    Graph g(n, 0, n - 1);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

Rational gap(const std::vector<Rational>& z, Vertex u, Vertex v) {
    const Rational d = z[static_cast<std::size_t>(u)] - z[static_cast<std::size_t>(v)];
    return d < 0 ? Rational(-d) : d;
}

}  // namespace

TEST(Witness, SmallCounts) {
    EXPECT_EQ(witness_count(Graph(2, 0, 1), {1, 1, 0}), 1);
    Graph st(2, 0, 1);
    st.add_edge(0, 1);
    EXPECT_EQ(witness_count(st, {1, 1, 0}), 0);
    EXPECT_GE(max_flow_value(st), 1);
    EXPECT_THROW(witness_count(st, {1, 1, 1}), std::invalid_argument);
    EXPECT_THROW(witness_count(Graph(30, 0, 29), {3, 2, 1}), EnumerationCapExceeded);
}

TEST(Witness, MatchesTripleEnumeration) {
    std::mt19937_64 rng(71);
    for (int iter = 0; iter < 60; ++iter) {
        const int n = 3 + static_cast<int>(rng() % 3);
        const Graph h = brute::random_graph(n, 0.4, rng);
        const int f = 1 + static_cast<int>(rng() % (n - 1));
        const int k = 1 + static_cast<int>(rng() % f);
        const int kp = static_cast<int>(rng() % k);
        const auto summary = witness_summary(h, {f, k, kp});
        const auto triples = brute::witness_triples(h, f, kp);
        ASSERT_EQ(summary.count, triples.count);
        if (summary.count == 0) continue;
        const auto z = summary.z_hat();
        EXPECT_EQ(z[0], 0);
        EXPECT_EQ(z[static_cast<std::size_t>(n - 1)], 1);
        for (Vertex v = 0; v < n; ++v) EXPECT_EQ(z[static_cast<std::size_t>(v)], Rational(triples.t_hits[static_cast<std::size_t>(v)], triples.count));
    }
}

TEST(Witness, SymmetricPotential) {
    // a = 1 and b = 2 are interchangeable.
    Graph g(4, 0, 3);
    g.add_edge(0, 1);
    g.add_edge(0, 2);
    g.add_edge(1, 3);
    g.add_edge(2, 3);
    const auto z = z_hat(g, {3, 3, 0});
    EXPECT_EQ(z[1], z[2]);
    EXPECT_THROW(z_hat(g, {2, 2, 0}), std::domain_error);
}

TEST(Witness, InvariantAndKillBounds) {
    std::mt19937_64 rng(73);
    int checked = 0;
    for (int iter = 0; iter < 120; ++iter) {
        const int n = 3 + static_cast<int>(rng() % 6);
        const Graph h = brute::random_graph(n, 0.35, rng);
        const int nu = static_cast<int>(max_flow_value(h));
        const int f = 1 + static_cast<int>(rng() % (n - 1));
        const int k = std::max(1, std::min(f, f - nu + static_cast<int>(rng() % 3)));
        const int kp = static_cast<int>(rng() % k);
        const WitnessParams p{f, k, kp};
        const auto summary = witness_summary(h, p, 22, true);
        EXPECT_EQ(summary.count == 0, nu >= f - kp);
        if (summary.count == 0 || nu < f - k) continue;
        ++checked;
        const auto z = summary.z_hat();
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v) {
                EXPECT_GE(summary.split_probability(u, v), gap(z, u, v));
                if (h.has_edge(u, v)) continue;
                Graph more = h;
                more.add_edge(u, v);
                const BigInt after = witness_count(more, p);
                const Rational killed(summary.count - after, summary.count);
                EXPECT_GE(killed, Rational(kp + 1, k) * gap(z, u, v)) << "n=" << n << " pair " << u << "," << v;
            }
    }
    EXPECT_GT(checked, 20);
}

TEST(Witness, ResidualCounts) {
    const WitnessParams p{1, 1, 0};
    const FlowDecomposition none{0, 1, 2, {}};
    EXPECT_EQ(residual_witness_count(Graph(2, 0, 1), p, none), 1);

    std::mt19937_64 rng(79);
    int compared = 0;
    for (int iter = 0; iter < 120; ++iter) {
        const int n = 3 + static_cast<int>(rng() % 4);
        const Graph h = brute::random_graph(n, 0.5, rng);
        const auto full = max_flow(h);
        const int nu = static_cast<int>(full.value);
        const int f = std::max(1, nu + static_cast<int>(rng() % 3));
        const int k = f - nu + static_cast<int>(rng() % (nu + 1));
        if (k < 1 || k > f) continue;
        const int kp = static_cast<int>(rng() % k);
        const WitnessParams q{f, k, kp};
        const auto flow = full.decomposition.prefix(static_cast<std::size_t>(f - k));
        const BigInt count = residual_witness_count(h, q, flow);
        EXPECT_EQ(count == 0, nu >= f - kp);
        EXPECT_EQ(count, brute::residual_triples(residual(h, flow), q.residual_budget()));
        ++compared;
    }
    EXPECT_GT(compared, 50);
}

TEST(Assignments, Construction) {
    std::mt19937_64 rng(83);
    EXPECT_TRUE(build_assignments(2, rng).empty());
    const Assignment a{{1, 1}, {2, 1}, {1, 2}};
    EXPECT_TRUE(is_assignment(a));
    EXPECT_TRUE(matches(a, 0, 2));
    EXPECT_TRUE(covers_far_pairs({a}, 3));
    EXPECT_FALSE(is_assignment({{1, 1}, {1, 2}}));
    for (std::size_t ell : {3U, 5U, 17U, 64U, 256U}) {
        const auto list = build_assignments(ell, rng);
        EXPECT_TRUE(covers_far_pairs(list, ell));
        EXPECT_LE(static_cast<long>(list.size()), assignment_cap(ell));
        for (const auto& x : list) EXPECT_TRUE(is_assignment(x));
    }
}

TEST(FindLongEdgeTest, Examples) {
    const Graph k5 = complete(5);
    CutOracle o(k5);
    FindLongEdge finder(1);
    const std::vector<Rational> flat(5, Rational(1, 2));
    for (Rational d = 1; d >= Rational(1, 64); d /= 2) EXPECT_FALSE(finder.run(CutView(o), flat, d).edge);

    Graph single(3, 0, 2);
    single.add_edge(0, 2);
    CutOracle so(single);
    const auto r = finder.run(CutView(so), {Rational(0), Rational(1, 2), Rational(1)}, Rational(1, 2));
    ASSERT_TRUE(r.edge);
    EXPECT_EQ(*r.edge, (Edge{0, 2}));
}

TEST(FindLongEdgeTest, RandomProperty) {
    std::mt19937_64 rng(89);
    FindLongEdge finder(2);
    for (int iter = 0; iter < 300; ++iter) {
        const int n = 3 + static_cast<int>(rng() % 14);
        const Graph g = brute::random_graph(n, 0.3, rng);
        const long den = 1 + static_cast<long>(rng() % 16);
        std::vector<Rational> phi;
        for (int v = 0; v < n; ++v) phi.emplace_back(static_cast<long>(rng() % (den + 1)), den);
        const Rational delta(1, 1L << (rng() % 6));
        Rational best = 0;
        for (const auto& e : g.edges()) best = std::max(best, gap(phi, e.u, e.v));
        CutOracle o(g);
        const auto r = finder.run(CutView(o), phi, delta);
        if (r.edge) {
            EXPECT_TRUE(g.has_edge(*r.edge));
            EXPECT_GE(gap(phi, r.edge->u, r.edge->v), delta / 2);
        } else {
            EXPECT_LT(best, delta);
        }
        EXPECT_LE(r.queries, 9L * static_cast<long>(r.assignments) + find_edge_found_bound(n));
    }
}

TEST(GrowFlow, AlreadySatisfied) {
    const Graph k6 = complete(6);
    CutOracle o(k6);
    const auto r = grow_flow_halving(o, k6, {5, 4, 2});
    EXPECT_EQ(r.iterations, 0);
    EXPECT_EQ(o.total_queries(), 0);
}

TEST(GrowFlow, CompleteGraphHalving) {
    const Graph k8 = complete(8);
    CutOracle o(k8);
    const auto r = grow_flow_halving(o, Graph(8, 0, 7), {7, 7, 3});
    EXPECT_GE(max_flow_value(r.h), 4);
    EXPECT_FALSE(r.fallback);
    EXPECT_GT(r.queries, 0);
    for (const auto& e : r.h.edges()) EXPECT_TRUE(k8.has_edge(e));
}

TEST(GrowFlow, KillFractionAndFarEdges) {
    std::mt19937_64 rng(97);
    int steps = 0;
    for (int iter = 0; iter < 25; ++iter) {
        const int n = 4 + static_cast<int>(rng() % 4);
        const Graph g = brute::random_graph(n, 0.7, rng);
        const int nu = static_cast<int>(max_flow_value(g));
        if (nu < 2) continue;
        const WitnessParams p{nu, nu, nu / 2};
        GrowOptions opts;
        opts.seed = rng();
        opts.observer = [&](const GrowStep& step) {
            ++steps;
            const Graph& h = *step.h;
            const auto& z = *step.z;
            EXPECT_GE(gap(z, step.edge.u, step.edge.v), step.delta / 2);
            const BigInt before = witness_count(h, step.params);
            Graph more = h;
            more.add_edge(step.edge);
            const Rational killed(before - witness_count(more, step.params), before);
            EXPECT_GE(killed, Rational(step.params.k_prime + 1, step.params.k) * gap(z, step.edge.u, step.edge.v));

            // Flow augmentation from the hidden graph: F max flow of h,
            // F' non-circular max flow of G_F, Q = F' \ h.
            const auto hf = max_flow(h);
            const auto gf = max_flow(residual(g, hf.decomposition));
            Rational sum = 0;
            const auto fprime = gf.decomposition.arcs();
            for (const auto& [a, w] : fprime.arcs())
                if (g.has_edge(a.tail, a.head) && !h.has_edge(a.tail, a.head)) sum += gap(z, a.tail, a.head);
            EXPECT_GE(sum, step.params.k_prime + 1);
        };
        CutOracle o(g);
        const auto r = grow_flow_halving(o, Graph(n, 0, n - 1), p, opts);
        EXPECT_GE(max_flow_value(r.h), nu - nu / 2);
    }
    EXPECT_GT(steps, 20);
}

TEST(LargeFlow, Promised) {
    CutOracle o(complete(10));
    const auto r = large_flow_promised(o, 9, 2);
    EXPECT_GE(max_flow_value(r.h), 7);
    ASSERT_GE(r.stages.size(), 2U);
    EXPECT_EQ(r.stages.front().k, 9);
    EXPECT_EQ(r.stages.back().k_prime, 2);
    for (std::size_t i = 1; i < r.stages.size(); ++i) EXPECT_EQ(r.stages[i].k, r.stages[i - 1].k_prime);

    CutOracle o2(complete(6));
    EXPECT_EQ(large_flow_promised(o2, 5, 5).h.num_edges(), 0U);
}

TEST(LargeFlow, Wrapper) {
    RunContext ctx(5);
    CutOracle o(complete(12));
    const auto r = large_flow(o, 4, ctx);
    EXPECT_FALSE(r.empty_branch);
    EXPECT_GE(max_flow_value(r.h), 11 - 4);

    Graph path(5, 0, 4);
    for (int i = 0; i < 4; ++i) path.add_edge(i, i + 1);
    CutOracle op(path);
    RunContext c2(6);
    const auto rp = large_flow(op, 1, c2);
    EXPECT_EQ(max_flow_value(rp.h), 1);

    Graph thin(8, 0, 7);
    for (int i = 0; i < 7; ++i) thin.add_edge(i, i + 1);
    CutOracle ot(thin);
    RunContext c3(7);
    const auto rt = large_flow(ot, 8, c3);
    EXPECT_TRUE(rt.empty_branch);
    EXPECT_EQ(rt.h.num_edges(), 0U);
}
