#pragma once

#include <bit>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stcut/graph.hpp"

namespace stcut {

struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

// How many cost contracts were checked in this process.
struct ContractCounters {
    long is_query = 0;
    long find_edge_none = 0;
    long find_edge_found = 0;
    long learn_contracted = 0;
};
inline ContractCounters& contract_counters() {
    static ContractCounters counters;
    return counters;
}

inline int ceil_log2(long long x) {
    if (x <= 1) return 0;
    return static_cast<int>(std::bit_width(static_cast<unsigned long long>(x - 1)));
}

inline long find_edge_found_bound(int n) { return 3L * (1 + 4L * ceil_log2(n)); }

class QueryLedger {
public:
    void charge(const std::string& tag, long count = 1) {
        total_ += count;
        per_tag_[tag] += count;
    }
    long total() const { return total_; }
    long count(const std::string& tag) const {
        auto it = per_tag_.find(tag);
        return it == per_tag_.end() ? 0 : it->second;
    }
    const std::map<std::string, long>& per_tag() const { return per_tag_; }

    std::string csv() const {
        std::ostringstream out;
        out << "tag,count\n";
        for (const auto& [tag, c] : per_tag_) out << tag << ',' << c << '\n';
        return out.str();
    }

private:
    long total_ = 0;
    std::map<std::string, long> per_tag_;
};

/// The hidden graph behind a cut oracle. Algorithms see n, s, t and answers.
class CutOracle {
public:
    using Answer = std::function<Weight(const VertexSet&)>;

    explicit CutOracle(Graph hidden)
        : n_(hidden.n()), s_(hidden.s()), t_(hidden.t()),
          answer_([adj = BitAdjacency(hidden)](const VertexSet& side) { return adj.boundary(side); }) {}
    CutOracle(int n, Vertex s, Vertex t, Answer answer) : n_(n), s_(s), t_(t), answer_(std::move(answer)) {}

    CutOracle(const CutOracle&) = delete;
    CutOracle& operator=(const CutOracle&) = delete;

    int n() const { return n_; }
    Vertex s() const { return s_; }
    Vertex t() const { return t_; }

    Weight query(const VertexSet& side) {
        if (side.universe() != n_) throw std::invalid_argument("query set over the wrong universe");
        ledger_.charge(tag_path());
        return answer_(side);
    }

    // Nested tags joined by '/', e.g. "approx_nu/sparsify".
    std::string tag_path() const {
        if (tags_.empty()) return "untagged";
        std::string out = tags_.front();
        for (std::size_t i = 1; i < tags_.size(); ++i) out += "/" + tags_[i];
        return out;
    }
    const QueryLedger& ledger() const { return ledger_; }
    long total_queries() const { return ledger_.total(); }

    void push_tag(std::string tag) { tags_.push_back(std::move(tag)); }
    void pop_tag() { tags_.pop_back(); }

private:
    int n_;
    Vertex s_, t_;
    Answer answer_;
    QueryLedger ledger_;
    std::vector<std::string> tags_;
};

class ScopedTag {
public:
    ScopedTag(CutOracle& oracle, std::string tag) : oracle_(oracle) { oracle_.push_tag(std::move(tag)); }
    ~ScopedTag() { oracle_.pop_tag(); }
    ScopedTag(const ScopedTag&) = delete;
    ScopedTag& operator=(const ScopedTag&) = delete;

private:
    CutOracle& oracle_;
};

/// Cut queries to G \ removed, where removed holds edges already learned
/// from G. Each answer costs one oracle query plus local subtraction.
class CutView {
public:
    explicit CutView(CutOracle& oracle)
        : oracle_(&oracle), removed_(oracle.n(), oracle.s(), oracle.t()), removed_adj_(oracle.n()) {}
    CutView(CutOracle& oracle, Graph removed)
        : oracle_(&oracle), removed_(std::move(removed)), removed_adj_(removed_) {}

    int n() const { return oracle_->n(); }
    Vertex s() const { return oracle_->s(); }
    Vertex t() const { return oracle_->t(); }
    CutOracle& oracle() const { return *oracle_; }
    const Graph& removed() const { return removed_; }
    void remove(const Edge& e) {
        if (removed_.try_add_edge(e.u, e.v)) removed_adj_.add(e);
    }

    Weight cut(const VertexSet& side) const { return oracle_->query(side) - removed_adj_.boundary(side); }

    /// |E ∩ (A × B)| for disjoint A, B from three cut queries.
    Weight count_between(const VertexSet& a, const VertexSet& b) const {
        if (a.intersects(b)) throw std::invalid_argument("sets must be disjoint");
        const Weight twice = cut(a) + cut(b) - cut(a | b);
        return twice / 2;
    }

    bool is_query(const VertexSet& a, const VertexSet& b) const {
        if (a.empty() || b.empty()) throw std::invalid_argument("is_query needs non-empty sets");
        const long before = oracle_->total_queries();
        const bool yes = count_between(a, b) > 0;
        if (oracle_->total_queries() - before != 3) throw ContractViolation("is_query must cost 3 cut queries");
        ++contract_counters().is_query;
        return yes;
    }

    std::optional<Edge> find_edge(const VertexSet& a0, const VertexSet& b0) const {
        const long before = oracle_->total_queries();
        auto result = find_edge_impl(a0, b0);
        const long cost = oracle_->total_queries() - before;
        if (!result) {
            if (cost != 3) throw ContractViolation("find_edge NONE must cost 3 cut queries");
            ++contract_counters().find_edge_none;
        } else {
            if (cost > find_edge_found_bound(n())) throw ContractViolation("find_edge exceeded its cost bound");
            ++contract_counters().find_edge_found;
        }
        return result;
    }

    /// Every edge crossing the partition, found by repeated find_edge with
    /// learned edges masked out.
    std::vector<Edge> learn_contracted(const Partition& partition) const {
        if (partition.n() != n()) throw std::invalid_argument("partition over the wrong universe");
        const long before = oracle_->total_queries();
        CutView local(*oracle_, removed_);
        std::vector<Edge> learned;
        const auto blocks = partition.blocks();
        VertexSet later(n());
        for (const auto& b : blocks) for (Vertex v : b) later.insert(v);
        long calls = 0;
        for (std::size_t i = 0; i + 1 < blocks.size(); ++i) {
            const VertexSet here = VertexSet::from_range(n(), blocks[i]);
            for (Vertex v : blocks[i]) later.erase(v);
            for (;;) {
                ++calls;
                auto e = local.find_edge(here, later);
                if (!e) break;
                local.remove(*e);
                learned.push_back(*e);
            }
        }
        const long cost = oracle_->total_queries() - before;
        const long bound = (static_cast<long>(blocks.size()) + static_cast<long>(learned.size())) * find_edge_found_bound(n());
        if (cost > bound) throw ContractViolation("learn_contracted exceeded its cost bound");
        ++contract_counters().learn_contracted;
        std::sort(learned.begin(), learned.end());
        return learned;
    }

private:
    std::optional<Edge> find_edge_impl(VertexSet a, VertexSet b) const {
        if (!is_query(a, b)) return std::nullopt;
        for (;;) {
            auto as = a.members();
            auto bs = b.members();
            if (as.size() == 1 && bs.size() == 1) return Edge::normalized(as[0], bs[0]);
            auto halves = [&](const std::vector<Vertex>& xs) {
                std::vector<VertexSet> out;
                if (xs.size() == 1) {
                    out.push_back(VertexSet::from_range(n(), xs));
                    return out;
                }
                const auto mid = xs.begin() + static_cast<std::ptrdiff_t>(xs.size() / 2);
                out.push_back(VertexSet::from_range(n(), std::vector<Vertex>(xs.begin(), mid)));
                out.push_back(VertexSet::from_range(n(), std::vector<Vertex>(mid, xs.end())));
                return out;
            };
            const auto ah = halves(as), bh = halves(bs);
            std::vector<std::pair<VertexSet, VertexSet>> quads;
            for (const auto& x : ah) for (const auto& y : bh) quads.emplace_back(x, y);
            // One quadrant must hold an edge, so the last one needs no query.
            std::size_t pick = quads.size() - 1;
            for (std::size_t i = 0; i + 1 < quads.size(); ++i)
                if (is_query(quads[i].first, quads[i].second)) {
                    pick = i;
                    break;
                }
            a = quads[pick].first;
            b = quads[pick].second;
        }
    }

    CutOracle* oracle_;
    Graph removed_;
    BitAdjacency removed_adj_;
};

/// Uniform edge samples from a fixed view: one degree query per vertex up
/// front, then a neighbour located by halving.
class EdgeSampler {
public:
    explicit EdgeSampler(const CutView& view) : view_(view) {}

    long edge_count() {
        init();
        return m_;
    }

    Edge sample(std::mt19937_64& rng) {
        init();
        if (m_ == 0) throw std::runtime_error("cannot sample from an empty graph");
        std::discrete_distribution<int> pick_vertex(deg_.begin(), deg_.end());
        const Vertex v = pick_vertex(rng);
        const VertexSet single(view_.n(), {v});
        std::vector<Vertex> cand;
        for (Vertex u = 0; u < view_.n(); ++u)
            if (u != v) cand.push_back(u);
        Weight inside = deg_[static_cast<std::size_t>(v)];
        while (cand.size() > 1) {
            const auto mid = cand.begin() + static_cast<std::ptrdiff_t>(cand.size() / 2);
            std::vector<Vertex> left(cand.begin(), mid), right(mid, cand.end());
            const VertexSet lset = VertexSet::from_range(view_.n(), left);
            const Weight to_left = (deg_[static_cast<std::size_t>(v)] + view_.cut(lset) - view_.cut(lset | single)) / 2;
            std::uniform_int_distribution<Weight> coin(1, inside);
            if (coin(rng) <= to_left) {
                cand = std::move(left);
                inside = to_left;
            } else {
                cand = std::move(right);
                inside -= to_left;
            }
        }
        return Edge::normalized(v, cand.front());
    }

private:
    void init() {
        if (ready_) return;
        deg_.resize(static_cast<std::size_t>(view_.n()));
        Weight sum = 0;
        for (Vertex v = 0; v < view_.n(); ++v) {
            deg_[static_cast<std::size_t>(v)] = view_.cut(VertexSet(view_.n(), {v}));
            sum += deg_[static_cast<std::size_t>(v)];
        }
        m_ = sum / 2;
        ready_ = true;
    }

    CutView view_;
    std::vector<Weight> deg_;
    long m_ = 0;
    bool ready_ = false;
};

}  // namespace stcut
