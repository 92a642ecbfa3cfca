#pragma once

#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "stcut/oracle.hpp"
#include "stcut/witness.hpp"

namespace stcut {

// Pairs (p, q) with p in {1,2,3}, q in {1,2}; neighbours differ in p.
using Assignment = std::vector<std::pair<int, int>>;

inline bool matches(const Assignment& a, std::size_t i, std::size_t j) {
    return a[i].first == a[j].first && a[i].second != a[j].second;
}

inline bool is_assignment(const Assignment& a) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].first < 1 || a[i].first > 3 || a[i].second < 1 || a[i].second > 2) return false;
        if (i + 1 < a.size() && a[i].first == a[i + 1].first) return false;
    }
    return true;
}

/// True when every index pair at distance >= 2 is matched by some assignment.
inline bool covers_far_pairs(const std::vector<Assignment>& list, std::size_t ell) {
    for (std::size_t i = 0; i < ell; ++i)
        for (std::size_t j = i + 2; j < ell; ++j) {
            bool hit = false;
            for (const auto& a : list)
                if (matches(a, i, j)) {
                    hit = true;
                    break;
                }
            if (!hit) return false;
        }
    return true;
}

inline long assignment_cap(std::size_t ell) {
    return 24L * std::max(1, ceil_log2(static_cast<long long>(ell > 1 ? ell - 1 : 1)));
}

inline Assignment random_assignment(std::size_t ell, std::mt19937_64& rng) {
    Assignment a(ell);
    std::uniform_int_distribution<int> bit(0, 1);
    for (std::size_t i = 0; i < ell; ++i) {
        int p = 1;
        if (i > 0) {
            p = 1 + bit(rng);
            if (p >= a[i - 1].first) ++p;  // uniform over the two values other than p_{i-1}
        }
        a[i] = {p, 1 + bit(rng)};
    }
    return a;
}

/// Random assignments added until every far pair is matched; redrawn from
/// scratch if the list outgrows the cap.
inline std::vector<Assignment> build_assignments(std::size_t ell, std::mt19937_64& rng, int max_rounds = 1000) {
    if (ell < 1) throw std::invalid_argument("need at least one interval");
    if (ell <= 2) return {};
    const long cap = assignment_cap(ell);
    for (int round = 0; round < max_rounds; ++round) {
        std::vector<std::vector<char>> open(ell, std::vector<char>(ell, 0));
        std::size_t remaining = 0;
        for (std::size_t i = 0; i < ell; ++i)
            for (std::size_t j = i + 2; j < ell; ++j) {
                open[i][j] = 1;
                ++remaining;
            }
        std::vector<Assignment> list;
        while (remaining > 0 && static_cast<long>(list.size()) < cap) {
            auto a = random_assignment(ell, rng);
            for (std::size_t i = 0; i < ell; ++i)
                for (std::size_t j = i + 2; j < ell; ++j)
                    if (open[i][j] && matches(a, i, j)) {
                        open[i][j] = 0;
                        --remaining;
                    }
            list.push_back(std::move(a));
        }
        if (remaining == 0) return list;
    }
    throw std::runtime_error("build_assignments: retry cap exceeded");
}

/// Interval count for width delta/2 covering [0, 1]: floor(2/delta) + 1.
inline std::size_t interval_count(const Rational& delta) {
    const BigInt q = boost::multiprecision::numerator(Rational(2) / delta) /
                     boost::multiprecision::denominator(Rational(2) / delta);
    return static_cast<std::size_t>(q) + 1;
}

inline std::size_t interval_of(const Rational& phi, const Rational& delta) {
    const Rational x = phi * 2 / delta;
    const BigInt q = boost::multiprecision::numerator(x) / boost::multiprecision::denominator(x);
    return static_cast<std::size_t>(q);
}

struct LongEdgeResult {
    std::optional<Edge> edge;
    long queries = 0;
    std::size_t assignments = 0;
    std::size_t assignments_tried = 0;
};

class FindLongEdge {
public:
    explicit FindLongEdge(std::uint64_t seed) : rng_(seed) {}

    const std::vector<Assignment>& assignments_for(std::size_t ell) {
        auto it = cache_.find(ell);
        if (it == cache_.end()) it = cache_.emplace(ell, build_assignments(ell, rng_)).first;
        return it->second;
    }

    /// Some edge of the view with |phi(u) - phi(v)| >= delta/2, or none. An
    /// edge with gap >= delta, if present, is always found.
    LongEdgeResult run(const CutView& view, const std::vector<Rational>& phi, const Rational& delta) {
        if (!(delta > 0 && delta <= 1)) throw std::invalid_argument("delta must lie in (0,1]");
        const int n = view.n();
        const std::size_t ell = interval_count(delta);
        std::vector<std::size_t> slot(static_cast<std::size_t>(n));
        for (Vertex v = 0; v < n; ++v) {
            const Rational& x = phi[static_cast<std::size_t>(v)];
            if (x < 0 || x > 1) throw std::invalid_argument("potentials must lie in [0,1]");
            slot[static_cast<std::size_t>(v)] = interval_of(x, delta);
        }
        const auto& list = assignments_for(ell);
        LongEdgeResult out;
        out.assignments = list.size();
        const long before = view.oracle().total_queries();
        for (const auto& a : list) {
            ++out.assignments_tried;
            for (int p = 1; p <= 3; ++p) {
                VertexSet one(n), two(n);
                for (Vertex v = 0; v < n; ++v) {
                    const auto& [pi, qi] = a[slot[static_cast<std::size_t>(v)]];
                    if (pi != p) continue;
                    (qi == 1 ? one : two).insert(v);
                }
                if (one.empty() || two.empty()) continue;
                if (auto e = view.find_edge(one, two)) {
                    out.edge = e;
                    out.queries = view.oracle().total_queries() - before;
                    return out;
                }
            }
        }
        out.queries = view.oracle().total_queries() - before;
        return out;
    }

private:
    std::mt19937_64 rng_;
    std::map<std::size_t, std::vector<Assignment>> cache_;
};

}  // namespace stcut
