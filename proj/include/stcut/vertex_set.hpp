#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace stcut {

using Vertex = int;

// Fixed-universe bitset over vertex ids [0, n).
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(int n) : n_(n), words_((static_cast<std::size_t>(n) + 63) / 64, 0) {}
    VertexSet(int n, std::initializer_list<Vertex> members) : VertexSet(n) {
        for (Vertex v : members) insert(v);
    }
    template <class Range>
    static VertexSet from_range(int n, const Range& members) {
        VertexSet out(n);
        for (Vertex v : members) out.insert(v);
        return out;
    }
    // Low bits of `mask` become members; only meaningful for n <= 64.
    static VertexSet from_mask(int n, std::uint64_t mask) {
        VertexSet out(n);
        if (n > 0) out.words_[0] = n >= 64 ? mask : (mask & ((std::uint64_t{1} << n) - 1));
        return out;
    }
    static VertexSet full(int n) {
        VertexSet out(n);
        for (Vertex v = 0; v < n; ++v) out.insert(v);
        return out;
    }

    int universe() const { return n_; }

    bool contains(Vertex v) const {
        return (words_[static_cast<std::size_t>(v) >> 6] >> (v & 63)) & 1U;
    }
    void insert(Vertex v) {
        check(v);
        words_[static_cast<std::size_t>(v) >> 6] |= std::uint64_t{1} << (v & 63);
    }
    void erase(Vertex v) {
        check(v);
        words_[static_cast<std::size_t>(v) >> 6] &= ~(std::uint64_t{1} << (v & 63));
    }
    void assign(Vertex v, bool member) { member ? insert(v) : erase(v); }

    int size() const {
        int c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }
    bool empty() const {
        return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
    }

    VertexSet complement() const {
        VertexSet out(n_);
        for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = ~words_[i];
        out.trim();
        return out;
    }
    VertexSet& operator|=(const VertexSet& o) {
        same_universe(o);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    VertexSet& operator&=(const VertexSet& o) {
        same_universe(o);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
    friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }

    bool intersects(const VertexSet& o) const {
        same_universe(o);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }

    // |this ∩ o|
    int count_common(const VertexSet& o) const {
        same_universe(o);
        int c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i) c += std::popcount(words_[i] & o.words_[i]);
        return c;
    }
    // |this \ o|
    int count_outside(const VertexSet& o) const {
        same_universe(o);
        int c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i) c += std::popcount(words_[i] & ~o.words_[i]);
        return c;
    }

    std::vector<Vertex> members() const {
        std::vector<Vertex> out;
        for (std::size_t i = 0; i < words_.size(); ++i) {
            auto w = words_[i];
            while (w) {
                out.push_back(static_cast<Vertex>(i * 64 + static_cast<std::size_t>(std::countr_zero(w))));
                w &= w - 1;
            }
        }
        return out;
    }

    std::uint64_t low_word() const { return words_.empty() ? 0 : words_[0]; }

    friend bool operator==(const VertexSet&, const VertexSet&) = default;
    friend auto operator<=>(const VertexSet& a, const VertexSet& b) {
        return std::tie(a.n_, a.words_) <=> std::tie(b.n_, b.words_);
    }

private:
    void check(Vertex v) const {
        if (v < 0 || v >= n_) throw std::out_of_range("vertex id outside the universe");
    }
    void same_universe(const VertexSet& o) const {
        if (o.n_ != n_) throw std::invalid_argument("vertex sets over different universes");
    }
    void trim() {
        if (n_ % 64 != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
    }

    int n_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace stcut
