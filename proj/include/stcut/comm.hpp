#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "stcut/graph.hpp"
#include "stcut/oracle.hpp"

namespace stcut {

enum class Party : std::uint8_t { alice = 0, bob = 1 };

inline const char* party_name(Party p) { return p == Party::alice ? "alice" : "bob"; }

enum class MessageKind : std::uint8_t { forest = 1, sparsifier = 2, edge = 3, none = 4, edges = 5 };

inline const char* kind_name(MessageKind k) {
    switch (k) {
        case MessageKind::forest: return "forest";
        case MessageKind::sparsifier: return "sparsifier";
        case MessageKind::edge: return "edge";
        case MessageKind::none: return "none";
        case MessageKind::edges: return "edges";
    }
    return "?";
}

class BitWriter {
public:
    void put(std::uint64_t value, int bits) {
        if (bits < 64 && (value >> bits) != 0) throw std::overflow_error("value does not fit its field");
        for (int i = bits - 1; i >= 0; --i) {
            if (size_ % 8 == 0) bytes_.push_back(0);
            if ((value >> i) & 1U) bytes_.back() |= static_cast<std::uint8_t>(0x80U >> (size_ % 8));
            ++size_;
        }
    }
    long bits() const { return size_; }
    const std::vector<std::uint8_t>& bytes() const { return bytes_; }

private:
    std::vector<std::uint8_t> bytes_;
    long size_ = 0;
};

class BitReader {
public:
    explicit BitReader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}
    std::uint64_t get(int bits) {
        std::uint64_t v = 0;
        for (int i = 0; i < bits; ++i) {
            const auto byte = bytes_.at(static_cast<std::size_t>(pos_ / 8));
            v = (v << 1) | ((byte >> (7 - pos_ % 8)) & 1U);
            ++pos_;
        }
        return v;
    }

private:
    const std::vector<std::uint8_t>& bytes_;
    long pos_ = 0;
};

/// Field widths: a vertex takes ceil(log2 n) bits, an integer ceil(log2 n^2).
struct WireFormat {
    int n = 2;
    int vertex_bits() const { return std::max(1, ceil_log2(n)); }
    int edge_bits() const { return 2 * vertex_bits(); }
    int integer_bits() const { return std::max(1, ceil_log2(static_cast<long long>(n) * n)); }
    static constexpr int header_bits = 8;
};

struct Message {
    int round = 0;
    Party sender = Party::alice;
    MessageKind kind = MessageKind::none;
    long bits = 0;  // header plus payload
    std::vector<std::uint8_t> payload;
};

class Transcript {
public:
    const std::vector<Message>& messages() const { return messages_; }
    long total_bits() const { return total_; }
    void append(Message m) {
        total_ += m.bits;
        messages_.push_back(std::move(m));
    }
    long bits_since(std::size_t first_message) const {
        long b = 0;
        for (std::size_t i = first_message; i < messages_.size(); ++i) b += messages_[i].bits;
        return b;
    }

    std::string csv() const {
        std::ostringstream out;
        out << "round,sender,kind,bits\n";
        for (const auto& m : messages_) out << m.round << ',' << party_name(m.sender) << ',' << kind_name(m.kind) << ',' << m.bits << '\n';
        return out.str();
    }
    /// Every message as header byte followed by its payload bytes.
    std::vector<std::uint8_t> bytes() const {
        std::vector<std::uint8_t> out;
        for (const auto& m : messages_) {
            out.push_back(static_cast<std::uint8_t>((static_cast<unsigned>(m.sender) << 7) | static_cast<unsigned>(m.kind)));
            out.insert(out.end(), m.payload.begin(), m.payload.end());
        }
        return out;
    }

private:
    std::vector<Message> messages_;
    long total_ = 0;
};

/// Serializes messages onto the transcript and hands back what the
/// receiver decodes, so nothing crosses between players off the wire.
class Channel {
public:
    Channel(int n, Transcript& transcript) : wire_{n}, transcript_(transcript) {}

    const WireFormat& wire() const { return wire_; }
    Transcript& transcript() { return transcript_; }
    void next_round() { ++round_; }
    int round() const { return round_; }

    std::optional<Edge> send_edge(Party from, const std::optional<Edge>& e) {
        BitWriter w;
        if (e) put_edge(w, *e);
        auto bytes = post(from, e ? MessageKind::edge : MessageKind::none, w);
        if (!e) return std::nullopt;
        BitReader r(bytes);
        return get_edge(r);
    }

    std::vector<Edge> send_edges(Party from, MessageKind kind, const std::vector<Edge>& edges) {
        BitWriter w;
        w.put(edges.size(), wire_.integer_bits());
        for (const auto& e : edges) put_edge(w, e);
        auto bytes = post(from, kind, w);
        BitReader r(bytes);
        std::vector<Edge> out(r.get(wire_.integer_bits()));
        for (auto& e : out) e = get_edge(r);
        return out;
    }

    WeightedGraph send_weighted(Party from, const WeightedGraph& g) {
        BitWriter w;
        w.put(g.num_edges(), wire_.integer_bits());
        for (const auto& [e, x] : g.edges()) {
            if (x < 1 || ceil_log2(x + 1) > wire_.integer_bits()) throw std::invalid_argument("edge weight does not fit the wire format");
            put_edge(w, e);
            w.put(static_cast<std::uint64_t>(x), wire_.integer_bits());
        }
        auto bytes = post(from, MessageKind::sparsifier, w);
        BitReader r(bytes);
        WeightedGraph out(g.n());
        const auto count = r.get(wire_.integer_bits());
        for (std::uint64_t i = 0; i < count; ++i) {
            const Edge e = get_edge(r);
            out.add_edge(e.u, e.v, static_cast<Weight>(r.get(wire_.integer_bits())));
        }
        return out;
    }

private:
    void put_edge(BitWriter& w, const Edge& e) const {
        w.put(static_cast<std::uint64_t>(e.u), wire_.vertex_bits());
        w.put(static_cast<std::uint64_t>(e.v), wire_.vertex_bits());
    }
    Edge get_edge(BitReader& r) const {
        const auto u = static_cast<Vertex>(r.get(wire_.vertex_bits()));
        const auto v = static_cast<Vertex>(r.get(wire_.vertex_bits()));
        return Edge{u, v};
    }
    std::vector<std::uint8_t> post(Party from, MessageKind kind, const BitWriter& w) {
        Message m;
        m.round = round_;
        m.sender = from;
        m.kind = kind;
        m.bits = WireFormat::header_bits + w.bits();
        m.payload = w.bytes();
        transcript_.append(m);
        return m.payload;
    }

    WireFormat wire_;
    Transcript& transcript_;
    int round_ = 0;
};

struct TwoPartyInstance {
    Graph alice;
    Graph bob;

    TwoPartyInstance(Graph a, Graph b) : alice(std::move(a)), bob(std::move(b)) {
        if (alice.n() != bob.n() || alice.s() != bob.s() || alice.t() != bob.t())
            throw std::invalid_argument("players disagree on n, s, t");
    }
    int n() const { return alice.n(); }
    Vertex s() const { return alice.s(); }
    Vertex t() const { return alice.t(); }
    const Graph& of(Party p) const { return p == Party::alice ? alice : bob; }
    Graph joined() const { return alice.united(bob); }
};

}  // namespace stcut
