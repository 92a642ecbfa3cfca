#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "stcut/graph.hpp"

namespace stcut {

struct ParseError : std::runtime_error {
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_number(line) {}
    int line_number;
};

// Format: header "n s t", then "u v" per undirected edge and "u v w D" per
// directed arc of weight w. Blank lines and '#' comments are skipped.
inline MixedGraph read_edge_list(std::istream& in) {
    std::string line;
    int lineno = 0;
    bool have_header = false;
    MixedGraph out;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        ls.seekg(0);
        if (!have_header) {
            int n = 0, s = 0, t = 0;
            if (!(ls >> n >> s >> t)) throw ParseError(lineno, "expected header 'n s t'");
            try {
                out = MixedGraph(Graph(n, s, t));
            } catch (const std::exception& e) {
                throw ParseError(lineno, e.what());
            }
            have_header = true;
            continue;
        }
        long long u = 0, v = 0;
        if (!(ls >> u >> v)) throw ParseError(lineno, "expected 'u v' or 'u v w D'");
        std::string wtok, dtok;
        try {
            if (ls >> wtok) {
                if (!(ls >> dtok) || dtok != "D") throw ParseError(lineno, "weighted lines must end with 'D'");
                const long long w = std::stoll(wtok);
                if (out.f.weight(static_cast<Vertex>(u), static_cast<Vertex>(v)) != 0)
                    throw ParseError(lineno, "duplicate arc");
                out.f.add_arc(static_cast<Vertex>(u), static_cast<Vertex>(v), w);
            } else {
                if (!out.g.try_add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v)))
                    throw ParseError(lineno, "duplicate edge");
            }
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e) {
            throw ParseError(lineno, e.what());
        }
        std::string extra;
        if (ls >> extra) throw ParseError(lineno, "trailing tokens");
    }
    if (!have_header) throw ParseError(lineno, "missing header");
    return out;
}

inline void write_edge_list(std::ostream& out, const MixedGraph& m) {
    out << m.n() << ' ' << m.s() << ' ' << m.t() << '\n';
    for (const auto& e : m.g.edges()) out << e.u << ' ' << e.v << '\n';
    for (const auto& [a, w] : m.f.arcs()) out << a.tail << ' ' << a.head << ' ' << w << " D\n";
}

}  // namespace stcut
