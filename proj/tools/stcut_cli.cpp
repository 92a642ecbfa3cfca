#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "stcut/stcut.hpp"

using namespace stcut;

namespace {

struct Common {
    std::uint64_t seed = 1;
    std::string sparsifier = "sampled";
    int witness_cap = 12;
    std::string report;
    bool timing = false;

    RunOptions options() const {
        RunOptions o;
        o.seed = seed;
        o.sparsifier = sparsifier == "exact" ? SparsifierMode::exact : SparsifierMode::sampled;
        o.witness_cap = witness_cap;
        return o;
    }
};

Graph load_undirected(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    const MixedGraph m = read_edge_list(in);
    if (m.f.num_arcs() != 0) throw std::runtime_error(path + ": directed arcs are not accepted here");
    return m.g;
}

// "er n=20 p=0.3" -> InstanceSpec
InstanceSpec parse_instance(const std::string& text) {
    std::istringstream words(text);
    InstanceSpec spec;
    words >> spec.kind;
    std::string w;
    while (words >> w) {
        const auto eq = w.find('=');
        if (eq == std::string::npos || eq == 0) throw std::invalid_argument("expected key=value, got '" + w + "'");
        spec.params[w.substr(0, eq)] = w.substr(eq + 1);
    }
    return spec;
}

int finish(const std::vector<RunReport>& reports, const Common& c) {
    std::string csv = csv_header(c.timing);
    for (const auto& r : reports) csv += csv_row(r, c.timing);
    if (c.report.empty()) {
        std::cout << csv;
    } else {
        std::ofstream out(c.report);
        if (!out) throw std::runtime_error("cannot write " + c.report);
        out << csv;
        for (const auto& r : reports)
            std::cout << r.algorithm << ": value " << r.value << (r.correct ? " (correct)" : " (WRONG)") << ", " << r.cost
                      << ' ' << r.unit << '\n';
    }
    for (const auto& r : reports)
        if (!r.correct) return 1;
    return 0;
}

// Invariant checks on one graph; prints a line per check.
int verify_graph(const Graph& g, const Common& c) {
    int bad = 0;
    auto line = [&](bool ok, const std::string& what) {
        std::cout << (ok ? "ok   " : "FAIL ") << what << '\n';
        bad += !ok;
    };
    const int n = g.n();
    std::mt19937_64 rng(c.seed);
    const auto full = max_flow(g);
    const auto flow = full.decomposition;
    line(cut_weight(g, full.cut) == full.value, "max flow equals the weight of its cut");
    line(within_flow_cover_bound(flow.arc_count(), full.value, n), "flow uses at most n sqrt(2 nu) edges");
    const MixedGraph gf = residual(g, flow.prefix(flow.paths.size() / 2));
    line(max_flow_value(g) == static_cast<Weight>(flow.paths.size() / 2) + max_flow_value(gf), "nu(G) = |F| + nu(G_F)");
    bool identity = true;
    const int trials = n <= 16 ? (1 << (n - 2)) : 5000;
    for (int i = 0; i < trials; ++i) {
        VertexSet ts(n, {g.t()});
        for (Vertex v = 0; v < n; ++v)
            if (v != g.s() && v != g.t() && (n <= 16 ? ((i >> (v - (v > g.s()) - (v > g.t()))) & 1) : static_cast<int>(rng() & 1)))
                ts.insert(v);
        identity = identity && cut_identity_check(g, flow.prefix(flow.paths.size() / 2), Cut(ts, g.s(), g.t()));
    }
    line(identity, n <= 16 ? "cut identity on every cut" : "cut identity on 5000 random cuts");
    const int k = static_cast<int>(full.value) + 1;
    line(max_flow_value(forest_packing(g, k).as_graph(g)) == full.value, "a (nu+1)-forest packing keeps nu");
    CutOracle o(g);
    const auto sparse = sparsify_by_queries(CutView(o), 0.5, rng).graph;
    line(verify_sparsifier(g, sparse, 0.5, rng, 2000), "cut-query sparsifier within 1 +- 0.5");
    if (n <= 8) {
        const WitnessParams p{static_cast<int>(full.value) + 1, static_cast<int>(full.value) + 1, 0};
        line(witness_count(g, p) > 0, "witnesses exist while nu < f - k'");
    }
    return bad ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Minimum s-t cut from cut queries or two-party communication"};
    app.require_subcommand(1);
    Common c;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--seed", c.seed, "Random seed");
        sub->add_option("--sparsifier", c.sparsifier, "Cut-query sparsifier mode")->check(CLI::IsMember({"sampled", "exact"}));
        sub->add_option("--witness-cap", c.witness_cap, "Largest vertex count for exact witness counting");
        sub->add_option("--report", c.report, "Write the CSV report here instead of stdout");
        sub->add_flag("--timing", c.timing, "Add a wall-time column to the CSV");
    };

    std::string file, file_b, instance, split_kind = "random", which = "augmenting", transcript, spec_file;

    auto* cq = app.add_subcommand("solve-cq", "Cut-query algorithm on a graph file or a generated instance");
    add_common(cq);
    cq->add_option("file", file, "Edge-list file");
    cq->add_option("--instance", instance, "Generator spec, e.g. \"er n=20 p=0.3\"");

    auto* comm = app.add_subcommand("solve-comm", "Two-party protocol on Alice's and Bob's edge lists");
    add_common(comm);
    comm->add_option("alice", file, "Alice's edge-list file");
    comm->add_option("bob", file_b, "Bob's edge-list file");
    comm->add_option("--instance", instance, "Generator spec; edges are then split between the players");
    comm->add_option("--split", split_kind, "How generated edges are split")->check(CLI::IsMember({"random", "alternating", "alice"}));
    comm->add_option("--transcript", transcript, "Write the message log (round,sender,kind,bits) here");

    auto* base = app.add_subcommand("baseline", "Augmenting-path or learn-everything baseline");
    add_common(base);
    base->add_option("file", file, "Edge-list file");
    base->add_option("--instance", instance, "Generator spec");
    base->add_option("--which", which, "Baseline")->check(CLI::IsMember({"augmenting", "learn-all"}));

    auto* verify = app.add_subcommand("verify", "Check flow, packing, sparsifier and witness invariants on a graph");
    add_common(verify);
    verify->add_option("file", file, "Edge-list file");
    verify->add_option("--instance", instance, "Generator spec");

    auto* sweep = app.add_subcommand("sweep", "Run every (algorithm, instance, seed) of a spec file");
    add_common(sweep);
    sweep->add_option("spec", spec_file, "Sweep spec file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        auto graph_input = [&]() -> std::pair<Graph, std::string> {
            if (!instance.empty() && !file.empty()) throw std::invalid_argument("give a file or --instance, not both");
            if (!instance.empty()) {
                const auto spec = parse_instance(instance);
                return {generate(spec, c.seed), spec.label()};
            }
            if (file.empty()) throw std::invalid_argument("no input graph");
            return {load_undirected(file), file};
        };

        if (*cq) {
            const auto [g, label] = graph_input();
            return finish({run_cq(g, c.options(), label)}, c);
        }
        if (*comm) {
            std::optional<TwoPartyInstance> inst;
            std::string label;
            if (!instance.empty()) {
                if (!file.empty()) throw std::invalid_argument("give files or --instance, not both");
                const auto spec = parse_instance(instance);
                inst.emplace(split(generate(spec, c.seed), split_kind, c.seed));
                label = spec.label() + " split=" + split_kind;
            } else {
                if (file.empty() || file_b.empty()) throw std::invalid_argument("solve-comm needs two edge-list files");
                inst.emplace(load_undirected(file), load_undirected(file_b));
                label = file + "|" + file_b;
            }
            auto report = run_comm(*inst, c.options(), label);
            if (!transcript.empty()) {
                CommContext ctx(c.seed);
                ctx.witness_cap = c.witness_cap;
                min_cut_comm(*inst, ctx);
                std::ofstream out(transcript);
                out << ctx.transcript.csv();
            }
            return finish({report}, c);
        }
        if (*base) {
            const auto [g, label] = graph_input();
            return finish({run_baseline(which, g, c.options(), label)}, c);
        }
        if (*verify) {
            const auto [g, label] = graph_input();
            std::cout << "verify " << label << " (n=" << g.n() << ", m=" << g.num_edges() << ")\n";
            return verify_graph(g, c);
        }
        if (*sweep) {
            std::ifstream in(spec_file);
            if (!in) throw std::runtime_error("cannot open " + spec_file);
            const auto spec = parse_sweep(in);
            return finish(run_sweep(spec, c.options()), c);
        }
    } catch (const SweepError& e) {
        std::cerr << spec_file << ":" << e.what() << '\n';
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
