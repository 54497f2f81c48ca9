#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "quop/baseline.hpp"
#include "quop/errors.hpp"
#include "quop/graph.hpp"
#include "quop/kernels.hpp"
#include "quop/pipeline.hpp"

namespace {

constexpr const char* kToolVersion = "quop 0.1.0";

// Exit codes: 0 success, 1 usage, 2 input data, 3 numeric guard.
constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;

std::string fnv1a_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw quop::DataError("cannot open " + path);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char buf[4096];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ULL;
        }
    }
    char hex[32];
    std::snprintf(hex, sizeof(hex), "fnv1a:%016llx", static_cast<unsigned long long>(h));
    return hex;
}

// Reproducibility record written next to each command's primary output.
struct Manifest {
    std::string command;
    nlohmann::json parameters = nlohmann::json::object();
    nlohmann::json inputs = nlohmann::json::object();
    std::vector<std::string> outputs;

    void add_input(const std::string& path) { inputs[path] = fnv1a_digest(path); }

    void write(const std::string& primary_output) const {
        nlohmann::json j;
        j["command"] = command;
        j["version"] = kToolVersion;
        j["parameters"] = parameters;
        j["inputs"] = inputs;
        j["outputs"] = outputs;
        const std::string path = primary_output + ".manifest.json";
        std::ofstream out(path, std::ios::binary);
        if (!out) throw quop::DataError("cannot write " + path);
        out << j.dump(2) << '\n';
    }
};

struct GraphArgs {
    std::string graph;
    std::string format = "json";
    bool directed = false;
    bool normalize = false;
};

void add_graph_flags(CLI::App* cmd, GraphArgs& args) {
    cmd->add_option("--graph", args.graph, "graph file, or \"karate\" for the built-in fixture")
        ->required();
    cmd->add_option("--format", args.format, "input format for graph files")
        ->check(CLI::IsMember({"json", "edgelist"}))
        ->capture_default_str();
    cmd->add_flag("--directed", args.directed, "treat edge-list input as directed");
    cmd->add_flag("--normalize", args.normalize, "divide weights by the maximum weight");
}

quop::WeightedGraph load_graph_arg(const GraphArgs& args, Manifest& manifest) {
    if (args.graph == "karate") {
        manifest.inputs["karate"] = "builtin";
        return quop::karate_club();
    }
    manifest.add_input(args.graph);
    quop::LoadOptions opts;
    opts.format = args.format == "json" ? quop::GraphFormat::json : quop::GraphFormat::edgelist;
    opts.directed = args.directed;
    opts.normalize = args.normalize;
    return quop::load_graph(args.graph, opts);
}

std::vector<int> parse_node_list(const std::string& spec, const quop::WeightedGraph& g) {
    if (spec == "all") return g.nodes();
    std::vector<int> nodes;
    std::istringstream in(spec);
    std::string field;
    while (std::getline(in, field, ',')) {
        try {
            nodes.push_back(std::stoi(field));
        } catch (const std::exception&) {
            throw quop::DataError("bad node id \"" + field + "\" in --nodes");
        }
    }
    if (nodes.empty()) throw quop::DataError("--nodes selected no nodes");
    for (int v : nodes) {
        if (!g.has_node(v)) throw quop::DataError("unknown node id " + std::to_string(v));
    }
    return nodes;
}

std::vector<std::pair<int, int>> parse_pairs(const std::string& spec) {
    std::vector<std::pair<int, int>> pairs;
    std::istringstream in(spec);
    std::string field;
    while (std::getline(in, field, ',')) {
        auto colon = field.find(':');
        if (colon == std::string::npos) {
            throw quop::DataError("bad pair \"" + field + "\"; expected \"a:b\"");
        }
        try {
            pairs.emplace_back(std::stoi(field.substr(0, colon)),
                               std::stoi(field.substr(colon + 1)));
        } catch (const std::exception&) {
            throw quop::DataError("bad pair \"" + field + "\"");
        }
    }
    if (pairs.empty()) throw quop::DataError("--pairs selected no pairs");
    return pairs;
}

void write_pgm(const Eigen::MatrixXd& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw quop::DataError("cannot write " + path);
    out << "P5\n" << m.cols() << ' ' << m.rows() << "\n255\n";
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            double v = std::clamp(m(i, j), 0.0, 1.0);
            out.put(static_cast<char>(static_cast<unsigned char>(std::lround(255.0 * v))));
        }
    }
}

void write_dense_csv(const Eigen::MatrixXd& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw quop::DataError("cannot write " + path);
    char buf[64];
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", m(i, j));
            out << (j ? "," : "") << buf;
        }
        out << '\n';
    }
}

int run(int argc, char** argv) {
    CLI::App app{"Node operator embeddings and similarity kernels"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a seeded random weighted graph");
    int gen_nodes = 0;
    double gen_prob = 0.0;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    gen->add_option("--nodes", gen_nodes, "node count")->required()->check(CLI::PositiveNumber);
    gen->add_option("--edge-prob", gen_prob, "edge probability")
        ->required()
        ->check(CLI::Range(0.0, 1.0));
    gen->add_option("--seed", gen_seed, "RNG seed")->capture_default_str();
    gen->add_option("--out", gen_out, "output graph JSON")->required();

    // similarity
    auto* sim = app.add_subcommand("similarity", "all-pairs node similarity matrix");
    GraphArgs sim_graph;
    add_graph_flags(sim, sim_graph);
    int sim_hops = 1;
    std::string sim_kernel = "fidelity";
    std::string sim_mode = "exact";
    int sim_shots = 1000;
    std::uint64_t sim_seed = 0;
    bool sim_clamp = false;
    double alpha_re = 0.0, alpha_im = 1.0;
    std::string sim_nodes = "all";
    std::string sim_batch = "graph";
    int sim_jobs = 1;
    std::string sim_out, sim_json_out;
    sim->add_option("--hops", sim_hops, "neighborhood radius")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sim->add_option("--kernel", sim_kernel)->check(CLI::IsMember({"fidelity", "swap"}))
        ->capture_default_str();
    sim->add_option("--mode", sim_mode)->check(CLI::IsMember({"exact", "sampled"}))
        ->capture_default_str();
    sim->add_option("--shots", sim_shots, "samples per pair in sampled mode")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sim->add_option("--seed", sim_seed, "RNG seed for sampled mode")->capture_default_str();
    sim->add_flag("--clamp", sim_clamp, "truncate sampled SWAP values into [0,1]");
    sim->add_option("--alpha-re", alpha_re, "Hermitian-adjacency alpha, real part")
        ->capture_default_str();
    sim->add_option("--alpha-im", alpha_im, "Hermitian-adjacency alpha, imaginary part")
        ->capture_default_str();
    sim->add_option("--nodes", sim_nodes, "\"all\" or comma-separated node ids")
        ->capture_default_str();
    sim->add_option("--batch", sim_batch,
                    "padding batch: whole graph or just the scored nodes")
        ->check(CLI::IsMember({"graph", "nodes"}))
        ->capture_default_str();
    sim->add_option("--jobs", sim_jobs, "worker threads for pair scoring")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sim->add_option("--out", sim_out, "output similarity CSV")->required();
    sim->add_option("--json-out", sim_json_out, "optional matrix JSON output");

    // heatmap
    auto* heat = app.add_subcommand("heatmap", "render a similarity CSV as PGM + dense CSV");
    std::string heat_in, heat_out, heat_csv;
    heat->add_option("--in", heat_in, "similarity CSV")->required();
    heat->add_option("--out", heat_out, "output 8-bit PGM image")->required();
    heat->add_option("--csv-out", heat_csv, "dense matrix CSV (default: <out>.csv)");

    // fastrp
    auto* frp = app.add_subcommand("fastrp", "random-projection baseline embeddings");
    GraphArgs frp_graph;
    add_graph_flags(frp, frp_graph);
    int frp_dim = 16;
    std::uint64_t frp_seed = 0;
    std::string frp_weights = "0,0,1,3";
    std::string frp_out;
    frp->add_option("--dim", frp_dim, "embedding dimension")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    frp->add_option("--seed", frp_seed, "RNG seed")->capture_default_str();
    frp->add_option("--weights", frp_weights, "comma-separated iteration weights")
        ->capture_default_str();
    frp->add_option("--out", frp_out, "output embedding CSV")->required();

    // cosine
    auto* cos = app.add_subcommand("cosine", "cosine similarity over baseline embeddings");
    std::string cos_embeddings;
    GraphArgs cos_graph;
    int cos_dim = 16;
    std::uint64_t cos_seed = 0;
    std::string cos_pairs, cos_quop, cos_out;
    cos->add_option("--embeddings", cos_embeddings, "embedding CSV from fastrp");
    cos->add_option("--graph", cos_graph.graph,
                    "graph to embed on the fly (alternative to --embeddings)");
    cos->add_option("--format", cos_graph.format)
        ->check(CLI::IsMember({"json", "edgelist"}))
        ->capture_default_str();
    cos->add_flag("--directed", cos_graph.directed);
    cos->add_flag("--normalize", cos_graph.normalize);
    cos->add_option("--dim", cos_dim)->check(CLI::PositiveNumber)->capture_default_str();
    cos->add_option("--seed", cos_seed)->capture_default_str();
    cos->add_option("--pairs", cos_pairs, "comma-separated \"a:b\" pairs")->required();
    cos->add_option("--quop", cos_quop, "similarity CSV to print side by side");
    cos->add_option("--out", cos_out, "optional output CSV (default: stdout only)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // usage problems exit 1; help/version exit 0
    }

    if (gen->parsed()) {
        Manifest m{"gen"};
        m.parameters = {{"nodes", gen_nodes}, {"edge_prob", gen_prob}, {"seed", gen_seed}};
        auto g = quop::erdos_renyi_weighted(gen_nodes, gen_prob, gen_seed);
        quop::save_graph_json(g, gen_out);
        m.outputs = {gen_out};
        m.write(gen_out);
        std::cout << "nodes=" << g.node_count() << " edges=" << g.edge_count() << '\n';
        return 0;
    }

    if (sim->parsed()) {
        Manifest m{"similarity"};
        auto g = load_graph_arg(sim_graph, m);
        auto nodes = parse_node_list(sim_nodes, g);

        quop::HermAdjParam alpha({alpha_re, alpha_im});
        quop::KernelConfig cfg;
        cfg.kernel = sim_kernel == "swap" ? quop::Kernel::swap_test : quop::Kernel::fidelity;
        cfg.mode = sim_mode == "sampled" ? quop::Mode::sampled : quop::Mode::exact;
        cfg.shots = sim_shots;
        cfg.seed = sim_seed;
        cfg.clamp = sim_clamp;

        quop::PipelineOptions opts;
        opts.jobs = sim_jobs;
        if (sim_batch == "graph") opts.padding_batch = g.nodes();

        m.parameters = {{"graph", sim_graph.graph}, {"hops", sim_hops},
                        {"kernel", sim_kernel},     {"mode", sim_mode},
                        {"shots", sim_shots},       {"seed", sim_seed},
                        {"clamp", sim_clamp},       {"alpha_re", alpha_re},
                        {"alpha_im", alpha_im},     {"nodes", sim_nodes},
                        {"batch", sim_batch},       {"jobs", sim_jobs}};

        auto matrix = quop::quop_pairwise(g, nodes, sim_hops, alpha, cfg, opts);
        quop::write_similarity_csv(matrix, sim_out);
        m.outputs.push_back(sim_out);
        if (!sim_json_out.empty()) {
            quop::write_similarity_json(matrix, sim_json_out);
            m.outputs.push_back(sim_json_out);
        }
        m.write(sim_out);
        std::cout << "nodes=" << nodes.size() << " pairs=" << nodes.size() * (nodes.size() + 1) / 2
                  << '\n';
        return 0;
    }

    if (heat->parsed()) {
        Manifest m{"heatmap"};
        m.add_input(heat_in);
        auto scores = quop::read_similarity_csv(heat_in);
        if (heat_csv.empty()) heat_csv = heat_out + ".csv";
        write_pgm(scores.values, heat_out);
        write_dense_csv(scores.values, heat_csv);
        m.parameters = {{"in", heat_in}};
        m.outputs = {heat_out, heat_csv};
        m.write(heat_out);
        std::cout << "size=" << scores.values.rows() << "x" << scores.values.cols() << '\n';
        return 0;
    }

    if (frp->parsed()) {
        Manifest m{"fastrp"};
        auto g = load_graph_arg(frp_graph, m);
        std::vector<double> weights;
        std::istringstream in(frp_weights);
        std::string field;
        while (std::getline(in, field, ',')) {
            try {
                weights.push_back(std::stod(field));
            } catch (const std::exception&) {
                throw quop::DataError("bad iteration weight \"" + field + "\"");
            }
        }
        auto embeddings = quop::fastrp_embed(g, frp_dim, weights, frp_seed);
        quop::write_embeddings_csv(embeddings, frp_out);
        m.parameters = {{"graph", frp_graph.graph},
                        {"dim", frp_dim},
                        {"seed", frp_seed},
                        {"weights", frp_weights}};
        m.outputs = {frp_out};
        m.write(frp_out);
        std::cout << "rows=" << embeddings.node_ids.size() << " dim=" << embeddings.dim << '\n';
        return 0;
    }

    if (cos->parsed()) {
        Manifest m{"cosine"};
        quop::EmbeddingSet embeddings;
        if (!cos_embeddings.empty()) {
            m.add_input(cos_embeddings);
            embeddings = quop::read_embeddings_csv(cos_embeddings);
        } else if (!cos_graph.graph.empty()) {
            auto g = load_graph_arg(cos_graph, m);
            embeddings = quop::fastrp_embed(g, cos_dim, quop::kDefaultIterationWeights, cos_seed);
        } else {
            throw quop::DataError("cosine needs --embeddings or --graph");
        }
        std::unordered_map<int, int> index;
        for (std::size_t i = 0; i < embeddings.node_ids.size(); ++i) {
            index[embeddings.node_ids[i]] = static_cast<int>(i);
        }
        std::optional<quop::PairScores> quop_scores;
        std::unordered_map<int, int> quop_index;
        if (!cos_quop.empty()) {
            m.add_input(cos_quop);
            quop_scores = quop::read_similarity_csv(cos_quop);
            for (std::size_t i = 0; i < quop_scores->node_ids.size(); ++i) {
                quop_index[quop_scores->node_ids[i]] = static_cast<int>(i);
            }
        }

        std::ostringstream table;
        table << (quop_scores ? "i,j,cosine,quop\n" : "i,j,cosine\n");
        for (auto [a, b] : parse_pairs(cos_pairs)) {
            if (!index.count(a) || !index.count(b)) {
                throw quop::DataError("pair (" + std::to_string(a) + "," + std::to_string(b) +
                                      ") references a node without an embedding");
            }
            auto score =
                quop::cosine(embeddings.vectors.row(index[a]), embeddings.vectors.row(index[b]));
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.6f", score.value);
            table << a << ',' << b << ',' << buf;
            if (score.zero_norm) table << " (zero-norm)";
            if (quop_scores) {
                if (!quop_index.count(a) || !quop_index.count(b)) {
                    throw quop::DataError("pair (" + std::to_string(a) + "," + std::to_string(b) +
                                          ") missing from " + cos_quop);
                }
                std::snprintf(buf, sizeof(buf), "%.6f",
                              quop_scores->values(quop_index[a], quop_index[b]));
                table << ',' << buf;
            }
            table << '\n';
        }
        std::cout << table.str();
        if (!cos_out.empty()) {
            std::ofstream out(cos_out, std::ios::binary);
            if (!out) throw quop::DataError("cannot write " + cos_out);
            out << table.str();
            m.parameters = {{"pairs", cos_pairs}};
            m.outputs = {cos_out};
            m.write(cos_out);
        }
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const quop::NumericError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const quop::DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    }
}
