#include "quop/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "quop/errors.hpp"

namespace quop {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const char* kernel_name(Kernel k) {
    return k == Kernel::fidelity ? "fidelity" : "swap";
}

const char* mode_name(Mode m) { return m == Mode::exact ? "exact" : "sampled"; }

}  // namespace

SimilarityMatrix quop_pairwise(const WeightedGraph& g, const std::vector<int>& nodes,
                               int hops, const HermAdjParam& alpha, const KernelConfig& cfg,
                               const PipelineOptions& opts) {
    if (nodes.empty()) throw DataError("quop_pairwise requires a non-empty node list");

    std::vector<LocalHermitianSeed> seeds;
    seeds.reserve(nodes.size());
    for (int v : nodes) seeds.push_back(make_local_hermitian(g, v, hops, alpha));

    std::vector<int> dims;
    dims.reserve(seeds.size());
    for (const auto& s : seeds) dims.push_back(static_cast<int>(s.matrix.rows()));
    if (opts.padding_batch) {
        for (int v : *opts.padding_batch) {
            dims.push_back(static_cast<int>(ego_nodes(g, v, hops).size()));
        }
    }
    const int padded = padded_dimension(dims);
    if (padded > kMaxPaddedDim) {
        throw NumericError("padded dimension " + std::to_string(padded) + " exceeds the cap of " +
                           std::to_string(kMaxPaddedDim) +
                           "; reduce --hops or score a smaller batch");
    }

    std::vector<LocalHermitian> generators = pad_batch(seeds);
    // Pin the batch padsize even when padding_batch enlarged it.
    if (generators.front().padded_dim != padded) {
        std::vector<LocalHermitian> repadded;
        repadded.reserve(generators.size());
        for (auto& lh : generators) {
            LocalHermitian big = lh;
            big.padded_dim = padded;
            big.matrix = Eigen::MatrixXcd::Zero(padded, padded);
            big.matrix.topLeftCorner(lh.padded_dim, lh.padded_dim) = lh.matrix;
            repadded.push_back(std::move(big));
        }
        generators = std::move(repadded);
    }

    const int n = static_cast<int>(nodes.size());
    std::vector<NodeUnitary> unitaries(n);
    for (int i = 0; i < n; ++i) unitaries[i] = node_unitary(generators[i]);

    SimilarityMatrix sim;
    sim.node_ids = nodes;
    sim.values = Eigen::MatrixXd::Zero(n, n);
    sim.config = cfg;
    sim.hops = hops;
    sim.alpha = alpha.value();

    // Each (i,j) cell draws its own derived stream, so any work split gives
    // the same matrix.
    std::vector<std::pair<int, int>> cells;
    cells.reserve(static_cast<std::size_t>(n) * (n + 1) / 2);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) cells.emplace_back(i, j);
    }

    auto score_cells = [&](std::size_t begin, std::size_t end) {
        for (std::size_t c = begin; c < end; ++c) {
            auto [i, j] = cells[c];
            const double v = evaluate_kernel(unitaries[i], unitaries[j], cfg).value;
            sim.values(i, j) = v;
            sim.values(j, i) = v;
        }
    };

    const int jobs = std::max(1, opts.jobs);
    if (jobs == 1 || cells.size() < 2) {
        score_cells(0, cells.size());
    } else {
        std::vector<std::thread> workers;
        const std::size_t chunk = (cells.size() + jobs - 1) / jobs;
        for (int t = 0; t < jobs; ++t) {
            const std::size_t begin = std::min(cells.size(), t * chunk);
            const std::size_t end = std::min(cells.size(), begin + chunk);
            if (begin < end) workers.emplace_back(score_cells, begin, end);
        }
        for (auto& w : workers) w.join();
    }
    return sim;
}

WeightedGraph relabel_graph(const WeightedGraph& g,
                            const std::unordered_map<int, int>& perm) {
    std::vector<int> nodes;
    nodes.reserve(g.node_count());
    std::set<int> seen;
    for (int v : g.nodes()) {
        auto it = perm.find(v);
        if (it == perm.end()) {
            throw DataError("relabel mapping is missing node " + std::to_string(v));
        }
        if (!seen.insert(it->second).second) {
            throw DataError("relabel mapping is not injective at id " +
                            std::to_string(it->second));
        }
        nodes.push_back(it->second);
    }
    std::vector<Edge> edges;
    edges.reserve(g.edge_count());
    for (const Edge& e : g.edges()) {
        edges.push_back({perm.at(e.src), perm.at(e.dst), e.weight});
    }
    return WeightedGraph(g.directed(), std::move(nodes), edges);
}

Eigen::MatrixXd heatmap_matrix(const SimilarityMatrix& sim) {
    const Eigen::Index n = sim.values.rows();
    Eigen::MatrixXd full(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            full(i, j) = sim.values(i, j);
            full(j, i) = sim.values(i, j);
        }
    }
    return full;
}

std::string similarity_csv_string(const SimilarityMatrix& sim) {
    std::ostringstream out;
    out << "i,j,score\n";
    const int n = static_cast<int>(sim.node_ids.size());
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            out << sim.node_ids[i] << ',' << sim.node_ids[j] << ','
                << fmt_double(sim.values(i, j)) << '\n';
        }
    }
    return out.str();
}

void write_similarity_csv(const SimilarityMatrix& sim, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path);
    out << similarity_csv_string(sim);
}

std::string similarity_json_string(const SimilarityMatrix& sim) {
    nlohmann::json j;
    j["node_ids"] = sim.node_ids;
    j["hops"] = sim.hops;
    j["alpha"] = {{"re", sim.alpha.real()}, {"im", sim.alpha.imag()}};
    j["config"] = {{"kernel", kernel_name(sim.config.kernel)},
                   {"mode", mode_name(sim.config.mode)},
                   {"shots", sim.config.shots},
                   {"seed", sim.config.seed},
                   {"clamp", sim.config.clamp}};
    auto scores = nlohmann::json::array();
    const int n = static_cast<int>(sim.node_ids.size());
    for (int i = 0; i < n; ++i) {
        for (int j2 = i; j2 < n; ++j2) {
            scores.push_back({sim.node_ids[i], sim.node_ids[j2], sim.values(i, j2)});
        }
    }
    j["scores"] = std::move(scores);
    return j.dump(2) + "\n";
}

void write_similarity_json(const SimilarityMatrix& sim, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path);
    out << similarity_json_string(sim);
}

PairScores read_similarity_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line != "i,j,score") {
        throw ParseError(path, 1, "expected header \"i,j,score\"");
    }
    struct Entry {
        int i, j;
        double v;
    };
    std::vector<Entry> entries;
    std::set<int> ids;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        Entry e;
        char c1 = 0, c2 = 0;
        if (!(ls >> e.i >> c1 >> e.j >> c2 >> e.v) || c1 != ',' || c2 != ',') {
            throw ParseError(path, lineno, "expected \"i,j,score\"");
        }
        entries.push_back(e);
        ids.insert(e.i);
        ids.insert(e.j);
    }
    PairScores ps;
    ps.node_ids.assign(ids.begin(), ids.end());
    const int n = static_cast<int>(ps.node_ids.size());
    std::unordered_map<int, int> index;
    for (int i = 0; i < n; ++i) index[ps.node_ids[i]] = i;
    Eigen::MatrixXd seen = Eigen::MatrixXd::Zero(n, n);
    ps.values = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : entries) {
        const int a = index.at(e.i);
        const int b = index.at(e.j);
        ps.values(a, b) = e.v;
        ps.values(b, a) = e.v;
        seen(a, b) = seen(b, a) = 1.0;
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            if (seen(i, j) == 0.0) {
                throw DataError(path + ": missing score for pair (" +
                                std::to_string(ps.node_ids[i]) + "," +
                                std::to_string(ps.node_ids[j]) + ")");
            }
        }
    }
    return ps;
}

}  // namespace quop
