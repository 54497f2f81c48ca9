#include "quop/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "quop/errors.hpp"
#include "quop/rng.hpp"

namespace quop {

namespace {

bool finite(double x) { return std::isfinite(x); }

}  // namespace

WeightedGraph::WeightedGraph(bool directed, std::vector<int> nodes,
                             const std::vector<Edge>& edges)
    : directed_(directed), nodes_(std::move(nodes)) {
    std::sort(nodes_.begin(), nodes_.end());
    if (std::adjacent_find(nodes_.begin(), nodes_.end()) != nodes_.end()) {
        throw DataError("duplicate node id");
    }
    index_.reserve(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        index_[nodes_[i]] = static_cast<int>(i);
    }

    edges_.reserve(edges.size());
    for (Edge e : edges) {
        if (!index_.count(e.src) || !index_.count(e.dst)) {
            throw DataError("edge (" + std::to_string(e.src) + "," + std::to_string(e.dst) +
                            ") references an unlisted node");
        }
        if (e.src == e.dst) {
            throw DataError("self-loop on node " + std::to_string(e.src));
        }
        if (!finite(e.weight)) {
            throw DataError("non-finite weight on edge (" + std::to_string(e.src) + "," +
                            std::to_string(e.dst) + ")");
        }
        if (!directed_ && e.src > e.dst) std::swap(e.src, e.dst);
        edges_.push_back(e);
    }
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
        return std::tie(a.src, a.dst) < std::tie(b.src, b.dst);
    });
    for (std::size_t i = 1; i < edges_.size(); ++i) {
        if (edges_[i].src == edges_[i - 1].src && edges_[i].dst == edges_[i - 1].dst) {
            throw DataError("duplicate edge (" + std::to_string(edges_[i].src) + "," +
                            std::to_string(edges_[i].dst) + ")");
        }
    }

    out_.assign(nodes_.size(), {});
    und_neighbors_.assign(nodes_.size(), {});
    for (const Edge& e : edges_) {
        int si = index_.at(e.src);
        int di = index_.at(e.dst);
        out_[si].emplace_back(di, e.weight);
        if (!directed_) out_[di].emplace_back(si, e.weight);
        und_neighbors_[si].push_back(di);
        und_neighbors_[di].push_back(si);
    }
    for (auto& row : out_) std::sort(row.begin(), row.end());
    for (auto& row : und_neighbors_) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
    }
}

int WeightedGraph::index_of(int id) const {
    auto it = index_.find(id);
    if (it == index_.end()) {
        throw DataError("unknown node id " + std::to_string(id));
    }
    return it->second;
}

double WeightedGraph::weight(int u, int v) const {
    const auto& row = out_[index_of(u)];
    int vi = index_of(v);
    auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(vi, 0.0),
                               [](const auto& a, const auto& b) { return a.first < b.first; });
    if (it != row.end() && it->first == vi) return it->second;
    return 0.0;
}

const std::vector<int>& WeightedGraph::undirected_neighbors(int u) const {
    return und_neighbors_[index_of(u)];
}

WeightedGraph erdos_renyi_weighted(int n, double p, std::uint64_t seed) {
    if (n < 1) throw DataError("node count must be >= 1");
    if (p < 0.0 || p > 1.0) throw DataError("edge probability must be in [0,1]");

    std::mt19937_64 gen(rng::splitmix64(seed));
    std::vector<int> nodes(n);
    for (int i = 0; i < n; ++i) nodes[i] = i;

    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (!rng::bernoulli(gen, p)) continue;
            double w;
            do {
                w = rng::uniform01(gen);
            } while (w <= 0.0);
            edges.push_back({i, j, w});
        }
    }
    return WeightedGraph(false, std::move(nodes), edges);
}

WeightedGraph load_graph(const std::string& path, const LoadOptions& opts) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);

    bool directed = opts.directed;
    std::vector<int> nodes;
    std::vector<Edge> edges;

    if (opts.format == GraphFormat::json) {
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw DataError(path + ": " + e.what());
        }
        if (!j.is_object() || !j.contains("directed") || !j.contains("nodes") ||
            !j.contains("edges")) {
            throw DataError(path + ": expected object with directed/nodes/edges");
        }
        try {
            directed = j.at("directed").get<bool>();
            nodes = j.at("nodes").get<std::vector<int>>();
            for (const auto& row : j.at("edges")) {
                if (!row.is_array() || row.size() != 3) {
                    throw DataError(path + ": each edge must be [u, v, w]");
                }
                edges.push_back({row[0].get<int>(), row[1].get<int>(), row[2].get<double>()});
            }
        } catch (const nlohmann::json::exception& e) {
            throw DataError(path + ": " + e.what());
        }
    } else {
        std::string line;
        int lineno = 0;
        std::vector<int> endpoints;
        while (std::getline(in, line)) {
            ++lineno;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::istringstream ls(line);
            int u, v;
            double w;
            if (!(ls >> u)) continue;  // blank or comment-only line
            if (!(ls >> v >> w)) {
                throw ParseError(path, lineno, "expected \"u v w\"");
            }
            std::string rest;
            if (ls >> rest) {
                throw ParseError(path, lineno, "trailing content \"" + rest + "\"");
            }
            edges.push_back({u, v, w});
            endpoints.push_back(u);
            endpoints.push_back(v);
        }
        std::sort(endpoints.begin(), endpoints.end());
        endpoints.erase(std::unique(endpoints.begin(), endpoints.end()), endpoints.end());
        nodes = std::move(endpoints);
    }

    if (opts.normalize) {
        double maxw = 0.0;
        for (const Edge& e : edges) maxw = std::max(maxw, e.weight);
        if (!(maxw > 0.0)) {
            throw DataError(path + ": normalization requires a positive maximum weight");
        }
        for (Edge& e : edges) e.weight /= maxw;
    }

    return WeightedGraph(directed, std::move(nodes), edges);
}

std::string graph_json_string(const WeightedGraph& g) {
    nlohmann::json j;
    j["directed"] = g.directed();
    j["nodes"] = g.nodes();
    auto edges = nlohmann::json::array();
    for (const Edge& e : g.edges()) {
        edges.push_back({e.src, e.dst, e.weight});
    }
    j["edges"] = std::move(edges);
    return j.dump(2) + "\n";
}

void save_graph_json(const WeightedGraph& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path);
    out << graph_json_string(g);
}

std::vector<int> ego_nodes(const WeightedGraph& g, int v, int hops) {
    if (!g.has_node(v)) throw DataError("unknown node id " + std::to_string(v));
    if (hops < 1) throw DataError("hops must be >= 1");

    // BFS on the undirected view.
    std::unordered_map<int, int> dist{{v, 0}};
    std::vector<int> frontier{v};
    for (int d = 1; d <= hops && !frontier.empty(); ++d) {
        std::vector<int> next;
        for (int u : frontier) {
            for (int w : g.undirected_neighbors(u)) {
                if (dist.emplace(w, d).second) next.push_back(w);
            }
        }
        frontier = std::move(next);
    }
    std::vector<int> result;
    result.reserve(dist.size());
    for (const auto& [id, _] : dist) result.push_back(id);
    std::sort(result.begin(), result.end());
    return result;
}

LocalAdjacency local_adjacency(const WeightedGraph& g, int v, int hops) {
    LocalAdjacency out;
    out.ordering = ego_nodes(g, v, hops);
    const int n = static_cast<int>(out.ordering.size());
    out.matrix = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            out.matrix(i, j) = g.weight(out.ordering[i], out.ordering[j]);
        }
    }
    return out;
}

HermAdjParam::HermAdjParam(std::complex<double> alpha) : alpha_(alpha) {
    if (std::abs(std::abs(alpha) - 1.0) > 1e-12) {
        throw DataError("alpha must have unit modulus");
    }
    if (alpha.real() < 0.0) {
        throw DataError("alpha must have non-negative real part");
    }
}

Eigen::MatrixXcd herm_adj(const Eigen::MatrixXd& m, const HermAdjParam& alpha) {
    if (m.rows() != m.cols()) throw DataError("herm_adj requires a square matrix");
    const int n = static_cast<int>(m.rows());
    for (int i = 0; i < n; ++i) {
        if (m(i, i) != 0.0) throw DataError("herm_adj requires a zero diagonal");
    }
    const std::complex<double> a = alpha.value();
    const std::complex<double> ac = std::conj(a);
    Eigen::MatrixXcd out(n, n);
    for (int i = 0; i < n; ++i) {
        out(i, i) = 0.0;
        for (int j = i + 1; j < n; ++j) {
            if (m(i, j) == m(j, i)) {
                out(i, j) = m(i, j);
                out(j, i) = m(j, i);
            } else {
                out(i, j) = m(i, j) * a + m(j, i) * ac;
                out(j, i) = std::conj(out(i, j));
            }
        }
    }
    return out;
}

LocalHermitianSeed make_local_hermitian(const WeightedGraph& g, int v, int hops,
                                        const HermAdjParam& alpha) {
    LocalAdjacency adj = local_adjacency(g, v, hops);
    LocalHermitianSeed seed;
    seed.anchor = v;
    seed.hops = hops;
    seed.ordering = std::move(adj.ordering);
    if (g.directed()) {
        seed.matrix = herm_adj(adj.matrix, alpha);
    } else {
        // Undirected adjacency is symmetric, where the transform is the
        // identity; skip it to keep entries bit-exact.
        seed.matrix = adj.matrix.cast<std::complex<double>>();
    }
    return seed;
}

int padded_dimension(const std::vector<int>& dims) {
    if (dims.empty()) throw DataError("padded_dimension requires a non-empty batch");
    int maxdim = 2;
    for (int d : dims) maxdim = std::max(maxdim, d);
    int p = 1;
    while (p < maxdim) p <<= 1;
    return p;
}

std::vector<LocalHermitian> pad_batch(const std::vector<LocalHermitianSeed>& seeds) {
    if (seeds.empty()) throw DataError("pad_batch requires a non-empty batch");
    std::vector<int> dims;
    dims.reserve(seeds.size());
    for (const auto& s : seeds) dims.push_back(static_cast<int>(s.matrix.rows()));
    const int padded = padded_dimension(dims);

    std::vector<LocalHermitian> out;
    out.reserve(seeds.size());
    for (const auto& s : seeds) {
        LocalHermitian lh;
        lh.anchor = s.anchor;
        lh.hops = s.hops;
        lh.ordering = s.ordering;
        lh.original_dim = static_cast<int>(s.matrix.rows());
        lh.padded_dim = padded;
        lh.matrix = Eigen::MatrixXcd::Zero(padded, padded);
        lh.matrix.topLeftCorner(lh.original_dim, lh.original_dim) = s.matrix;
        out.push_back(std::move(lh));
    }
    return out;
}

}  // namespace quop
