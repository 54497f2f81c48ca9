#include "quop/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "quop/errors.hpp"
#include "quop/rng.hpp"

namespace quop {

namespace {

constexpr double kProjectionSparsity = 3.0;

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void normalize_rows(Eigen::MatrixXd& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const double norm = m.row(i).norm();
        if (norm > 0.0) m.row(i) /= norm;
    }
}

}  // namespace

EmbeddingSet fastrp_embed(const WeightedGraph& g, int dim,
                          std::vector<double> iteration_weights, std::uint64_t seed) {
    if (g.node_count() == 0) throw DataError("fastrp_embed requires a non-empty graph");
    if (dim < 1) throw DataError("embedding dimension must be >= 1");
    if (iteration_weights.empty()) throw DataError("iteration weights must be non-empty");

    const int n = static_cast<int>(g.node_count());
    const std::vector<int>& ids = g.nodes();
    std::unordered_map<int, int> index;
    for (int i = 0; i < n; ++i) index[ids[i]] = i;

    // Very sparse random projection: +-sqrt(s) with probability 1/(2s) each.
    std::mt19937_64 gen(rng::splitmix64(seed));
    Eigen::MatrixXd r = Eigen::MatrixXd::Zero(n, dim);
    const double amplitude = std::sqrt(kProjectionSparsity);
    for (int i = 0; i < n; ++i) {
        for (int d = 0; d < dim; ++d) {
            const double u = rng::uniform01(gen);
            if (u < 0.5 / kProjectionSparsity) {
                r(i, d) = amplitude;
            } else if (u < 1.0 / kProjectionSparsity) {
                r(i, d) = -amplitude;
            }
        }
    }

    // Degree-normalized weighted adjacency; zero-degree rows stay zero.
    Eigen::MatrixXd norm_adj = Eigen::MatrixXd::Zero(n, n);
    for (const Edge& e : g.edges()) {
        const int a = index.at(e.src);
        const int b = index.at(e.dst);
        norm_adj(a, b) = e.weight;
        if (!g.directed()) norm_adj(b, a) = e.weight;
    }
    for (int i = 0; i < n; ++i) {
        const double degree = norm_adj.row(i).sum();
        if (degree > 0.0) norm_adj.row(i) /= degree;
    }

    Eigen::MatrixXd iterate = std::move(r);
    Eigen::MatrixXd combined = Eigen::MatrixXd::Zero(n, dim);
    for (double w : iteration_weights) {
        iterate = norm_adj * iterate;
        normalize_rows(iterate);
        if (w != 0.0) combined += w * iterate;
    }

    EmbeddingSet out;
    out.node_ids = ids;
    out.dim = dim;
    out.vectors = std::move(combined);
    out.seed = seed;
    out.iteration_weights = std::move(iteration_weights);
    return out;
}

CosineScore cosine(const Eigen::Ref<const Eigen::VectorXd>& u,
                   const Eigen::Ref<const Eigen::VectorXd>& v) {
    if (u.size() != v.size()) throw DataError("cosine requires vectors of equal dimension");
    const double nu = u.norm();
    const double nv = v.norm();
    if (nu == 0.0 || nv == 0.0) return {0.0, true};
    return {u.dot(v) / (nu * nv), false};
}

std::string embeddings_csv_string(const EmbeddingSet& embeddings) {
    std::ostringstream out;
    out << "node_id";
    for (int d = 0; d < embeddings.dim; ++d) out << ",x_" << d;
    out << '\n';
    for (std::size_t i = 0; i < embeddings.node_ids.size(); ++i) {
        out << embeddings.node_ids[i];
        for (int d = 0; d < embeddings.dim; ++d) {
            out << ',' << fmt_double(embeddings.vectors(static_cast<Eigen::Index>(i), d));
        }
        out << '\n';
    }
    return out.str();
}

void write_embeddings_csv(const EmbeddingSet& embeddings, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path);
    out << embeddings_csv_string(embeddings);
}

EmbeddingSet read_embeddings_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("node_id", 0) != 0) {
        throw ParseError(path, 1, "expected header \"node_id,x_0,...\"");
    }
    const int dim = static_cast<int>(std::count(line.begin(), line.end(), ','));
    if (dim < 1) throw ParseError(path, 1, "no embedding columns");

    std::vector<int> ids;
    std::vector<double> flat;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string field;
        if (!std::getline(ls, field, ',')) {
            throw ParseError(path, lineno, "missing node id");
        }
        try {
            ids.push_back(std::stoi(field));
        } catch (const std::exception&) {
            throw ParseError(path, lineno, "bad node id \"" + field + "\"");
        }
        int count = 0;
        while (std::getline(ls, field, ',')) {
            try {
                flat.push_back(std::stod(field));
            } catch (const std::exception&) {
                throw ParseError(path, lineno, "bad value \"" + field + "\"");
            }
            ++count;
        }
        if (count != dim) {
            throw ParseError(path, lineno, "expected " + std::to_string(dim) + " values");
        }
    }

    EmbeddingSet out;
    out.node_ids = std::move(ids);
    out.dim = dim;
    out.vectors = Eigen::MatrixXd(out.node_ids.size(), dim);
    for (std::size_t i = 0; i < out.node_ids.size(); ++i) {
        for (int d = 0; d < dim; ++d) {
            out.vectors(static_cast<Eigen::Index>(i), d) = flat[i * dim + d];
        }
    }
    return out;
}

}  // namespace quop
