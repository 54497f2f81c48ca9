#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "quop/graph.hpp"

namespace quop {

struct EmbeddingSet {
    std::vector<int> node_ids;
    int dim = 0;
    Eigen::MatrixXd vectors;  // |nodes| x dim, rows aligned with node_ids
    std::uint64_t seed = 0;
    std::vector<double> iteration_weights;
};

inline const std::vector<double> kDefaultIterationWeights{0.0, 0.0, 1.0, 3.0};

// Very sparse random projection (sparsity 3) followed by iterated
// propagation over the degree-normalized weighted adjacency with per-
// iteration L2 row normalization; output is the weighted sum of iterates.
// Deterministic per seed. Isolated nodes come out as zero vectors.
EmbeddingSet fastrp_embed(const WeightedGraph& g, int dim,
                          std::vector<double> iteration_weights, std::uint64_t seed);

struct CosineScore {
    double value = 0.0;
    bool zero_norm = false;  // set when either input had zero norm
};

// Normalized dot product; zero-norm inputs yield 0.0 with the flag set
// instead of dividing by zero.
CosineScore cosine(const Eigen::Ref<const Eigen::VectorXd>& u,
                   const Eigen::Ref<const Eigen::VectorXd>& v);

void write_embeddings_csv(const EmbeddingSet& embeddings, const std::string& path);
std::string embeddings_csv_string(const EmbeddingSet& embeddings);
EmbeddingSet read_embeddings_csv(const std::string& path);

}  // namespace quop
