#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "quop/graph.hpp"
#include "quop/kernels.hpp"

namespace quop {

// All-pairs similarity over a node batch, with the run parameters echoed so
// an output is self-describing.
struct SimilarityMatrix {
    std::vector<int> node_ids;
    Eigen::MatrixXd values;  // full symmetric; diagonal holds self-scores
    KernelConfig config;
    int hops = 1;
    std::complex<double> alpha{0.0, 1.0};
};

struct PipelineOptions {
    // Extra nodes whose ego sizes enter the padded-dimension computation.
    // Exact scores cannot depend on this (padding commutes with the
    // exponential); it exists to mirror runs that padded against the whole
    // graph rather than the scored subset.
    std::optional<std::vector<int>> padding_batch;
    int jobs = 1;
};

// Dimension cap for a single node operator; beyond this the dense
// statevector pipeline stops being desk-scale.
inline constexpr int kMaxPaddedDim = 64;

SimilarityMatrix quop_pairwise(const WeightedGraph& g, const std::vector<int>& nodes,
                               int hops, const HermAdjParam& alpha, const KernelConfig& cfg,
                               const PipelineOptions& opts = {});

// Renames node ids through a bijection; topology and weights are untouched.
WeightedGraph relabel_graph(const WeightedGraph& g,
                            const std::unordered_map<int, int>& perm);

// Dense symmetric matrix for rendering; lower triangle mirrored from upper.
Eigen::MatrixXd heatmap_matrix(const SimilarityMatrix& sim);

// "i,j,score" rows for the upper triangle including the diagonal.
std::string similarity_csv_string(const SimilarityMatrix& sim);
void write_similarity_csv(const SimilarityMatrix& sim, const std::string& path);

std::string similarity_json_string(const SimilarityMatrix& sim);
void write_similarity_json(const SimilarityMatrix& sim, const std::string& path);

// Reads a pair-scores CSV back into labels plus a full symmetric matrix.
struct PairScores {
    std::vector<int> node_ids;
    Eigen::MatrixXd values;
};
PairScores read_similarity_csv(const std::string& path);

}  // namespace quop
