#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

namespace quop {

struct Edge {
    int src;
    int dst;
    double weight;
};

// Immutable weighted graph over integer node ids. Construction validates and
// canonicalizes: node ids unique and sorted, edge endpoints listed, no
// self-loops, no duplicate (src,dst) entries (for undirected graphs (u,v) and
// (v,u) count as the same entry and are stored with src < dst). Edges are
// sorted by (src,dst), so equal graphs serialize identically.
class WeightedGraph {
  public:
    WeightedGraph(bool directed, std::vector<int> nodes, const std::vector<Edge>& edges);

    bool directed() const { return directed_; }
    const std::vector<int>& nodes() const { return nodes_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    bool has_node(int id) const { return index_.count(id) != 0; }

    // Stored adjacency weight u -> v, 0 if no such edge. For undirected
    // graphs weight(u,v) == weight(v,u).
    double weight(int u, int v) const;

    // Neighbors of u ignoring edge direction, ascending by id.
    const std::vector<int>& undirected_neighbors(int u) const;

  private:
    int index_of(int id) const;

    bool directed_;
    std::vector<int> nodes_;
    std::unordered_map<int, int> index_;
    std::vector<Edge> edges_;
    // out_[i]: (dense target index, weight), sorted; undirected graphs store
    // both directions here.
    std::vector<std::vector<std::pair<int, double>>> out_;
    std::vector<std::vector<int>> und_neighbors_;
};

// G(n, p) with independent edge coin flips per unordered pair and uniform
// weights in the open interval (0,1). Identical (n, p, seed) give identical
// graphs byte-for-byte.
WeightedGraph erdos_renyi_weighted(int n, double p, std::uint64_t seed);

// Zachary's karate club (34 nodes, 78 edges) with the interaction-count
// weights rescaled to w * pi / 6 (original maximum weight 6 maps to pi).
WeightedGraph karate_club();

// The embedded fixture with the original integer weights.
const std::vector<Edge>& karate_club_raw_edges();

enum class GraphFormat { json, edgelist };

struct LoadOptions {
    GraphFormat format = GraphFormat::json;
    bool directed = false;        // edgelist only; JSON carries its own flag
    bool normalize = false;       // divide weights by the maximum weight
};

WeightedGraph load_graph(const std::string& path, const LoadOptions& opts);
void save_graph_json(const WeightedGraph& g, const std::string& path);
std::string graph_json_string(const WeightedGraph& g);

// All nodes at undirected shortest-path distance <= hops from v, ascending by
// id; always contains v.
std::vector<int> ego_nodes(const WeightedGraph& g, int v, int hops);

struct LocalAdjacency {
    Eigen::MatrixXd matrix;      // zero diagonal; rows follow `ordering`
    std::vector<int> ordering;   // ego nodes, ascending global id
};

// Adjacency of the induced ego subgraph of v: entry (i,j) is the stored
// weight ordering[i] -> ordering[j].
LocalAdjacency local_adjacency(const WeightedGraph& g, int v, int hops);

// Hermitian-adjacency parameter alpha = a + bi with |alpha| = 1 and a >= 0.
class HermAdjParam {
  public:
    explicit HermAdjParam(std::complex<double> alpha);

    std::complex<double> value() const { return alpha_; }

    // alpha = i, the classical Hermitian-adjacency choice.
    static HermAdjParam default_param() { return HermAdjParam({0.0, 1.0}); }

  private:
    std::complex<double> alpha_;
};

// Entry (i,j) stays m(i,j) when m(i,j) == m(j,i) exactly; otherwise it
// becomes m(i,j)*alpha + m(j,i)*conj(alpha). Symmetric real input is
// returned unchanged; the output is always Hermitian.
Eigen::MatrixXcd herm_adj(const Eigen::MatrixXd& m, const HermAdjParam& alpha);

// A node's Hermitian local adjacency before batch padding.
struct LocalHermitianSeed {
    int anchor = 0;
    int hops = 1;
    std::vector<int> ordering;
    Eigen::MatrixXcd matrix;     // original_dim x original_dim
};

LocalHermitianSeed make_local_hermitian(const WeightedGraph& g, int v, int hops,
                                        const HermAdjParam& alpha);

// Padded, batch-aligned Hermitian generator for one node.
struct LocalHermitian {
    int anchor = 0;
    int hops = 1;
    std::vector<int> ordering;
    int original_dim = 0;
    int padded_dim = 0;
    Eigen::MatrixXcd matrix;     // padded_dim x padded_dim, zeros past original_dim
};

// Common padded dimension for a batch: 2^ceil(log2(max dim)), floored at 2.
int padded_dimension(const std::vector<int>& dims);

// Zero-pads every matrix in the batch to the common power-of-two size.
std::vector<LocalHermitian> pad_batch(const std::vector<LocalHermitianSeed>& seeds);

}  // namespace quop
