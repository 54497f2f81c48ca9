#pragma once

#include <complex>

#include <Eigen/Dense>

#include "quop/graph.hpp"

namespace quop {

struct EighResult {
    Eigen::VectorXd eigenvalues;    // ascending
    Eigen::MatrixXcd eigenvectors;  // orthonormal columns
};

// Spectral decomposition of a Hermitian matrix. Rejects non-Hermitian input
// (max deviation above 1e-10) and reports solver non-convergence instead of
// returning garbage.
EighResult eigh(const Eigen::MatrixXcd& hermitian);

// exp(-i H) for Hermitian H, computed as V diag(exp(-i lambda_j)) V^dagger.
Eigen::MatrixXcd expm_neg_i(const Eigen::MatrixXcd& hermitian);

// The operator representing one node: exp(-i A) of its padded local
// adjacency. Zero-trace generators land in the special unitary group, so
// det stays pinned at 1.
struct NodeUnitary {
    int anchor = 0;
    Eigen::MatrixXcd matrix;
    std::complex<double> det{1.0, 0.0};  // product of exp(-i lambda_j)
};

NodeUnitary node_unitary(const LocalHermitian& generator);

// max-entry norm of U^dagger U - I.
double unitarity_defect(const Eigen::MatrixXcd& u);

// max-entry norm of M - M^dagger.
double hermiticity_defect(const Eigen::MatrixXcd& m);

}  // namespace quop
