#pragma once

#include <cstdint>

#include <Eigen/Dense>

// Independent verification routes used only by tests. Nothing here may call
// into the spectral code paths it is checking.
namespace quop::testing {

// exp(-i H) by scaling-and-squaring over the truncated power series: halve
// until the max row-sum norm is <= 0.5, sum terms until they stagnate at
// machine precision, then square back up.
Eigen::MatrixXcd expm_taylor_oracle(const Eigen::MatrixXcd& hermitian);

// Dense random Hermitian matrix with entries in [-1, 1]; deterministic per
// seed.
Eigen::MatrixXcd random_hermitian(int dim, std::uint64_t seed);

// Zero-diagonal real matrix with entries in [-1, 1] (a directed weighted
// adjacency); deterministic per seed.
Eigen::MatrixXd random_zero_diag(int dim, std::uint64_t seed);

// Fidelity circuit run literally: |0..0> through u_k then u_j^dagger, then
// the probability of the all-zeros outcome.
double fidelity_circuit_p_all_zeros(const Eigen::MatrixXcd& uk, const Eigen::MatrixXcd& uj);

// SWAP-test circuit on 2m+1 qubits run literally as a statevector program:
// registers prepared by u_k and u_j, ancilla Hadamard, controlled-SWAP,
// Hadamard, ancilla-zero marginal.
double swap_circuit_p0(const Eigen::MatrixXcd& uk, const Eigen::MatrixXcd& uj);

}  // namespace quop::testing
