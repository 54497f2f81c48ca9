#pragma once

#include <cstdint>
#include <optional>

#include "quop/linalg.hpp"

namespace quop {

enum class Kernel { fidelity, swap_test };
enum class Mode { exact, sampled };

struct KernelConfig {
    Kernel kernel = Kernel::fidelity;
    Mode mode = Mode::exact;
    int shots = 1000;           // sampled mode only
    std::uint64_t seed = 0;
    bool clamp = false;         // truncate sampled SWAP values into [0,1]
};

struct SimilarityScore {
    double value = 0.0;
    std::optional<double> raw_p0;           // SWAP test only
    std::optional<double> stderr_estimate;  // sampled mode only
};

// |<0...0| U_j^dagger U_k |0...0>|^2, clamped into [0,1] against rounding.
double state_overlap_sq(const NodeUnitary& uk, const NodeUnitary& uj);

SimilarityScore fidelity_exact(const NodeUnitary& uk, const NodeUnitary& uj);

// Estimates the fidelity as the all-zeros frequency over cfg.shots simulated
// measurements. The sample stream is derived from (cfg.seed, anchor ids), so
// results are reproducible and order-independent.
SimilarityScore fidelity_sampled(const NodeUnitary& uk, const NodeUnitary& uj,
                                 const KernelConfig& cfg);

// Ancilla-zero probability P0 = (1 + F)/2, reported back on the unit
// interval as value = 2*p0 - 1. Sampled estimates can dip below zero; they
// are reported raw unless cfg.clamp is set.
SimilarityScore swap_test(const NodeUnitary& uk, const NodeUnitary& uj,
                          const KernelConfig& cfg);

// Dispatch on cfg.kernel / cfg.mode.
SimilarityScore evaluate_kernel(const NodeUnitary& uk, const NodeUnitary& uj,
                                const KernelConfig& cfg);

}  // namespace quop
