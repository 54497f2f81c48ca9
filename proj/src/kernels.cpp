#include "quop/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "quop/errors.hpp"
#include "quop/rng.hpp"

namespace quop {

namespace {

void check_dims(const NodeUnitary& uk, const NodeUnitary& uj) {
    if (uk.matrix.rows() != uj.matrix.rows()) {
        throw DataError("kernel requires unitaries of equal dimension (same batch padsize)");
    }
}

// Fraction of successes over `shots` Bernoulli(p) draws.
double sample_frequency(double p, int shots, std::uint64_t stream_seed) {
    std::mt19937_64 gen(stream_seed);
    int hits = 0;
    for (int s = 0; s < shots; ++s) {
        if (rng::bernoulli(gen, p)) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(shots);
}

double binomial_stderr(double v, int shots) {
    return std::sqrt(std::max(v * (1.0 - v), 0.0) / static_cast<double>(shots));
}

void check_sampled(const KernelConfig& cfg) {
    if (cfg.shots < 1) throw DataError("sampled mode requires shots >= 1");
}

}  // namespace

double state_overlap_sq(const NodeUnitary& uk, const NodeUnitary& uj) {
    check_dims(uk, uj);
    // Identical operators overlap exactly; skip the rounding of the column
    // dot product so self-similarity is 1 with no epsilon.
    if (&uk == &uj || (uk.anchor == uj.anchor && uk.matrix == uj.matrix)) {
        return 1.0;
    }
    // <0|U_j^dagger U_k|0> only involves the first columns.
    const std::complex<double> amp = uj.matrix.col(0).dot(uk.matrix.col(0));
    return std::clamp(std::norm(amp), 0.0, 1.0);
}

SimilarityScore fidelity_exact(const NodeUnitary& uk, const NodeUnitary& uj) {
    return {state_overlap_sq(uk, uj), std::nullopt, std::nullopt};
}

SimilarityScore fidelity_sampled(const NodeUnitary& uk, const NodeUnitary& uj,
                                 const KernelConfig& cfg) {
    check_sampled(cfg);
    const double f = state_overlap_sq(uk, uj);
    const double est =
        sample_frequency(f, cfg.shots, rng::pair_stream_seed(cfg.seed, uk.anchor, uj.anchor));
    return {est, std::nullopt, binomial_stderr(est, cfg.shots)};
}

SimilarityScore swap_test(const NodeUnitary& uk, const NodeUnitary& uj,
                          const KernelConfig& cfg) {
    const double f = state_overlap_sq(uk, uj);
    const double p0 = 0.5 * (1.0 + f);
    SimilarityScore score;
    if (cfg.mode == Mode::exact) {
        score.raw_p0 = p0;
        score.value = 2.0 * p0 - 1.0;
    } else {
        check_sampled(cfg);
        const double p0_hat =
            sample_frequency(p0, cfg.shots, rng::pair_stream_seed(cfg.seed, uk.anchor, uj.anchor));
        score.raw_p0 = p0_hat;
        score.value = 2.0 * p0_hat - 1.0;
        if (cfg.clamp) score.value = std::clamp(score.value, 0.0, 1.0);
        score.stderr_estimate = 2.0 * binomial_stderr(p0_hat, cfg.shots);
    }
    return score;
}

SimilarityScore evaluate_kernel(const NodeUnitary& uk, const NodeUnitary& uj,
                                const KernelConfig& cfg) {
    if (cfg.kernel == Kernel::swap_test) {
        return swap_test(uk, uj, cfg);
    }
    return cfg.mode == Mode::exact ? fidelity_exact(uk, uj) : fidelity_sampled(uk, uj, cfg);
}

}  // namespace quop
