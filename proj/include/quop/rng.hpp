#pragma once

#include <cstdint>
#include <random>

namespace quop::rng {

// SplitMix64 step; used to whiten seeds and derive independent streams.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    return splitmix64(a ^ splitmix64(b));
}

// Stream seed for an unordered node pair, so that evaluating (a,b) and (b,a)
// draws the same samples regardless of evaluation order or thread placement.
inline std::uint64_t pair_stream_seed(std::uint64_t seed, int a, int b) {
    if (a > b) std::swap(a, b);
    return mix(mix(seed, static_cast<std::uint64_t>(static_cast<std::int64_t>(a))),
               static_cast<std::uint64_t>(static_cast<std::int64_t>(b)));
}

// Uniform double in [0, 1) from the top 53 bits of the engine output.
// Avoids std::uniform_real_distribution so sequences are identical across
// standard library implementations.
inline double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(std::mt19937_64& gen, double p) {
    return uniform01(gen) < p;
}

}  // namespace quop::rng
