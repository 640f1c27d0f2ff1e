#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace cliqueprobe {

// SplitMix64 finalizer; the basis for all per-pair and per-trial
// randomness so that answers never depend on query order.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Derive an independent stream seed from a base seed and up to two tags.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag_a,
                                    std::uint64_t tag_b = 0) noexcept {
    return mix64(mix64(base ^ mix64(tag_a)) ^ mix64(tag_b));
}

// Fair coin for the normalized pair (i < j), order independent.
constexpr bool pair_coin(std::uint64_t seed, int i, int j) noexcept {
    const std::uint64_t key =
        (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 32) |
        static_cast<std::uint32_t>(j);
    return (derive_seed(seed, 0x70616972ULL, key) & 1ULL) != 0;
}

// Uniform k-subset of [1..n], sorted; partial Fisher-Yates driven by a
// fully derived seed.
inline std::vector<int> uniform_subset(int n, int k, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i + 1;
    for (int i = 0; i < k; ++i) {
        std::uniform_int_distribution<int> dist(i, n - 1);
        std::swap(pool[i], pool[dist(rng)]);
    }
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
}

}  // namespace cliqueprobe
