#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace csaf {

// std::mt19937_64 output is fixed by the standard; the distributions in <random> are not,
// so every draw used for generated content goes through these helpers.

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

/// Uniform double in [0, 1) with 53 bits of entropy.
double uniform01(Rng& rng);

/// Uniform double in [lo, hi).
double uniform(Rng& rng, double lo, double hi);

/// Uniform integer in [0, n) by rejection sampling. n must be > 0.
std::uint64_t uniform_index(Rng& rng, std::uint64_t n);

template <typename T> void shuffle(std::span<T> items, Rng& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(uniform_index(rng, i));
        using std::swap;
        swap(items[i - 1], items[j]);
    }
}

} // namespace csaf
