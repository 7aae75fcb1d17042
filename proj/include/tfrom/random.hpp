#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace tfrom {

// std::uniform_*_distribution output differs between standard libraries, so
// everything that must be reproducible from a seed goes through these helpers,
// which only consume raw std::mt19937_64 words.

using Rng = std::mt19937_64;

/// Unbiased integer in [0, bound). bound must be > 0.
std::uint64_t bounded(Rng& rng, std::uint64_t bound);

/// Double in (0, 1].
double unit_open_closed(Rng& rng);

/// Fisher-Yates permutation of 0..count-1.
std::vector<std::size_t> seeded_permutation(std::size_t count, std::uint64_t seed);

/// Stateless mixing of a base seed with up to two stream indices.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0);

}  // namespace tfrom
