#pragma once

#include <cstdint>
#include <random>

namespace ecoroute {

using Rng = std::mt19937_64;

/// Independent stream for (master seed, index, purpose tag). Streams for
/// different indices do not depend on the order in which they are created.
inline Rng make_stream(std::uint64_t master_seed, std::uint64_t index, std::uint64_t tag = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                      static_cast<std::uint32_t>(tag), 0x9e3779b9u};
    return Rng(seq);
}

/// Uniform double in [0,1) with 53 random bits.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace ecoroute
