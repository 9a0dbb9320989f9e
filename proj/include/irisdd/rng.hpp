#pragma once

// Seeded randomness with a platform-independent draw sequence. std::mt19937_64
// is fully specified by the standard; the standard distributions are not, so
// values are derived from raw engine output here.

#include <cstdint>
#include <random>

namespace irisdd {

using Engine = std::mt19937_64;

// Uniform double in [0, 1) from the top 53 bits of one draw.
inline double uniform_unit(Engine& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n), n > 0, by rejection on one or more draws.
inline std::uint64_t uniform_below(Engine& eng, std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x;
    do {
        x = eng();
    } while (x >= limit);
    return x % n;
}

}  // namespace irisdd
