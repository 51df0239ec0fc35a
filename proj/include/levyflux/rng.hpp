#pragma once

#include <cstdint>
#include <random>

namespace levyflux {

// Documented default seed used by the CLI when --seed is not given.
inline constexpr std::uint64_t kDefaultSeed = 0x5EEDC0DEull;

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Counter-based seeding: the engine for sample `index` depends only on
// (seed, index), so estimates are identical however samples are partitioned
// across workers.
inline std::mt19937_64 sample_engine(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s);
    s ^= index * 0xD1342543DE82EF95ull + 0x2545F4914F6CDD1Dull;
    std::uint64_t b = splitmix64(s);
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    return std::mt19937_64(seq);
}

} // namespace levyflux
