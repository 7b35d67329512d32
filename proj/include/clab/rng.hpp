#pragma once

#include <cstdint>
#include <random>

namespace clab {

// PRNG used everywhere: std::mt19937_64, whose output sequence is fixed by
// the standard. Floating-point draws go through the explicit mappings below
// instead of std::uniform_real_distribution, whose output is
// implementation-defined.

inline std::uint64_t splitmix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/** Per-sample seed derivation, stable across worker counts. */
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index)
{
    return splitmix64(master ^ splitmix64(index + 1));
}

/** Uniform in [0, 1) with 53-bit resolution. */
inline double rng_uniform01(std::mt19937_64& g)
{
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

/** Uniform in [-1, 1). */
inline double rng_uniform_sym(std::mt19937_64& g)
{
    return 2.0 * rng_uniform01(g) - 1.0;
}

} // namespace clab
