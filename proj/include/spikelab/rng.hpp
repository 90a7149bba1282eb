#pragma once

#include <cstdint>
#include <random>

namespace spikelab {

// splitmix64; used to turn (seed, stream indices) into independent,
// reproducible generator seeds.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Deterministic per-(seed, trial) stream so parallel trials reproduce.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t a = 0,
                                   std::uint64_t b = 0) {
    return std::mt19937_64(mix64(mix64(mix64(seed) ^ a) ^ b));
}

}  // namespace spikelab
