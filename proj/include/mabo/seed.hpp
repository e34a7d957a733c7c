#pragma once

#include <cstdint>

namespace mabo {

// splitmix64 step; good enough mixing to split one user seed into many
// independent engine seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic sub-seed for stream `stream` of a base seed. Used to give
// every agent (and every purpose within an agent) its own RNG stream.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t s = base;
    splitmix64(s);
    s ^= 0x9e3779b97f4a7c15ULL * (stream + 1);
    splitmix64(s);
    return splitmix64(s);
}

}  // namespace mabo
