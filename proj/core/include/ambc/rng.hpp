#pragma once

#include <cstdint>
#include <random>

namespace ambc::mc
{

/// SplitMix64 finalizer; a bijective 64-bit mixer.
constexpr std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed of the independent substream owned by one trial. Depends only on
/// (master_seed, index), never on scheduling.
constexpr std::uint64_t substream_seed(std::uint64_t master_seed, std::uint64_t index)
{
    return splitmix64(splitmix64(master_seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

using Engine = std::mt19937_64;

inline Engine make_substream(std::uint64_t master_seed, std::uint64_t index)
{
    return Engine{substream_seed(master_seed, index)};
}

}  // namespace ambc::mc
