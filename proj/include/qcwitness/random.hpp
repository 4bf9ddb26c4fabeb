#pragma once

#include <cstdint>
#include <random>

#include "qcwitness/types.hpp"

namespace qcw {

using Rng = std::mt19937_64;

/// Mixes a base seed with a stream index (splitmix64 finalizer). Used to give
/// every parallel work item its own reproducible stream.
constexpr Seed derive_seed(Seed base, std::uint64_t index) noexcept {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline Rng make_stream(Seed base, std::uint64_t index) {
    return Rng(derive_seed(base, index));
}

} // namespace qcw
