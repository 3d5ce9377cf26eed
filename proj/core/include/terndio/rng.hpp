#pragma once

#include <cstdint>

namespace terndio {

/// Counter-based generator. value(seed, stream, i) depends only on its
/// arguments, so draws can be taken in any order and on any thread.
/// The algorithm is specified in docs/rng.md.
std::uint64_t splitmix64_mix(std::uint64_t z);
std::uint64_t counter_u64(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

/// Uniform double in [0, 1) with 53 random bits.
double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

/// Uniform on [lo, hi).
double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index, double lo,
                       double hi);

/// Named streams so independent draws never share counters.
enum RngStream : std::uint64_t {
  kStreamAlpha2 = 1,
  kStreamAlpha3 = 2,
  kStreamBootstrap = 3,
  kStreamTest = 4,
  kStreamSupportSample = 5,
};

}  // namespace terndio
