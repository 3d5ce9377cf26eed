#include "terndio/rng.hpp"

namespace terndio {

namespace {
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kStreamMul = 0xD1B54A32D192ED03ULL;
}  // namespace

std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t counter_u64(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::uint64_t key = splitmix64_mix(seed ^ (stream * kStreamMul));
  return splitmix64_mix(key + (index + 1) * kGamma);
}

double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return static_cast<double>(counter_u64(seed, stream, index) >> 11) * 0x1.0p-53;
}

double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index, double lo,
                       double hi) {
  return lo + (hi - lo) * counter_uniform(seed, stream, index);
}

}  // namespace terndio
