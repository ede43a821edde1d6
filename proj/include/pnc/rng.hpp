#pragma once

#include <bit>
#include <cstdint>
#include <random>

namespace pnc::rng {

// SplitMix64 finalizer (full 64-bit avalanche).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Derives an independent stream seed from a base seed and two stream keys.
// Streams are a pure function of (seed, key_a, key_b); no global state.
constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t key_a,
                                    std::uint64_t key_b) noexcept {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ key_a);
  h = mix64(h ^ key_b);
  return h;
}

inline std::uint64_t key_from(double v) noexcept {
  return std::bit_cast<std::uint64_t>(v);
}

using Engine = std::mt19937_64;

inline Engine make_stream(std::uint64_t seed, std::uint64_t key_a,
                          std::uint64_t key_b) {
  return Engine(stream_seed(seed, key_a, key_b));
}

}  // namespace pnc::rng
