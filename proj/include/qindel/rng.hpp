#pragma once

// Deterministic seed derivation. Every stochastic step in the pipeline draws
// from a seed derived via splitmix64 from (master seed, stream tag, counter),
// so independent runs with the same master seed reproduce byte-identical
// results regardless of thread scheduling.

#include <cstdint>
#include <string_view>

namespace qindel {

// classic splitmix64 step: advances the state and returns a mixed output
constexpr std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// FNV-1a over the tag, then splitmix over (master, tag hash, counter)
constexpr std::uint64_t derive_seed(std::uint64_t master, std::string_view stream_tag,
                                    std::uint64_t counter) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : stream_tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  std::uint64_t state = master;
  std::uint64_t s1 = splitmix64(state);
  state = s1 ^ h;
  std::uint64_t s2 = splitmix64(state);
  state = s2 ^ counter;
  return splitmix64(state);
}

// one uniform double in [0, 1) from a seed, 53 mantissa bits
inline double uniform_unit(std::uint64_t seed) {
  std::uint64_t state = seed;
  return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

}  // namespace qindel
