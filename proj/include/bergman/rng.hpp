#pragma once

#include <cstdint>

namespace bergman {

/// SplitMix64 finalizer; a bijection on 64-bit words with good avalanche.
[[nodiscard]] constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed of the independent stream for (master, index). Streams depend only on
/// the pair, never on which thread or in which order they are consumed.
[[nodiscard]] constexpr std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return splitmix64(master ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

}  // namespace bergman
