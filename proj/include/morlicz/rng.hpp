#pragma once

#include <cstdint>
#include <span>
#include <utility>

namespace morlicz {

// Small deterministic generator (splitmix64). Chosen over the standard
// engines because std::uniform_int_distribution is not pinned by the
// standard, and the Monte-Carlo contract requires bit-identical streams
// for a given seed on every platform and under any parallel schedule.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1), 53 random bits.
  double next_unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // Unbiased draw from {0, ..., bound-1} by rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0ULL - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  std::uint64_t state_;
};

// Mixes a user seed with a stream index (trial number, instance number)
// into an independent-looking generator state. Counter-based: stream k can
// be opened without generating streams 0..k-1 first.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Fisher-Yates shuffle driven by SplitMix64.
template <typename T>
void shuffle(std::span<T> values, SplitMix64& g) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(g.next_below(i));
    std::swap(values[i - 1], values[j]);
  }
}

}  // namespace morlicz
