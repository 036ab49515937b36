#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace phishvote {

// Deterministic 64-bit generator (splitmix64). The standard engines are
// portable but the distributions layered on them are implementation-defined;
// every artifact this project emits must be byte-identical across toolchains,
// so draws are produced here instead.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound), unbiased via rejection. bound must be > 0.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  std::uint64_t state_;
};

/// FNV-1a over the raw bytes of `text`.
inline std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

/// Order-sensitive combination of two 64-bit hashes.
inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
  SplitMix64 g(a ^ (b + 0x9E3779B97F4A7C15ULL + (a << 6) + (a >> 2)));
  return g.next();
}

/// In-place Fisher-Yates shuffle driven by the supplied generator.
template <typename T>
void seeded_shuffle(std::vector<T>& items, SplitMix64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.next_below(i));
    using std::swap;
    swap(items[i - 1], items[j]);
  }
}

}  // namespace phishvote
