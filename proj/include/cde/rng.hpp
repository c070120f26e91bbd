#pragma once

#include <cstdint>
#include <initializer_list>

namespace cde {

/// splitmix64: fixed-increment 64-bit generator with an avalanche finalizer
/// (public domain, Vigna). Chosen because seeding is a single word, streams
/// are cheap to derive, and the algorithm is simple enough to name in output
/// headers so experiments stay auditable.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  constexpr bool next_bool() { return next() & 1u; }

  /// Uniform in [0, bound) by rejection; bound must be positive.
  constexpr std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t x = next();
      if (x >= threshold) return x % bound;
    }
  }

 private:
  std::uint64_t state_;
};

/// Identifier recorded in experiment output.
inline constexpr const char* kRngAlgorithmId = "splitmix64";

/// Collapses (master seed, coordinates...) into one stream seed by chaining
/// the splitmix64 finalizer over the parts. Gives every Monte-Carlo trial an
/// independent generator, so execution order and worker count cannot change
/// results.
constexpr std::uint64_t derive_seed(std::uint64_t master,
                                    std::initializer_list<std::uint64_t> parts) {
  std::uint64_t s = master;
  for (const std::uint64_t p : parts) {
    SplitMix64 mixer(s ^ (p + 0x9E3779B97F4A7C15ULL));
    s = mixer.next();
  }
  return s;
}

}  // namespace cde
