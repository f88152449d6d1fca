#pragma once

#include <cstdint>
#include <random>

namespace jddgen {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seeded source of uniform draws for the chain.
///
/// Engine: std::mt19937_64, seeded with splitmix64(seed) so that adjacent
/// seeds start from unrelated states. Bounded draws use rejection on the top
/// of the 64-bit output rather than std::uniform_int_distribution, so a seed
/// yields the same sequence under every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  /// Uniform in [0, bound). bound must be positive.
  std::uint64_t index(std::uint64_t bound) {
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t draw;
    do {
      draw = engine_();
    } while (draw >= limit);
    return draw % bound;
  }

  bool coin() { return (engine_() >> 63) != 0; }

  /// Uniform in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace jddgen
