#ifndef ODT_RNG_HPP
#define ODT_RNG_HPP

#include <cstdint>

namespace odt {

/// Deterministic 64-bit generator (splitmix64). All randomized generation
/// goes through this so a seed yields byte-identical output everywhere; the
/// <random> distributions are implementation-defined and would not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

  /// Uniform double in the open interval (0, 1).
  double next_open01() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

  /// Uniform double in [lo, hi].
  double next_range(double lo, double hi) { return lo + (hi - lo) * next_open01(); }

 private:
  std::uint64_t state_;
};

/// Derives an independent seed for substream k of a base seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t k) {
  return Rng(seed ^ 0xd1342543de82ef95ULL * (k + 1)).next_u64();
}

}  // namespace odt

#endif  // ODT_RNG_HPP
