#ifndef LMLKIT_RNG_HPP
#define LMLKIT_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace lml {

/// Master seed plus the rule for deriving independent child streams.
///
/// child(master, index) feeds master xor golden-ratio-scaled index through the
/// splitmix64 finalizer, so any two (master, index) pairs land in unrelated
/// regions of the state space. Identical pairs always produce the identical
/// stream, which is what makes replicate-level parallelism safe.
struct SeedSpec {
  std::uint64_t master = 0;
};

namespace detail {
inline std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace detail

/// Deterministic stream generator (splitmix64). Self-contained so that the
/// same seed yields the same stream on every build of this project.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static Rng child(SeedSpec seed, std::uint64_t index) {
    constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
    return Rng(detail::splitmix64_mix(seed.master ^ ((index + 1) * kGolden)));
  }

  /// Two-level derivation for nested replicate structure.
  static Rng child(SeedSpec seed, std::uint64_t index, std::uint64_t subindex) {
    Rng outer = child(seed, index);
    return child(SeedSpec{outer.state_}, subindex);
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return detail::splitmix64_mix(state_);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Unbiased integer in [0, n) by rejection.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = -n % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

  /// Standard normal via Box-Muller; generates pairs and caches the spare.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  /// Uniformly random permutation of {0, ..., n-1} (Fisher-Yates).
  std::vector<std::size_t> permutation(std::size_t n) {
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t i = n; i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(perm[i - 1], perm[j]);
    }
    return perm;
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace lml

#endif  // LMLKIT_RNG_HPP
