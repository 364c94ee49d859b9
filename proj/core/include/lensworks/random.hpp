#ifndef LENSWORKS_RANDOM_HPP
#define LENSWORKS_RANDOM_HPP

#include <cstdint>
#include <random>
#include <string>

namespace lensworks {

/// Seedable deterministic generator used by every stochastic operation.
///
/// The raw stream is std::mt19937_64, whose output sequence is fixed by the
/// standard, so trajectories replay bit-for-bit across builds and platforms.
/// Standard-library distributions are NOT used (their mapping is
/// implementation-defined); uniforms are derived from raw 64-bit draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  /// Generator identity serialized alongside every output for replayability.
  static constexpr const char* name() { return "mt19937_64"; }

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0,1) with 53 bits of precision.
  double next_double() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  bool next_bit() { return (engine_() & 1u) != 0; }

  /// Derives an independent stream seed (splitmix64 finalizer), used for
  /// per-partition streams in the Monte-Carlo estimator.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
};

}  // namespace lensworks

#endif  // LENSWORKS_RANDOM_HPP
