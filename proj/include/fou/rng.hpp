#pragma once

#include <cstdint>

namespace fou {

/// Counter-based splittable generator built on the SplitMix64 mixer.
///
/// Output i of a stream is a pure function of (key, i), so draws are
/// reproducible bit-for-bit regardless of scheduling, and disjoint streams
/// are derived by hashing (base_seed, purpose_tag, index).
class RngStream {
 public:
  explicit RngStream(std::uint64_t key) : key_(key) {}

  /// Stream derivation: hash the triple so that replication order and
  /// purpose never collide.
  static RngStream derive(std::uint64_t base_seed, std::uint64_t purpose_tag,
                          std::uint64_t index) {
    std::uint64_t k = mix(base_seed ^ mix(purpose_tag ^ mix(index)));
    return RngStream(k);
  }

  std::uint64_t next_u64() { return mix(key_ + (++counter_) * kGamma); }

  /// Uniform on (0,1), 53-bit mantissa, never exactly 0.
  double uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal via the trigonometric Box-Muller transform.
  /// Deterministic given the stream position; the pair's second value is cached.
  double normal();

  std::uint64_t key() const { return key_; }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

  static std::uint64_t mix(std::uint64_t z) {
    z += kGamma;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace fou
