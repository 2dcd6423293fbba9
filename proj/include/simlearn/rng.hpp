#pragma once

#include <cmath>
#include <cstdint>

namespace simlearn {

/// Deterministic, platform-independent random stream (xoshiro256++ seeded via
/// splitmix64). std:: distributions are implementation-defined, so all
/// sampling goes through this type to keep reports byte-reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t s = seed;
    for (auto& word : state_) word = splitmix64(s);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller; the second value of each pair is cached.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * kPi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  /// +1 or -1 with equal probability.
  double sign() { return (next_u64() & 1u) ? 1.0 : -1.0; }

  /// Stateless mix of a seed with a stream index; used to derive per-step or
  /// per-trial seeds without correlated streams.
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed ^ (0x9E3779B97F4A7C15ULL * (index + 1));
    return splitmix64(s);
  }

 private:
  static constexpr double kPi = 3.141592653589793238462643383279502884;

  static std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

  std::uint64_t state_[4];
  double spare_ = 0.0;
  bool have_spare_ = false;
};

/// Work is split into fixed-size chunks and chunk `j` owns the sub-stream
/// seeded with `seed ^ j` (fresh generator per chunk). Because the chunk
/// boundaries do not depend on the thread count, concatenated output and
/// fixed-order chunk reductions are identical for 1 and N threads.
inline constexpr std::size_t kRngChunk = 4096;

inline Rng chunk_rng(std::uint64_t seed, std::size_t chunk_index) {
  return Rng(seed ^ static_cast<std::uint64_t>(chunk_index));
}

}  // namespace simlearn
