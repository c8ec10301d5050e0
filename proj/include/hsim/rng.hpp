#pragma once

#include <cstdint>
#include <random>

namespace hsim {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based seed derivation: reproducible and order-independent, so
/// shots can be distributed over any number of workers.
inline uint64_t mix_seed(uint64_t base, uint64_t counter) {
  return splitmix64(base ^ splitmix64(counter + 0x51ed2701a9b1d34dULL));
}

/// Deterministic random stream. mt19937_64 output is fixed by the standard,
/// and all derived draws below use explicitly specified algorithms, so equal
/// seeds give bit-identical streams on every platform.
class RngStream {
 public:
  explicit RngStream(uint64_t seed) : eng_(seed) {}

  uint64_t next() { return eng_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  /// Unbiased uniform integer in [0, k).
  uint64_t below(uint64_t k) {
    const uint64_t limit = UINT64_MAX - UINT64_MAX % k;
    uint64_t r;
    do {
      r = eng_();
    } while (r >= limit);
    return r % k;
  }

  int pick_sign() { return uniform() < 0.5 ? 1 : -1; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace hsim
