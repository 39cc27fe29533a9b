#pragma once

#include <cstdint>

namespace lorcomp {

// SplitMix64. Used for all sampling so that runs are reproducible from a
// single seed and independent substreams can be derived per work item,
// which keeps results identical under any worker count.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

  // Uniform integer in [0, n).
  uint64_t below(uint64_t n) { return next_u64() % n; }

 private:
  uint64_t state_;
};

// Deterministic substream for item `id` under `seed`; `salt` separates
// independent draws for the same item (vertices vs. pair offsets, etc.).
inline Rng substream(uint64_t seed, uint64_t id, uint64_t salt = 0) {
  Rng mixer(seed ^ (0xd1342543de82ef95ULL * (id + 1)) ^
            (0xaf251af3b0f025b5ULL * (salt + 1)));
  uint64_t s = mixer.next_u64();
  return Rng(s);
}

}  // namespace lorcomp
