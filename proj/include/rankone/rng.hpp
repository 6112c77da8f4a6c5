#pragma once

#include <cstdint>

namespace rankone {

// Deterministic splitmix64 generator. std:: distributions are
// implementation-defined, so reports built on this stay byte-identical
// across platforms and across serial/parallel runs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0,1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // derive an independent stream, e.g. one per verification case
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
    Rng r(seed ^ (0x2545f4914f6cdd1dULL * (index + 1)));
    return r.next_u64();
  }

 private:
  std::uint64_t state_;
};

}  // namespace rankone
