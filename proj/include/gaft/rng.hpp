#pragma once

#include <cstdint>

namespace gaft {

// SplitMix64. Reports must be byte-identical across platforms for a given
// seed, so the generator is pinned here instead of using std::mt19937 whose
// distributions are not portable.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0,1), 53-bit mantissa
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // uniform in [-1,1)
  double symmetric() { return 2.0 * uniform() - 1.0; }

  // uniform integer in [0, bound)
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

 private:
  std::uint64_t state_;
};

}  // namespace gaft
