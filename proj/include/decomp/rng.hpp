#pragma once

#include <cstdint>

namespace decomp {

// splitmix64 generator. The standard <random> distributions are not
// bit-identical across standard library implementations, and seeded runs here
// must reproduce the same bytes on every platform, so sampling is done by
// hand on top of a fixed algorithm.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform draw from [0, n), unbiased via rejection. n must be >= 1.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  // Uniform draw from [lo, hi], inclusive on both ends.
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(
                    below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  // Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Independent child seed for stream `index` of a run seeded with `seed`.
  // Used to give e.g. each search restart its own reproducible stream.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
    Rng r(seed ^ (0xd1342543de82ef95ULL * (index + 1)));
    return r.next();
  }

 private:
  std::uint64_t state_;
};

}  // namespace decomp
