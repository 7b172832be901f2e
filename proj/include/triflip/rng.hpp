#pragma once
// Reproducible randomness: a named fixed algorithm (std::mt19937_64,
// whose output sequence the standard pins down exactly) plus unbiased
// helpers implemented here so that results do not depend on the standard
// library's distribution implementations.

#include <cstdint>
#include <random>

namespace triflip {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // uniform on [0, m), unbiased via rejection
  std::uint64_t below(std::uint64_t m) {
    const std::uint64_t limit = m == 0 ? 0 : (0 - m) % m;  // 2^64 mod m
    for (;;) {
      const std::uint64_t r = engine_();
      if (r >= limit) return r % m;
    }
  }

  // uniform on [0,1) with 53 random bits
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline std::uint64_t replica_seed(std::uint64_t base, std::uint64_t index) {
  return splitmix64(base + 0x9E3779B97F4A7C15ull * (index + 1));
}

}  // namespace triflip
