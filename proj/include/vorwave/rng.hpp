#ifndef VORWAVE_RNG_HPP
#define VORWAVE_RNG_HPP

#include <cstdint>
#include <random>

namespace vorwave {

// Seeded uniform generator with byte-identical streams across toolchains:
// draws use raw mt19937_64 output, never std::uniform_real_distribution,
// whose rounding is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1), 53 random bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  // Uniform integer in [0, n).
  std::uint64_t index(std::uint64_t n) { return engine_() % n; }

  // +1.0 or -1.0 with equal probability.
  double sign() { return (engine_() & 1u) ? 1.0 : -1.0; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace vorwave

#endif
