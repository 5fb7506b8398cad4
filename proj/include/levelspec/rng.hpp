#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace levelspec {

//! Derives an independent 64-bit seed for a named stage from a root seed
//! (splitmix64 finalizer over root ^ stream).
constexpr std::uint64_t
derive_seed(std::uint64_t root, std::uint64_t stream)
{
  std::uint64_t z = root + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

//! Seeded generator with a platform-stable stream.
//!
//! The engine is mt19937_64, whose output sequence is fixed by the standard.
//! The standard library distributions are not (their algorithms are
//! implementation defined), so the variates below are derived by hand.
class Rng
{
public:
  explicit Rng(std::uint64_t seed)
    : engine_(seed)
  {}

  std::uint64_t next_u64() { return engine_(); }

  //! Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  //! Uniform integer in [0, bound) by rejection (no modulo bias).
  std::uint64_t below(std::uint64_t bound)
  {
    const std::uint64_t limit = ~std::uint64_t{ 0 } - (~std::uint64_t{ 0 } % bound);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  //! Standard normal via the Marsaglia polar method.
  double normal()
  {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double scale = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * scale;
    has_spare_ = true;
    return u * scale;
  }

  double normal(double mean, double sd) { return mean + sd * normal(); }

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

} // namespace levelspec
