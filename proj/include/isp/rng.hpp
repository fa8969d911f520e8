// SPDX-License-Identifier: Apache-2.0

#ifndef ISP_RNG_HPP
#define ISP_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>

namespace isp
{

// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t x)
{
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Derives a substream seed from a parent seed and a sequence of integer keys. Signed keys
// are reinterpreted as two's-complement 64-bit values.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::int64_t> keys)
{
  std::uint64_t h = splitmix64(seed);
  for (auto k : keys)
  {
    h = splitmix64(h ^ static_cast<std::uint64_t>(k));
  }
  return h;
}

//
// Reproducible generator: std::mt19937_64 (fully specified by the standard) plus explicit
// conversions, so draws do not depend on the library's distribution implementations.
//
class Rng
{
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // 53-bit uniform on [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  // Uniform integer on [lo, hi] by rejection, no modulo bias.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi)
  {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0)
    {
      return static_cast<std::int64_t>(engine_());
    }
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t draw;
    do
    {
      draw = engine_();
    } while (draw >= limit);
    return lo + static_cast<std::int64_t>(draw % span);
  }

private:
  std::mt19937_64 engine_;
};

}  // namespace isp

#endif  // ISP_RNG_HPP
