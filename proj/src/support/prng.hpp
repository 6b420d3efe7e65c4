#pragma once

#include <cstdint>
#include <string_view>

namespace geomom {

// Splitmix64 stream. Every piece of randomness in the toolkit flows from a
// single user seed through named forks of this generator, so runs are
// reproducible bit-for-bit across platforms (integer arithmetic only; the
// double conversion uses the exact 53-bit mantissa path).
class Prng {
public:
  explicit Prng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double next_in(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Child stream whose state mixes this stream's seed with a label.
  Prng fork(std::string_view label) const {
    std::uint64_t h = 0xcbf29ce484222325ULL; // FNV-1a
    for (char c : label) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ULL;
    }
    return Prng(state_ ^ h);
  }

  Prng fork(std::uint64_t salt) const { return Prng(state_ ^ (salt * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL)); }

private:
  std::uint64_t state_;
};

} // namespace geomom
