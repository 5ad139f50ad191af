#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "errors.hpp"

namespace pcs {

// Deterministic random source for the instance generators. All randomness
// flows from one 64-bit seed through std::mt19937_64, whose output sequence
// is fixed by the standard; the integer draws below use rejection sampling
// instead of std::uniform_int_distribution so results are identical across
// platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Uniform integer in [lo, hi], inclusive. Unbiased via rejection.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw InternalError("Rng::uniform_int: empty range");
    const std::uint64_t span =
        static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(eng_());  // full range
    const std::uint64_t residue =
        (std::numeric_limits<std::uint64_t>::max() % span + 1) % span;
    std::uint64_t x = eng_();
    // residue draws at the top of the range would bias the modulus; redraw.
    while (residue != 0 && x >= std::uint64_t(0) - residue) x = eng_();
    return lo + static_cast<std::int64_t>(x % span);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // A uniformly random simple sequence of `len` distinct values drawn
  // from {0, ..., n-1} (partial Fisher-Yates).
  std::vector<std::uint32_t> simple_sequence(std::uint32_t n, std::uint32_t len) {
    if (len > n) throw InternalError("Rng::simple_sequence: len > n");
    std::vector<std::uint32_t> pool(n);
    for (std::uint32_t i = 0; i < n; ++i) pool[i] = i;
    std::vector<std::uint32_t> out;
    out.reserve(len);
    for (std::uint32_t i = 0; i < len; ++i) {
      const auto j = static_cast<std::uint32_t>(uniform_int(i, n - 1));
      std::swap(pool[i], pool[j]);
      out.push_back(pool[i]);
    }
    return out;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace pcs
