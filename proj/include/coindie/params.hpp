#pragma once

// Problem-instance parameters for an n-sided die and the threshold pair
// (a, b) that drives the scaled-coin rule. With w = floor(log2 n), the pair
// satisfies a + b*(n-1) = 2^(2w+1) with 0 <= a, b <= 2^(w+1): a is the
// acceptance threshold applied after a biased heads, b after a biased tails.
// All arithmetic is exact 64-bit integer arithmetic; n is capped so that
// 2^(2w+1) always fits.

#include <cstdint>

namespace coindie {

// Largest supported die: keeps 2^(2w+1) <= 2^63 within 64-bit arithmetic.
inline constexpr std::uint64_t kMaxSides = std::uint64_t{1} << 31;

// floor(log2 n); rejects n = 0.
unsigned floor_log2(std::uint64_t n);

struct DieParams {
  std::uint64_t sides;      // n, in [1, kMaxSides]
  unsigned word_width;      // floor(log2 sides); each extraction word has this many bits
  std::uint64_t excess;     // sides - 2^word_width; zero iff sides is a power of two

  // Validates 1 <= n <= kMaxSides, throwing std::out_of_range otherwise.
  static DieParams for_sides(std::uint64_t n);

  std::uint64_t pow2_floor() const { return std::uint64_t{1} << word_width; }
};

struct SplitCoefficients {
  std::uint64_t heads_threshold;  // a
  std::uint64_t tails_threshold;  // b
};

// For a power of two, a = b = 2^(w+1); otherwise a and b are the remainder
// and quotient of dividing 2^(2w+1) by n - 1.
SplitCoefficients split_coefficients(const DieParams& params);

}  // namespace coindie
