#include "coindie/params.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace coindie {

unsigned floor_log2(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("floor_log2: n must be positive");
  return static_cast<unsigned>(std::bit_width(n) - 1);
}

DieParams DieParams::for_sides(std::uint64_t n) {
  if (n == 0 || n > kMaxSides) {
    throw std::out_of_range("die sides must be in [1, 2^31], got " + std::to_string(n));
  }
  const unsigned w = floor_log2(n);
  return DieParams{n, w, n - (std::uint64_t{1} << w)};
}

SplitCoefficients split_coefficients(const DieParams& params) {
  const unsigned w = params.word_width;
  if (params.excess == 0) {
    const std::uint64_t threshold = std::uint64_t{1} << (w + 1);
    return SplitCoefficients{threshold, threshold};
  }
  const std::uint64_t power = std::uint64_t{1} << (2 * w + 1);
  const std::uint64_t divisor = params.sides - 1;
  return SplitCoefficients{power % divisor, power / divisor};
}

}  // namespace coindie
