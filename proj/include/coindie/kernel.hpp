#pragma once

// The die-rolling kernel. A roll consumes one flip of a (1/n)-coin plus
// 3w+1 fair flips (w = floor(log2 n)) in a fixed order:
//
//   1. one biased flip,
//   2. w+1 fair flips forming the coin word, turned into a (2^w/n)-coin
//      outcome by comparing the word against the split thresholds,
//   3. 2w fair flips forming two w-bit words (low, high) from which the
//      die value is extracted.
//
// All 3w+1 fair flips are always consumed, even when the outcome is already
// determined, so every transcript has the same shape and the flip budget is
// exact with zero variance. The die value is a pure function of the
// transcript: `roll` records flips and delegates to `replay`.

#include <cstdint>
#include <span>
#include <vector>

#include "coindie/flip.hpp"
#include "coindie/params.hpp"

namespace coindie {

class CoinSource;

// An integer read from a block of flips, least-significant bit first:
// flip i (0-based) contributes 2^i when heads.
struct BitWord {
  std::uint64_t value = 0;
  unsigned width = 0;

  friend bool operator==(const BitWord&, const BitWord&) = default;
};

BitWord bits_to_word(std::span<const Flip> flips);

// Inverse of bits_to_word over `out.size()` bits; used by enumeration and tests.
void word_to_flips(std::uint64_t value, std::span<Flip> out);

// Everything one roll consumed, in draw order.
struct FlipTranscript {
  std::vector<Flip> biased_flips;
  std::vector<Flip> fair_flips;
};

// The (2^w/n)-coin: heads iff the coin word falls below the threshold picked
// by the biased flip (a after heads, b after tails).
// Requires exactly word_width+1 fair flips.
Flip simulate_scaled_coin(Flip biased, std::span<const Flip> fair_flips,
                          const DieParams& params, const SplitCoefficients& coeffs);

// Die value from a scaled-coin outcome plus 2*word_width fair flips split
// into a low word d and a high word d'. Scaled tails yields d directly;
// scaled heads yields d' when d >= excess, and 2^w + d when d < excess.
// Always lands in [0, n-1].
std::uint64_t simulate_die_given_scaled(Flip scaled, std::span<const Flip> fair_flips,
                                        const DieParams& params);

enum class RollBranch : std::uint8_t {
  low_word,          // scaled tails: value = d
  high_word,         // scaled heads, d >= excess: value = d'
  offset_low_word,   // scaled heads, d < excess: value = 2^w + d
};

const char* to_string(RollBranch branch);

// Full derivation of a die value from a transcript.
struct RollBreakdown {
  Flip biased;
  BitWord coin_word;
  Flip scaled;
  BitWord low_word;
  BitWord high_word;
  RollBranch branch;
  std::uint64_t value;
};

// Recomputes a roll from its transcript. Throws std::invalid_argument unless
// the transcript holds exactly 1 biased and 3w+1 fair flips.
RollBreakdown replay(std::uint64_t n, const FlipTranscript& transcript);

struct RollResult {
  std::uint64_t value;
  FlipTranscript transcript;
};

// Rolls an n-sided die. The biased source must declare bias 1/n and the fair
// source 1/2 (std::invalid_argument otherwise); source exhaustion propagates.
RollResult roll(std::uint64_t n, CoinSource& biased_source, CoinSource& fair_source);

}  // namespace coindie
