#include "coindie/kernel.hpp"

#include <stdexcept>
#include <string>

#include "coindie/sources.hpp"

namespace coindie {

BitWord bits_to_word(std::span<const Flip> flips) {
  BitWord word{0, static_cast<unsigned>(flips.size())};
  for (std::size_t i = 0; i < flips.size(); ++i) {
    if (is_heads(flips[i])) word.value |= std::uint64_t{1} << i;
  }
  return word;
}

void word_to_flips(std::uint64_t value, std::span<Flip> out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = (value >> i) & 1 ? Flip::heads : Flip::tails;
  }
}

Flip simulate_scaled_coin(Flip biased, std::span<const Flip> fair_flips,
                          const DieParams& params, const SplitCoefficients& coeffs) {
  if (fair_flips.size() != params.word_width + 1) {
    throw std::invalid_argument("simulate_scaled_coin: expected " +
                                std::to_string(params.word_width + 1) + " fair flips, got " +
                                std::to_string(fair_flips.size()));
  }
  const std::uint64_t word = bits_to_word(fair_flips).value;
  const std::uint64_t threshold =
      is_heads(biased) ? coeffs.heads_threshold : coeffs.tails_threshold;
  return word < threshold ? Flip::heads : Flip::tails;
}

std::uint64_t simulate_die_given_scaled(Flip scaled, std::span<const Flip> fair_flips,
                                        const DieParams& params) {
  const unsigned w = params.word_width;
  if (fair_flips.size() != 2 * static_cast<std::size_t>(w)) {
    throw std::invalid_argument("simulate_die_given_scaled: expected " +
                                std::to_string(2 * w) + " fair flips, got " +
                                std::to_string(fair_flips.size()));
  }
  const std::uint64_t low = bits_to_word(fair_flips.first(w)).value;
  const std::uint64_t high = bits_to_word(fair_flips.subspan(w)).value;
  if (!is_heads(scaled)) return low;
  if (low >= params.excess) return high;
  return params.pow2_floor() + low;
}

const char* to_string(RollBranch branch) {
  switch (branch) {
    case RollBranch::low_word: return "low";
    case RollBranch::high_word: return "high";
    case RollBranch::offset_low_word: return "offset";
  }
  return "?";
}

namespace {

RollBreakdown replay_with(const DieParams& params, const SplitCoefficients& coeffs,
                          const FlipTranscript& transcript) {
  const unsigned w = params.word_width;
  if (transcript.biased_flips.size() != 1) {
    throw std::invalid_argument("replay: transcript must hold exactly 1 biased flip");
  }
  if (transcript.fair_flips.size() != 3 * static_cast<std::size_t>(w) + 1) {
    throw std::invalid_argument("replay: transcript must hold exactly " +
                                std::to_string(3 * w + 1) + " fair flips, got " +
                                std::to_string(transcript.fair_flips.size()));
  }

  const std::span<const Flip> fair{transcript.fair_flips};
  const std::span<const Flip> coin_flips = fair.first(w + 1);
  const std::span<const Flip> extract_flips = fair.subspan(w + 1);

  RollBreakdown breakdown{};
  breakdown.biased = transcript.biased_flips.front();
  breakdown.coin_word = bits_to_word(coin_flips);
  breakdown.scaled = simulate_scaled_coin(breakdown.biased, coin_flips, params, coeffs);
  breakdown.low_word = bits_to_word(extract_flips.first(w));
  breakdown.high_word = bits_to_word(extract_flips.subspan(w));
  breakdown.value = simulate_die_given_scaled(breakdown.scaled, extract_flips, params);
  breakdown.branch = !is_heads(breakdown.scaled) ? RollBranch::low_word
                     : breakdown.low_word.value >= params.excess
                         ? RollBranch::high_word
                         : RollBranch::offset_low_word;
  return breakdown;
}

}  // namespace

RollBreakdown replay(std::uint64_t n, const FlipTranscript& transcript) {
  const DieParams params = DieParams::for_sides(n);
  return replay_with(params, split_coefficients(params), transcript);
}

RollResult roll(std::uint64_t n, CoinSource& biased_source, CoinSource& fair_source) {
  const DieParams params = DieParams::for_sides(n);
  const SplitCoefficients coeffs = split_coefficients(params);
  if (biased_source.bias() != Rational(1, Int128(n))) {
    throw std::invalid_argument("roll: biased source must declare bias 1/" +
                                std::to_string(n) + ", got " +
                                biased_source.bias().to_string());
  }
  if (fair_source.bias() != Rational(1, 2)) {
    throw std::invalid_argument("roll: fair source must declare bias 1/2, got " +
                                fair_source.bias().to_string());
  }

  FlipTranscript transcript;
  transcript.biased_flips.push_back(biased_source.next());
  const std::size_t fair_budget = 3 * static_cast<std::size_t>(params.word_width) + 1;
  transcript.fair_flips.reserve(fair_budget);
  for (std::size_t i = 0; i < fair_budget; ++i) {
    transcript.fair_flips.push_back(fair_source.next());
  }

  const RollBreakdown breakdown = replay_with(params, coeffs, transcript);
  return RollResult{breakdown.value, std::move(transcript)};
}

}  // namespace coindie
