#pragma once

// Exact distribution oracle: enumerates every coin outcome with exact
// rational weights and recovers the full output distribution of each stage,
// proving uniformity for a concrete n with zero tolerance.
//
// The default route factors the enumeration: the scaled-coin stage is
// enumerated over its 2^(w+1) fair words and the extraction stage over its
// 2^(2w) words, which is valid because the two flip groups are independent.
// A joint mode enumerates all 2 * 2^(3w+1) outcomes through `roll` itself
// and exists to cross-check the factoring on small n.
//
// The enumerators are templates over the stage rules so tests can inject
// deliberately broken rules and watch the verdict fail; the public functions
// bind the real kernel.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "coindie/kernel.hpp"
#include "coindie/params.hpp"
#include "coindie/rational.hpp"

#include "json.hpp"

namespace coindie::oracle {

// Enumeration cost grows as 2^(w+1) words for the scaled-coin stage,
// 2^(2w) for the factored die distribution and 2^(3w+1) for the joint
// mode, with w = floor(log2 n); the default bounds keep each call in the
// seconds range. Raise them knowingly.
struct EnumerationLimits {
  std::uint64_t scaled_coin_max_sides = 4096;
  std::uint64_t die_max_sides = 1024;
  std::uint64_t joint_max_sides = 64;
};

struct CoinDistribution {
  Rational heads;
  Rational tails;

  friend bool operator==(const CoinDistribution&, const CoinDistribution&) = default;
};

struct ExactDistribution {
  std::uint64_t sides = 0;
  // Only values with nonzero probability appear.
  std::map<std::uint64_t, Rational> probabilities;

  Rational probability_of(std::uint64_t value) const;
  Rational total() const;

  friend bool operator==(const ExactDistribution&, const ExactDistribution&) = default;
};

struct Discrepancy {
  std::uint64_t value;
  Rational probability;
};

struct Verdict {
  std::uint64_t sides = 0;
  std::optional<Discrepancy> discrepancy;  // first non-uniform value, if any

  bool uniform() const { return !discrepancy.has_value(); }
};

// ScaledCoinRule: (Flip biased, std::span<const Flip> fair) -> Flip
// ExtractionRule: (Flip scaled, std::span<const Flip> fair) -> std::uint64_t

template <class ScaledCoinRule>
CoinDistribution enumerate_scaled_coin(const DieParams& params, ScaledCoinRule&& rule) {
  const unsigned width = params.word_width + 1;
  const std::uint64_t words = std::uint64_t{1} << width;
  std::vector<Flip> flips(width);
  std::uint64_t heads_given_heads = 0;
  std::uint64_t heads_given_tails = 0;
  for (std::uint64_t word = 0; word < words; ++word) {
    word_to_flips(word, flips);
    const std::span<const Flip> fair{flips};
    if (is_heads(rule(Flip::heads, fair))) ++heads_given_heads;
    if (is_heads(rule(Flip::tails, fair))) ++heads_given_tails;
  }
  // Weight 1/n on the biased-heads branch, (n-1)/n on biased-tails, and
  // 2^-(w+1) per fair word.
  const Rational heads =
      Rational(1, Int128(params.sides)) * Rational(Int128(heads_given_heads), Int128(words)) +
      Rational(Int128(params.sides - 1), Int128(params.sides)) *
          Rational(Int128(heads_given_tails), Int128(words));
  return CoinDistribution{heads, Rational(1) - heads};
}

template <class ScaledCoinRule, class ExtractionRule>
ExactDistribution enumerate_die(const DieParams& params, ScaledCoinRule&& coin_rule,
                                ExtractionRule&& extraction_rule) {
  const CoinDistribution scaled = enumerate_scaled_coin(params, coin_rule);

  const unsigned width = 2 * params.word_width;
  const std::uint64_t words = std::uint64_t{1} << width;
  std::vector<Flip> flips(width);
  // Tallies grow on demand so a broken rule producing out-of-range values
  // still yields an honest distribution.
  std::vector<std::uint64_t> given_heads;
  std::vector<std::uint64_t> given_tails;
  const auto tally = [](std::vector<std::uint64_t>& counts, std::uint64_t value) {
    if (value >= counts.size()) counts.resize(value + 1, 0);
    ++counts[value];
  };
  for (std::uint64_t word = 0; word < words; ++word) {
    word_to_flips(word, flips);
    const std::span<const Flip> fair{flips};
    tally(given_heads, extraction_rule(Flip::heads, fair));
    tally(given_tails, extraction_rule(Flip::tails, fair));
  }

  ExactDistribution dist{params.sides, {}};
  const std::size_t spread = std::max(given_heads.size(), given_tails.size());
  for (std::uint64_t value = 0; value < spread; ++value) {
    const std::uint64_t count_heads = value < given_heads.size() ? given_heads[value] : 0;
    const std::uint64_t count_tails = value < given_tails.size() ? given_tails[value] : 0;
    const Rational probability =
        scaled.heads * Rational(Int128(count_heads), Int128(words)) +
        scaled.tails * Rational(Int128(count_tails), Int128(words));
    if (probability != Rational(0)) dist.probabilities.emplace(value, probability);
  }
  return dist;
}

// P(heads) of the scaled (2^w/n)-coin by exact enumeration through the kernel.
CoinDistribution exact_scaled_coin_distribution(std::uint64_t n,
                                                const EnumerationLimits& limits = {});

// Full die distribution via the factored enumeration.
ExactDistribution exact_die_distribution(std::uint64_t n, const EnumerationLimits& limits = {});

// Full die distribution via joint enumeration of all 2 * 2^(3w+1) coin
// outcomes, each routed through `roll` on scripted sources.
ExactDistribution exact_die_distribution_joint(std::uint64_t n,
                                               const EnumerationLimits& limits = {});

// Pass iff every value in [0, sides-1] has probability exactly 1/sides;
// reports the first discrepant value otherwise.
Verdict check_uniform(const ExactDistribution& dist);

// check_uniform over the factored enumeration of the real kernel.
Verdict verify_uniform(std::uint64_t n, const EnumerationLimits& limits = {});

// JSON renderings; probabilities appear as "numerator/denominator" strings.
nlohmann::json to_json(const CoinDistribution& dist);
nlohmann::json to_json(const ExactDistribution& dist);
nlohmann::json to_json(const Verdict& verdict);

}  // namespace coindie::oracle
