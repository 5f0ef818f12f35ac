#include "coindie/oracle.hpp"

#include <stdexcept>
#include <string>

#include "coindie/sources.hpp"

namespace coindie::oracle {

namespace {

void check_bound(const char* what, std::uint64_t n, std::uint64_t bound, const char* cost) {
  if (n > bound) {
    throw std::out_of_range(std::string(what) + ": n=" + std::to_string(n) +
                            " exceeds the enumeration bound " + std::to_string(bound) +
                            " (cost grows as " + cost +
                            "; raise EnumerationLimits to go further)");
  }
}

}  // namespace

Rational ExactDistribution::probability_of(std::uint64_t value) const {
  const auto it = probabilities.find(value);
  return it == probabilities.end() ? Rational(0) : it->second;
}

Rational ExactDistribution::total() const {
  Rational sum(0);
  for (const auto& [value, probability] : probabilities) sum += probability;
  return sum;
}

CoinDistribution exact_scaled_coin_distribution(std::uint64_t n, const EnumerationLimits& limits) {
  check_bound("exact_scaled_coin_distribution", n, limits.scaled_coin_max_sides,
              "2^(floor(log2 n)+1) kernel calls");
  const DieParams params = DieParams::for_sides(n);
  const SplitCoefficients coeffs = split_coefficients(params);
  return enumerate_scaled_coin(params, [&](Flip biased, std::span<const Flip> fair) {
    return simulate_scaled_coin(biased, fair, params, coeffs);
  });
}

ExactDistribution exact_die_distribution(std::uint64_t n, const EnumerationLimits& limits) {
  check_bound("exact_die_distribution", n, limits.die_max_sides,
              "4^floor(log2 n) kernel calls");
  const DieParams params = DieParams::for_sides(n);
  const SplitCoefficients coeffs = split_coefficients(params);
  return enumerate_die(
      params,
      [&](Flip biased, std::span<const Flip> fair) {
        return simulate_scaled_coin(biased, fair, params, coeffs);
      },
      [&](Flip scaled, std::span<const Flip> fair) {
        return simulate_die_given_scaled(scaled, fair, params);
      });
}

ExactDistribution exact_die_distribution_joint(std::uint64_t n, const EnumerationLimits& limits) {
  check_bound("exact_die_distribution_joint", n, limits.joint_max_sides,
              "2^(3*floor(log2 n)+1) rolls");
  const DieParams params = DieParams::for_sides(n);
  const unsigned fair_count = 3 * params.word_width + 1;
  const std::uint64_t words = std::uint64_t{1} << fair_count;

  std::vector<std::uint64_t> given_heads(n, 0);
  std::vector<std::uint64_t> given_tails(n, 0);
  std::vector<Flip> fair(fair_count);
  for (std::uint64_t word = 0; word < words; ++word) {
    word_to_flips(word, fair);
    for (const Flip biased : {Flip::heads, Flip::tails}) {
      ScriptedSource biased_source({biased}, Rational(1, Int128(n)));
      ScriptedSource fair_source(fair, Rational(1, 2));
      const RollResult result = roll(n, biased_source, fair_source);
      ++(is_heads(biased) ? given_heads : given_tails)[result.value];
    }
  }

  ExactDistribution dist{n, {}};
  for (std::uint64_t value = 0; value < n; ++value) {
    const Rational probability =
        Rational(1, Int128(n)) * Rational(Int128(given_heads[value]), Int128(words)) +
        Rational(Int128(n - 1), Int128(n)) * Rational(Int128(given_tails[value]), Int128(words));
    if (probability != Rational(0)) dist.probabilities.emplace(value, probability);
  }
  return dist;
}

Verdict check_uniform(const ExactDistribution& dist) {
  const std::uint64_t n = dist.sides;
  const Rational expected(1, Int128(n));
  for (std::uint64_t value = 0; value < n; ++value) {
    const Rational probability = dist.probability_of(value);
    if (probability != expected) return Verdict{n, Discrepancy{value, probability}};
  }
  // All in-range mass is accounted for, but flag any stray out-of-range value.
  for (const auto& [value, probability] : dist.probabilities) {
    if (value >= n) return Verdict{n, Discrepancy{value, probability}};
  }
  return Verdict{n, std::nullopt};
}

Verdict verify_uniform(std::uint64_t n, const EnumerationLimits& limits) {
  return check_uniform(exact_die_distribution(n, limits));
}

nlohmann::json to_json(const CoinDistribution& dist) {
  return nlohmann::json{{"heads", dist.heads.to_string()}, {"tails", dist.tails.to_string()}};
}

nlohmann::json to_json(const ExactDistribution& dist) {
  nlohmann::json probabilities = nlohmann::json::object();
  for (const auto& [value, probability] : dist.probabilities) {
    probabilities[std::to_string(value)] = probability.to_string();
  }
  return nlohmann::json{{"sides", dist.sides}, {"probabilities", std::move(probabilities)}};
}

nlohmann::json to_json(const Verdict& verdict) {
  nlohmann::json json{{"sides", verdict.sides}, {"uniform", verdict.uniform()}};
  if (verdict.discrepancy) {
    json["value"] = verdict.discrepancy->value;
    json["probability"] = verdict.discrepancy->probability.to_string();
    json["expected"] = Rational(1, Int128(verdict.sides)).to_string();
  }
  return json;
}

}  // namespace coindie::oracle
