#pragma once

// Statistical validation at scale and flip-budget benchmarking.
//
// The exact oracle carries correctness; the chi-square suite exists to catch
// wiring mistakes the enumeration cannot see (bad entropy plumbing, seed
// handling) and to sanity-check the rejection baseline. All sampling here is
// seeded and reproducible. Derived streams keep the roll's own fair flips
// separate from the fair flips the simulated (1/n)-coin burns internally,
// so the budget columns never mix.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coindie/sources.hpp"

#include "json.hpp"

namespace coindie::stats {

// Salts XORed into the user seed to derive independent streams.
inline constexpr std::uint64_t kBiasStreamSalt = 0x9E3779B97F4A7C15ull;
inline constexpr std::uint64_t kRejectionStreamSalt = 0xD1B54A32D192ED03ull;

enum class SampleMethod {
  two_coin,    // one (1/n)-coin flip + 3w+1 fair flips per roll
  rejection,   // fair-coin-only baseline: draw w+1 bits, retry until < n
};

const char* to_string(SampleMethod method);

struct ChiSquareReport {
  std::uint64_t sides = 0;
  std::string method;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> counts;  // per value, size n
  double statistic = 0.0;
  std::uint64_t degrees_of_freedom = 0;  // n - 1
  double p_value = 1.0;
};

// Chi-square statistic of observed counts against the uniform expectation
// sum(counts)/counts.size(). Exactly 0 on perfectly uniform counts.
double chi_square_statistic(const std::vector<std::uint64_t>& counts);

// Upper tail of the chi-square distribution via the regularized upper
// incomplete gamma function Q(df/2, statistic/2).
double chi_square_p_value(double statistic, std::uint64_t degrees_of_freedom);

// Rolls `samples` seeded dice and tests the counts for uniformity.
// Requires samples >= 10 * n so expected cell counts stay reasonable.
ChiSquareReport chi_square_uniformity(std::uint64_t n, std::uint64_t samples,
                                      std::uint64_t seed,
                                      SampleMethod method = SampleMethod::two_coin);

struct RejectionRoll {
  std::uint64_t value;
  std::uint64_t fair_flips;
};

// Fair-coin-only baseline: draws w+1 bits forming a word in [0, 2^(w+1)),
// accepts when the word < n. Consumed flips are geometric with mean
// (w+1) * 2^(w+1) / n.
RejectionRoll rejection_baseline_roll(std::uint64_t n, CoinSource& fair);

struct FlipBudget {
  double mean = 0.0;
  std::uint64_t min = 0;
  std::uint64_t max = 0;

  bool exact() const { return min == max; }
};

struct BudgetReport {
  std::uint64_t sides = 0;
  unsigned word_width = 0;
  std::string method;
  std::uint64_t samples = 0;
  FlipBudget biased;
  FlipBudget fair;
  // Fair flips the simulated (1/n)-coin consumed internally; reported as its
  // own column, never folded into the per-roll fair figure.
  std::optional<FlipBudget> bias_simulation_fair;
};

// Measured per-roll flip budgets via counting sources. Three rows:
//   two-coin                 biased and fair draws of the roll itself
//   two-coin/simulated-bias  same, plus what the simulated (1/n)-coin burned
//   rejection                fair draws of the baseline
std::vector<BudgetReport> benchmark_budgets(std::uint64_t n, std::uint64_t samples,
                                            std::uint64_t seed);

nlohmann::json to_json(const ChiSquareReport& report);
nlohmann::json to_json(const BudgetReport& report);
std::string format_text(const ChiSquareReport& report);
std::string format_text(const std::vector<BudgetReport>& reports);

}  // namespace coindie::stats
