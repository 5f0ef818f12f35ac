#include "coindie/stats.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "coindie/kernel.hpp"
#include "coindie/params.hpp"

namespace coindie::stats {

const char* to_string(SampleMethod method) {
  switch (method) {
    case SampleMethod::two_coin: return "two-coin";
    case SampleMethod::rejection: return "rejection";
  }
  return "?";
}

double chi_square_statistic(const std::vector<std::uint64_t>& counts) {
  if (counts.empty()) throw std::invalid_argument("chi_square_statistic: no cells");
  std::uint64_t samples = 0;
  for (const std::uint64_t count : counts) samples += count;
  const double expected = static_cast<double>(samples) / static_cast<double>(counts.size());
  double statistic = 0.0;
  for (const std::uint64_t count : counts) {
    const double delta = static_cast<double>(count) - expected;
    statistic += delta * delta / expected;
  }
  return statistic;
}

namespace {

// Regularized upper incomplete gamma Q(a, x): power series for P when
// x < a+1, modified-Lentz continued fraction for Q otherwise.
double regularized_gamma_q(double a, double x) {
  constexpr int kMaxIterations = 1000;
  constexpr double kEpsilon = 1e-15;
  if (x < 0.0 || a <= 0.0) throw std::invalid_argument("regularized_gamma_q: bad arguments");
  if (x == 0.0) return 1.0;

  const double log_scale = -x + a * std::log(x) - std::lgamma(a);
  if (x < a + 1.0) {
    double term = 1.0 / a;
    double sum = term;
    double denominator = a;
    for (int i = 0; i < kMaxIterations; ++i) {
      denominator += 1.0;
      term *= x / denominator;
      sum += term;
      if (std::fabs(term) < std::fabs(sum) * kEpsilon) break;
    }
    return 1.0 - sum * std::exp(log_scale);
  }

  constexpr double kTiny = std::numeric_limits<double>::min() / kEpsilon;
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIterations; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEpsilon) break;
  }
  return h * std::exp(log_scale);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) { return seed ^ salt; }

struct BudgetAccumulator {
  std::uint64_t total = 0;
  std::uint64_t min = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t max = 0;

  void add(std::uint64_t flips) {
    total += flips;
    if (flips < min) min = flips;
    if (flips > max) max = flips;
  }

  FlipBudget finish(std::uint64_t samples) const {
    return FlipBudget{static_cast<double>(total) / static_cast<double>(samples), min, max};
  }
};

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6g", value);
  return buffer;
}

std::string format_budget(const FlipBudget& budget) {
  if (budget.exact()) return std::to_string(budget.min) + " (exact)";
  return format_double(budget.mean) + " [" + std::to_string(budget.min) + ".." +
         std::to_string(budget.max) + "]";
}

}  // namespace

double chi_square_p_value(double statistic, std::uint64_t degrees_of_freedom) {
  if (statistic < 0.0) throw std::invalid_argument("chi_square_p_value: negative statistic");
  if (degrees_of_freedom == 0) return statistic > 0.0 ? 0.0 : 1.0;
  return regularized_gamma_q(static_cast<double>(degrees_of_freedom) / 2.0, statistic / 2.0);
}

ChiSquareReport chi_square_uniformity(std::uint64_t n, std::uint64_t samples,
                                      std::uint64_t seed, SampleMethod method) {
  DieParams::for_sides(n);  // range check
  if (samples < 10 * n) {
    throw std::invalid_argument("chi_square_uniformity: need samples >= 10*n (" +
                                std::to_string(10 * n) + "), got " + std::to_string(samples));
  }

  ChiSquareReport report;
  report.sides = n;
  report.method = to_string(method);
  report.samples = samples;
  report.seed = seed;
  report.counts.assign(n, 0);

  if (method == SampleMethod::two_coin) {
    const auto fair = make_fair_source(seed);
    const auto coin_bits = make_fair_source(mix_seed(seed, kBiasStreamSalt));
    const auto biased = make_inverse_n_coin(n, *coin_bits);
    for (std::uint64_t i = 0; i < samples; ++i) {
      ++report.counts[roll(n, *biased, *fair).value];
    }
  } else {
    const auto fair = make_fair_source(mix_seed(seed, kRejectionStreamSalt));
    for (std::uint64_t i = 0; i < samples; ++i) {
      ++report.counts[rejection_baseline_roll(n, *fair).value];
    }
  }

  report.statistic = chi_square_statistic(report.counts);
  report.degrees_of_freedom = n - 1;
  report.p_value = chi_square_p_value(report.statistic, report.degrees_of_freedom);
  return report;
}

RejectionRoll rejection_baseline_roll(std::uint64_t n, CoinSource& fair) {
  const DieParams params = DieParams::for_sides(n);
  if (fair.bias() != Rational(1, 2)) {
    throw std::invalid_argument("rejection_baseline_roll: fair source must declare bias 1/2");
  }
  const unsigned width = params.word_width + 1;
  std::uint64_t flips = 0;
  for (;;) {
    std::uint64_t word = 0;
    for (unsigned i = 0; i < width; ++i) {
      if (is_heads(fair.next())) word |= std::uint64_t{1} << i;
    }
    flips += width;
    if (word < n) return RejectionRoll{word, flips};
  }
}

std::vector<BudgetReport> benchmark_budgets(std::uint64_t n, std::uint64_t samples,
                                            std::uint64_t seed) {
  const DieParams params = DieParams::for_sides(n);
  if (samples == 0) throw std::invalid_argument("benchmark_budgets: need samples >= 1");

  const auto fair = make_fair_source(seed);
  const auto coin_bits = make_fair_source(mix_seed(seed, kBiasStreamSalt));
  CountingSource coin_bits_counter(*coin_bits);
  const auto biased = make_inverse_n_coin(n, coin_bits_counter);
  CountingSource biased_counter(*biased);
  CountingSource fair_counter(*fair);

  BudgetAccumulator biased_flips, fair_flips, simulation_flips;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const std::uint64_t biased_before = biased_counter.count();
    const std::uint64_t fair_before = fair_counter.count();
    const std::uint64_t simulation_before = coin_bits_counter.count();
    roll(n, biased_counter, fair_counter);
    biased_flips.add(biased_counter.count() - biased_before);
    fair_flips.add(fair_counter.count() - fair_before);
    simulation_flips.add(coin_bits_counter.count() - simulation_before);
  }

  const auto rejection_fair = make_fair_source(mix_seed(seed, kRejectionStreamSalt));
  BudgetAccumulator rejection_flips;
  for (std::uint64_t i = 0; i < samples; ++i) {
    rejection_flips.add(rejection_baseline_roll(n, *rejection_fair).fair_flips);
  }

  std::vector<BudgetReport> reports;
  reports.push_back(BudgetReport{n, params.word_width, "two-coin", samples,
                                 biased_flips.finish(samples), fair_flips.finish(samples),
                                 std::nullopt});
  reports.push_back(BudgetReport{n, params.word_width, "two-coin/simulated-bias", samples,
                                 biased_flips.finish(samples), fair_flips.finish(samples),
                                 simulation_flips.finish(samples)});
  reports.push_back(BudgetReport{n, params.word_width, "rejection", samples,
                                 FlipBudget{0.0, 0, 0}, rejection_flips.finish(samples),
                                 std::nullopt});
  return reports;
}

nlohmann::json to_json(const ChiSquareReport& report) {
  return nlohmann::json{{"n", report.sides},
                        {"method", report.method},
                        {"samples", report.samples},
                        {"seed", report.seed},
                        {"counts", report.counts},
                        {"statistic", report.statistic},
                        {"degrees_of_freedom", report.degrees_of_freedom},
                        {"p_value", report.p_value}};
}

nlohmann::json to_json(const BudgetReport& report) {
  const auto budget_json = [](const FlipBudget& budget) {
    return nlohmann::json{{"mean", budget.mean},
                          {"min", budget.min},
                          {"max", budget.max},
                          {"exact", budget.exact()}};
  };
  nlohmann::json json{{"n", report.sides},
                      {"k", report.word_width},
                      {"method", report.method},
                      {"samples", report.samples},
                      {"biased_flips", budget_json(report.biased)},
                      {"fair_flips", budget_json(report.fair)}};
  if (report.bias_simulation_fair) {
    json["bias_simulation_fair_flips"] = budget_json(*report.bias_simulation_fair);
  }
  return json;
}

std::string format_text(const ChiSquareReport& report) {
  std::string text;
  text += "n          " + std::to_string(report.sides) + "\n";
  text += "method     " + report.method + "\n";
  text += "samples    " + std::to_string(report.samples) + "\n";
  text += "seed       " + std::to_string(report.seed) + "\n";
  text += "statistic  " + format_double(report.statistic) + "\n";
  text += "df         " + std::to_string(report.degrees_of_freedom) + "\n";
  text += "p-value    " + format_double(report.p_value) + "\n";
  text += "counts    ";
  for (const std::uint64_t count : report.counts) text += " " + std::to_string(count);
  text += "\n";
  return text;
}

std::string format_text(const std::vector<BudgetReport>& reports) {
  std::string text;
  if (reports.empty()) return text;
  text += "n " + std::to_string(reports.front().sides) +
          "  k " + std::to_string(reports.front().word_width) +
          "  samples " + std::to_string(reports.front().samples) + "\n";

  std::vector<std::vector<std::string>> rows;
  rows.push_back({"method", "biased/roll", "fair/roll", "sim-bias-fair/roll"});
  for (const BudgetReport& report : reports) {
    rows.push_back({report.method, format_budget(report.biased), format_budget(report.fair),
                    report.bias_simulation_fair ? format_budget(*report.bias_simulation_fair)
                                                : "-"});
  }
  std::vector<std::size_t> widths(rows.front().size(), 0);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], row[i].size());
  }
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      text += row[i];
      if (i + 1 < row.size()) text += std::string(widths[i] - row[i].size() + 2, ' ');
    }
    text += "\n";
  }
  return text;
}

}  // namespace coindie::stats
