#include "coindie/stats.hpp"

#include <stdexcept>

#include "doctest.h"

using namespace coindie;
using stats::SampleMethod;

TEST_CASE("chi-square statistic is exactly zero on perfectly uniform counts") {
  CHECK(stats::chi_square_statistic({100, 100, 100, 100}) == 0.0);
  CHECK(stats::chi_square_statistic({7}) == 0.0);
}

TEST_CASE("chi-square statistic matches a worked example") {
  // 102 die rolls, expectation 17 per face: statistic 4.70588...
  const double statistic = stats::chi_square_statistic({22, 11, 17, 14, 20, 18});
  CHECK(statistic == doctest::Approx(4.70588).epsilon(1e-5));
}

TEST_CASE("p-values match published chi-square tables") {
  CHECK(stats::chi_square_p_value(0.0, 5) == doctest::Approx(1.0));
  CHECK(stats::chi_square_p_value(3.841, 1) == doctest::Approx(0.05).epsilon(1e-3));
  CHECK(stats::chi_square_p_value(2.706, 1) == doctest::Approx(0.10).epsilon(1e-3));
  CHECK(stats::chi_square_p_value(10.828, 1) == doctest::Approx(0.001).epsilon(1e-3));
  CHECK(stats::chi_square_p_value(14.067, 7) == doctest::Approx(0.05).epsilon(1e-3));
  CHECK(stats::chi_square_p_value(4.70588, 4) == doctest::Approx(0.318828).epsilon(1e-5));
  CHECK(stats::chi_square_p_value(4.70588, 5) == doctest::Approx(0.4528180).epsilon(1e-5));
  CHECK(stats::chi_square_p_value(149.449, 100) == doctest::Approx(0.001).epsilon(1e-3));
  CHECK(stats::chi_square_p_value(999.0, 999) == doctest::Approx(0.49405).epsilon(1e-4));

  // degenerate zero-df distribution
  CHECK(stats::chi_square_p_value(0.0, 0) == 1.0);
  CHECK(stats::chi_square_p_value(0.001, 0) == 0.0);
}

TEST_CASE("single-sided dice have a zero statistic and a single cell") {
  const auto report = stats::chi_square_uniformity(1, 100, 1);
  CHECK(report.statistic == 0.0);
  CHECK(report.p_value == 1.0);
  CHECK(report.degrees_of_freedom == 0);
  CHECK(report.counts == std::vector<std::uint64_t>{100});
}

TEST_CASE("undersized sample counts are rejected") {
  CHECK_THROWS_AS(stats::chi_square_uniformity(6, 59, 1), std::invalid_argument);
  CHECK_NOTHROW(stats::chi_square_uniformity(6, 60, 1));
}

TEST_CASE("seeded chi-square runs are reproducible and sane") {
  const auto first = stats::chi_square_uniformity(6, 60000, 1);
  const auto second = stats::chi_square_uniformity(6, 60000, 1);
  CHECK(first.counts == second.counts);
  CHECK(first.statistic == second.statistic);
  CHECK(first.p_value > 0.001);

  std::uint64_t total = 0;
  for (const std::uint64_t count : first.counts) total += count;
  CHECK(total == 60000);

  const auto rejection = stats::chi_square_uniformity(6, 60000, 1, SampleMethod::rejection);
  CHECK(rejection.p_value > 0.001);
  CHECK(rejection.method == "rejection");
}

TEST_CASE("rejection baseline rolls behave as scripted") {
  SUBCASE("n = 2 accepts a two-flip word below 2") {
    auto fair = make_scripted("TT", Rational(1, 2));
    const auto result = stats::rejection_baseline_roll(2, *fair);
    CHECK(result.value == 0);
    CHECK(result.fair_flips == 2);
  }
  SUBCASE("n = 4 draws three bits and may retry") {
    auto accept = make_scripted("TTT", Rational(1, 2));
    CHECK(stats::rejection_baseline_roll(4, *accept).fair_flips == 3);

    auto retry = make_scripted("HHHTTT", Rational(1, 2));  // word 7 rejected, then 0
    const auto result = stats::rejection_baseline_roll(4, *retry);
    CHECK(result.value == 0);
    CHECK(result.fair_flips == 6);
  }
  SUBCASE("exhaustion propagates") {
    auto fair = make_scripted("H", Rational(1, 2));
    CHECK_THROWS_AS(stats::rejection_baseline_roll(4, *fair), ScriptExhausted);
  }
}

TEST_CASE("rejection baseline consumes (w+1) 2^(w+1) / n fair flips on average") {
  // for n = 6 that is 3 * 8 / 6 = 4, checked to 2% over a million rolls
  auto fair = make_fair_source(99);
  std::uint64_t total = 0;
  const int samples = 1'000'000;
  for (int i = 0; i < samples; ++i) {
    total += stats::rejection_baseline_roll(6, *fair).fair_flips;
  }
  const double mean = static_cast<double>(total) / samples;
  CHECK(mean == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("budget reports pin the exact two-coin flip counts") {
  const auto reports = stats::benchmark_budgets(6, 2000, 1);
  REQUIRE(reports.size() == 3);

  const auto& two_coin = reports[0];
  CHECK(two_coin.method == "two-coin");
  CHECK(two_coin.biased.exact());
  CHECK(two_coin.biased.min == 1);
  CHECK(two_coin.fair.exact());
  CHECK(two_coin.fair.min == 7);
  CHECK(!two_coin.bias_simulation_fair.has_value());

  const auto& simulated = reports[1];
  CHECK(simulated.method == "two-coin/simulated-bias");
  CHECK(simulated.fair.exact());
  CHECK(simulated.fair.min == 7);
  REQUIRE(simulated.bias_simulation_fair.has_value());
  CHECK(simulated.bias_simulation_fair->mean > 1.5);
  CHECK(simulated.bias_simulation_fair->mean < 2.5);

  const auto& rejection = reports[2];
  CHECK(rejection.method == "rejection");
  CHECK(rejection.biased.max == 0);
  CHECK(rejection.fair.mean == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("a 1024-sided die costs exactly 31 fair flips per roll") {
  const auto reports = stats::benchmark_budgets(1024, 200, 7);
  CHECK(reports[0].fair.exact());
  CHECK(reports[0].fair.min == 31);
  CHECK(reports[0].biased.exact());
  CHECK(reports[0].biased.min == 1);
}

TEST_CASE("reports serialize to stable JSON shapes") {
  const auto chi_json = stats::to_json(stats::chi_square_uniformity(1, 10, 3));
  CHECK(chi_json["n"] == 1);
  CHECK(chi_json["statistic"] == 0.0);
  CHECK(chi_json["p_value"] == 1.0);
  CHECK(chi_json["counts"] == nlohmann::json::array({10}));

  const auto budget_json = stats::to_json(stats::benchmark_budgets(6, 100, 1)[0]);
  CHECK(budget_json["method"] == "two-coin");
  CHECK(budget_json["fair_flips"]["exact"] == true);
  CHECK(budget_json["fair_flips"]["min"] == 7);
}

TEST_CASE("text rendering marks exact budgets") {
  const auto text = stats::format_text(stats::benchmark_budgets(6, 100, 1));
  CHECK(text.find("two-coin") != std::string::npos);
  CHECK(text.find("7 (exact)") != std::string::npos);
  CHECK(text.find("rejection") != std::string::npos);
}
