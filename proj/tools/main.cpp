// coindie: roll a fair n-sided die from one (1/n)-coin flip plus
// 3*floor(log2 n)+1 fair coin flips, verify uniformity exactly, and measure
// flip budgets.
//
// Exit codes: 0 success / all-pass, 1 verification failure, 2 usage or range
// error, 3 scripted source exhaustion.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "coindie/kernel.hpp"
#include "coindie/oracle.hpp"
#include "coindie/params.hpp"
#include "coindie/rational.hpp"
#include "coindie/sources.hpp"
#include "coindie/stats.hpp"

namespace {

using namespace coindie;

enum class Format { text, json };

Format parse_format(const std::string& name) {
  return name == "json" ? Format::json : Format::text;
}

std::string read_script_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot open script file: " + path);
  std::ostringstream content;
  content << file.rdbuf();
  return content.str();
}

int cmd_params(std::uint64_t n, Format format) {
  const DieParams params = DieParams::for_sides(n);
  const SplitCoefficients coeffs = split_coefficients(params);
  if (format == Format::json) {
    const nlohmann::json json{{"n", params.sides},
                              {"k", params.word_width},
                              {"m", params.excess},
                              {"a", coeffs.heads_threshold},
                              {"b", coeffs.tails_threshold}};
    std::cout << json.dump() << "\n";
  } else {
    std::cout << "n " << params.sides << "\n"
              << "k " << params.word_width << "\n"
              << "m " << params.excess << "\n"
              << "a " << coeffs.heads_threshold << "\n"
              << "b " << coeffs.tails_threshold << "\n";
  }
  return 0;
}

struct RollSources {
  std::unique_ptr<CoinSource> fair;
  std::unique_ptr<CoinSource> coin_bits;  // feeds the simulated biased coin, when used
  std::unique_ptr<CoinSource> biased;
};

struct RollOptions {
  std::uint64_t n = 0;
  std::uint64_t count = 1;
  std::optional<std::uint64_t> seed;
  std::string biased_script, biased_script_file;
  std::string fair_script, fair_script_file;
  bool trace = false;
};

RollSources make_roll_sources(const RollOptions& options) {
  const bool any_script = !options.biased_script.empty() || !options.biased_script_file.empty() ||
                          !options.fair_script.empty() || !options.fair_script_file.empty();
  RollSources sources;
  if (any_script) {
    const bool have_biased = !options.biased_script.empty() || !options.biased_script_file.empty();
    const bool have_fair = !options.fair_script.empty() || !options.fair_script_file.empty();
    if (!have_biased || !have_fair) {
      throw std::invalid_argument(
          "scripted rolls need both a biased and a fair script (inline or file)");
    }
    const std::string biased_text = !options.biased_script.empty()
                                        ? options.biased_script
                                        : read_script_file(options.biased_script_file);
    const std::string fair_text = !options.fair_script.empty()
                                      ? options.fair_script
                                      : read_script_file(options.fair_script_file);
    sources.biased = make_scripted(biased_text, Rational(1, Int128(options.n)));
    sources.fair = make_scripted(fair_text, Rational(1, 2));
    return sources;
  }
  sources.fair = make_fair_source(options.seed);
  sources.coin_bits = make_fair_source(
      options.seed ? std::optional<std::uint64_t>(*options.seed ^ stats::kBiasStreamSalt)
                   : std::nullopt);
  sources.biased = make_inverse_n_coin(options.n, *sources.coin_bits);
  return sources;
}

int cmd_roll(const RollOptions& options, Format format) {
  RollSources sources = make_roll_sources(options);
  for (std::uint64_t i = 0; i < options.count; ++i) {
    const RollResult result = roll(options.n, *sources.biased, *sources.fair);
    if (!options.trace) {
      if (format == Format::json) {
        std::cout << nlohmann::json{{"value", result.value}}.dump() << "\n";
      } else {
        std::cout << result.value << "\n";
      }
      continue;
    }
    const RollBreakdown breakdown = replay(options.n, result.transcript);
    if (format == Format::json) {
      const nlohmann::json json{{"value", breakdown.value},
                                {"biased", std::string(1, to_char(breakdown.biased))},
                                {"fair", format_flips(result.transcript.fair_flips)},
                                {"coin_word", breakdown.coin_word.value},
                                {"scaled", std::string(1, to_char(breakdown.scaled))},
                                {"low_word", breakdown.low_word.value},
                                {"high_word", breakdown.high_word.value},
                                {"branch", to_string(breakdown.branch)}};
      std::cout << json.dump() << "\n";
    } else {
      std::cout << "value=" << breakdown.value
                << " biased=" << to_char(breakdown.biased)
                << " fair=" << format_flips(result.transcript.fair_flips)
                << " coin_word=" << breakdown.coin_word.value
                << " scaled=" << to_char(breakdown.scaled)
                << " low_word=" << breakdown.low_word.value
                << " high_word=" << breakdown.high_word.value
                << " branch=" << to_string(breakdown.branch) << "\n";
    }
  }
  return 0;
}

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text) {
  const std::size_t separator = text.find("..");
  if (separator == std::string::npos) {
    throw std::invalid_argument("range must look like lo..hi, got '" + text + "'");
  }
  std::uint64_t lo = 0, hi = 0;
  try {
    lo = std::stoull(text.substr(0, separator));
    hi = std::stoull(text.substr(separator + 2));
  } catch (const std::exception&) {
    throw std::invalid_argument("range must look like lo..hi, got '" + text + "'");
  }
  if (lo == 0 || lo > hi) {
    throw std::invalid_argument("range bounds must satisfy 1 <= lo <= hi, got '" + text + "'");
  }
  return {lo, hi};
}

int cmd_verify(std::optional<std::uint64_t> single, const std::string& range_text,
               Format format) {
  std::uint64_t lo = 0, hi = 0;
  if (single && range_text.empty()) {
    lo = hi = *single;
  } else if (!single && !range_text.empty()) {
    std::tie(lo, hi) = parse_range(range_text);
  } else {
    throw std::invalid_argument("verify needs either an n argument or --range lo..hi");
  }

  bool all_uniform = true;
  nlohmann::json verdicts = nlohmann::json::array();
  for (std::uint64_t n = lo; n <= hi; ++n) {
    const oracle::Verdict verdict = oracle::verify_uniform(n);
    if (format == Format::json) {
      nlohmann::json json = oracle::to_json(verdict);
      if (!verdict.uniform()) {
        json["distribution"] = oracle::to_json(oracle::exact_die_distribution(n));
      }
      verdicts.push_back(std::move(json));
    } else if (verdict.uniform()) {
      std::cout << "n=" << n << " uniform\n";
    } else {
      std::cout << "n=" << n << " NOT uniform: value " << verdict.discrepancy->value
                << " has probability " << verdict.discrepancy->probability.to_string()
                << " (expected " << Rational(1, Int128(n)).to_string() << ")\n";
      for (const auto& [value, probability] : oracle::exact_die_distribution(n).probabilities) {
        std::cout << "  " << value << " " << probability.to_string() << "\n";
      }
    }
    all_uniform = all_uniform && verdict.uniform();
  }
  if (format == Format::json) std::cout << verdicts.dump() << "\n";
  return all_uniform ? 0 : 1;
}

int cmd_stats(std::uint64_t n, std::uint64_t samples, std::uint64_t seed, Format format) {
  const stats::ChiSquareReport report = stats::chi_square_uniformity(n, samples, seed);
  if (format == Format::json) {
    std::cout << stats::to_json(report).dump() << "\n";
  } else {
    std::cout << stats::format_text(report);
  }
  return 0;
}

int cmd_bench(std::uint64_t n, std::uint64_t samples, std::uint64_t seed, Format format) {
  const std::vector<stats::BudgetReport> reports = stats::benchmark_budgets(n, samples, seed);
  if (format == Format::json) {
    nlohmann::json json = nlohmann::json::array();
    for (const stats::BudgetReport& report : reports) json.push_back(stats::to_json(report));
    std::cout << json.dump() << "\n";
  } else {
    std::cout << stats::format_text(reports);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Simulate fair n-sided die rolls from one (1/n)-biased coin flip plus "
      "3*floor(log2 n)+1 fair coin flips, with an exact uniformity oracle"};
  app.require_subcommand(1);
  std::string format_name = "text";
  app.add_option("--format", format_name, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  int exit_code = 0;

  auto* params_cmd =
      app.add_subcommand("params", "Print n, k, m and the split coefficients a, b");
  params_cmd->fallthrough();
  std::uint64_t params_n = 0;
  params_cmd->add_option("n", params_n, "Number of die sides")->required();
  params_cmd->callback([&] { exit_code = cmd_params(params_n, parse_format(format_name)); });

  auto* roll_cmd = app.add_subcommand("roll", "Roll the die, printing one value per line");
  roll_cmd->fallthrough();
  RollOptions roll_options;
  roll_cmd->add_option("n", roll_options.n, "Number of die sides")->required();
  roll_cmd->add_option("--count", roll_options.count, "Number of rolls")->capture_default_str();
  auto* seed_option = roll_cmd->add_option(
      "--seed", roll_options.seed, "Seed for reproducible rolls (omit for system entropy)");
  auto* biased_script = roll_cmd->add_option("--biased-script", roll_options.biased_script,
                                             "Scripted biased flips, e.g. \"HT TH\"");
  auto* biased_script_file =
      roll_cmd->add_option("--biased-script-file", roll_options.biased_script_file,
                           "File holding scripted biased flips")
          ->excludes(biased_script);
  auto* fair_script =
      roll_cmd->add_option("--fair-script", roll_options.fair_script, "Scripted fair flips");
  auto* fair_script_file =
      roll_cmd->add_option("--fair-script-file", roll_options.fair_script_file,
                           "File holding scripted fair flips")
          ->excludes(fair_script);
  seed_option->excludes(biased_script)
      ->excludes(biased_script_file)
      ->excludes(fair_script)
      ->excludes(fair_script_file);
  roll_cmd->add_flag("--trace", roll_options.trace,
                     "Show the transcript and derivation of every roll");
  roll_cmd->callback([&] { exit_code = cmd_roll(roll_options, parse_format(format_name)); });

  auto* verify_cmd = app.add_subcommand(
      "verify", "Prove the output distribution exactly uniform by enumeration");
  verify_cmd->fallthrough();
  std::optional<std::uint64_t> verify_n;
  std::string verify_range;
  verify_cmd->add_option("n", verify_n, "Number of die sides");
  verify_cmd->add_option("--range", verify_range, "Verify every n in lo..hi");
  verify_cmd->callback(
      [&] { exit_code = cmd_verify(verify_n, verify_range, parse_format(format_name)); });

  auto* stats_cmd =
      app.add_subcommand("stats", "Chi-square uniformity test over seeded rolls");
  stats_cmd->fallthrough();
  std::uint64_t stats_n = 0, stats_samples = 100000, stats_seed = 1;
  stats_cmd->add_option("n", stats_n, "Number of die sides")->required();
  stats_cmd->add_option("--samples", stats_samples, "Rolls to sample (>= 10*n)")
      ->capture_default_str();
  stats_cmd->add_option("--seed", stats_seed, "Seed")->capture_default_str();
  stats_cmd->callback([&] {
    exit_code = cmd_stats(stats_n, stats_samples, stats_seed, parse_format(format_name));
  });

  auto* bench_cmd = app.add_subcommand(
      "bench", "Measure per-roll flip budgets against the rejection baseline");
  bench_cmd->fallthrough();
  std::uint64_t bench_n = 0, bench_samples = 10000, bench_seed = 1;
  bench_cmd->add_option("n", bench_n, "Number of die sides")->required();
  bench_cmd->add_option("--samples", bench_samples, "Rolls to measure")->capture_default_str();
  bench_cmd->add_option("--seed", bench_seed, "Seed")->capture_default_str();
  bench_cmd->callback([&] {
    exit_code = cmd_bench(bench_n, bench_samples, bench_seed, parse_format(format_name));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ScriptExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
