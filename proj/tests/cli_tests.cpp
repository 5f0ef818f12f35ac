// End-to-end tests of the coindie binary: golden outputs, exit codes and
// format switches. The binary path comes from the build system.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

namespace {

struct CommandResult {
  int exit_code;
  std::string output;
};

CommandResult run_cli(const std::string& args, bool merge_stderr = false) {
  const std::string command = std::string(COINDIE_CLI_PATH) + " " + args +
                              (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  char buffer[4096];
  std::size_t bytes = 0;
  while ((bytes = fread(buffer, 1, sizeof(buffer), pipe)) > 0) output.append(buffer, bytes);
  const int status = pclose(pipe);
  const int exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {exit_code, output};
}

}  // namespace

TEST_CASE("params prints n, k, m, a, b") {
  const auto text = run_cli("params 6");
  CHECK(text.exit_code == 0);
  CHECK(text.output == "n 6\nk 2\nm 2\na 2\nb 6\n");

  const auto json = run_cli("params 4 --format json");
  CHECK(json.exit_code == 0);
  CHECK(nlohmann::json::parse(json.output) ==
        nlohmann::json::parse(R"({"n":4,"k":2,"m":0,"a":8,"b":8})"));
}

TEST_CASE("params rejects an invalid die with exit 2") {
  CHECK(run_cli("params 0").exit_code == 2);
  CHECK(run_cli("params 4294967297000").exit_code == 2);
  CHECK(run_cli("params").exit_code == 2);
}

TEST_CASE("scripted roll reproduces the pinned value and trace") {
  const auto value = run_cli("roll 6 --count 1 --biased-script H --fair-script HTTHHTT");
  CHECK(value.exit_code == 0);
  CHECK(value.output == "0\n");

  const auto trace = run_cli("roll 6 --count 1 --biased-script H --fair-script HTTHHTT --trace");
  CHECK(trace.exit_code == 0);
  CHECK(trace.output ==
        "value=0 biased=H fair=HTTHHTT coin_word=1 scaled=H low_word=3 high_word=0 "
        "branch=high\n");

  const auto json =
      run_cli("roll 6 --count 1 --biased-script H --fair-script HTTHHTT --format json");
  CHECK(nlohmann::json::parse(json.output) == nlohmann::json::parse(R"({"value":0})"));
}

TEST_CASE("script exhaustion exits 3 and reports consumed flips") {
  const auto result = run_cli("roll 6 --count 2 --biased-script H --fair-script HTTHHTT", true);
  CHECK(result.exit_code == 3);
  CHECK(result.output.find("0\n") != std::string::npos);  // first roll still printed
  CHECK(result.output.find("exhausted after 1 flips") != std::string::npos);
}

TEST_CASE("scripts can come from files") {
  const std::string dir = std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp";
  const std::string biased_path = dir + "/coindie_biased_script.txt";
  const std::string fair_path = dir + "/coindie_fair_script.txt";
  std::ofstream(biased_path) << "H\n";
  std::ofstream(fair_path) << "HTT HHTT\n";

  const auto result = run_cli("roll 6 --biased-script-file " + biased_path +
                              " --fair-script-file " + fair_path);
  CHECK(result.exit_code == 0);
  CHECK(result.output == "0\n");

  CHECK(run_cli("roll 6 --biased-script-file /nonexistent --fair-script H").exit_code == 2);
}

TEST_CASE("scripted rolls need both scripts") {
  CHECK(run_cli("roll 6 --fair-script HTTHHTT").exit_code == 2);
  CHECK(run_cli("roll 6 --biased-script H").exit_code == 2);
  // inline and file forms of the same script are mutually exclusive
  CHECK(run_cli("roll 6 --biased-script H --biased-script-file x --fair-script HTTHHTT")
            .exit_code == 2);
  // and so are seeds and scripts
  CHECK(run_cli("roll 6 --seed 1 --biased-script H --fair-script HTTHHTT").exit_code == 2);
}

TEST_CASE("unseeded rolls draw from system entropy") {
  const auto result = run_cli("roll 6 --count 20");
  CHECK(result.exit_code == 0);
  int lines = 0;
  for (std::size_t pos = 0; pos < result.output.size(); ++pos) {
    if (result.output[pos] == '\n') {
      ++lines;
    } else {
      CHECK(result.output[pos] >= '0');
      CHECK(result.output[pos] <= '5');
    }
  }
  CHECK(lines == 20);
}

TEST_CASE("rolling a one-sided die always prints 0") {
  const auto result = run_cli("roll 1 --count 5 --seed 7");
  CHECK(result.exit_code == 0);
  CHECK(result.output == "0\n0\n0\n0\n0\n");
}

TEST_CASE("seeded rolls are byte-identical across invocations") {
  const auto first = run_cli("roll 6 --count 10 --seed 1 --trace");
  const auto second = run_cli("roll 6 --count 10 --seed 1 --trace");
  CHECK(first.exit_code == 0);
  CHECK(first.output == second.output);
  CHECK(!first.output.empty());

  const auto different = run_cli("roll 6 --count 10 --seed 2 --trace");
  CHECK(first.output != different.output);
}

TEST_CASE("verify reports uniformity with exit 0") {
  const auto single = run_cli("verify 6");
  CHECK(single.exit_code == 0);
  CHECK(single.output == "n=6 uniform\n");

  const auto range = run_cli("verify --range 1..32");
  CHECK(range.exit_code == 0);
  CHECK(range.output.find("n=1 uniform\n") != std::string::npos);
  CHECK(range.output.find("n=32 uniform\n") != std::string::npos);

  const auto json = run_cli("verify 6 --format json");
  CHECK(nlohmann::json::parse(json.output) ==
        nlohmann::json::parse(R"([{"sides":6,"uniform":true}])"));
}

TEST_CASE("verify rejects requests beyond the enumeration bound with exit 2") {
  const auto result = run_cli("verify 100000000", true);
  CHECK(result.exit_code == 2);
  CHECK(result.output.find("enumeration bound") != std::string::npos);
}

TEST_CASE("verify needs exactly one of n and --range") {
  CHECK(run_cli("verify").exit_code == 2);
  CHECK(run_cli("verify 6 --range 1..4").exit_code == 2);
  CHECK(run_cli("verify --range 9..4").exit_code == 2);
  CHECK(run_cli("verify --range nonsense").exit_code == 2);
}

TEST_CASE("stats on a single-sided die reports a zero statistic") {
  const auto result = run_cli("stats 1 --samples 100 --seed 1 --format json");
  CHECK(result.exit_code == 0);
  const auto json = nlohmann::json::parse(result.output);
  CHECK(json["statistic"] == 0.0);
  CHECK(json["p_value"] == 1.0);
  CHECK(json["counts"] == nlohmann::json::array({100}));
}

TEST_CASE("stats rejects undersized samples with exit 2") {
  CHECK(run_cli("stats 6 --samples 50 --seed 1").exit_code == 2);
}

TEST_CASE("bench pins the exact two-coin budget") {
  const auto six = run_cli("bench 6 --samples 1000 --seed 1 --format json");
  CHECK(six.exit_code == 0);
  const auto six_json = nlohmann::json::parse(six.output);
  CHECK(six_json[0]["method"] == "two-coin");
  CHECK(six_json[0]["fair_flips"]["exact"] == true);
  CHECK(six_json[0]["fair_flips"]["min"] == 7);
  CHECK(six_json[0]["biased_flips"]["min"] == 1);

  const auto big = run_cli("bench 1024 --samples 10 --seed 1 --format json");
  const auto big_json = nlohmann::json::parse(big.output);
  CHECK(big_json[0]["fair_flips"]["exact"] == true);
  CHECK(big_json[0]["fair_flips"]["min"] == 31);

  const auto text = run_cli("bench 6 --samples 1000 --seed 1");
  CHECK(text.output.find("7 (exact)") != std::string::npos);
}

TEST_CASE("usage errors exit 2, help exits 0") {
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("roll 6 --bogus-flag").exit_code == 2);
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("roll --help").exit_code == 0);
}
