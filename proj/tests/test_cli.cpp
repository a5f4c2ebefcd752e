#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "spinpart/serialize.hpp"

using namespace spinpart;
using namespace spinpart::cli;

namespace {

RunResult run_args(const std::vector<std::string>& args, int* parse_code = nullptr) {
  const auto parsed = parse_args(args);
  if (parse_code) *parse_code = parsed.exit_code;
  if (!parsed.config) return RunResult{parsed.exit_code, "", parsed.message};
  return run(*parsed.config);
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("spinpart_cli_test_" + name);
}

}  // namespace

TEST_CASE("analyze GHZ over all partitions") {
  const auto r = run_args({"analyze", "--state", "ghz", "--n", "3", "--theta", "0.7853981633974483", "--partitions",
                           "all"});
  REQUIRE(r.exit_code == kOk);
  const auto doc = nlohmann::json::parse(r.output);
  CHECK(doc["summary"] == "fully inseparable Class I");
  CHECK(doc["reports"].size() == 3);
  CHECK(doc["counts"]["class1"] == 3);
  CHECK(doc["state"]["family"] == "ghz");
  CHECK(doc["reports"][0]["p1"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("analyze example3 shows the undetected and Class II partitions") {
  const auto r = run_args({"analyze", "--state", "example3", "--partitions", "all"});
  REQUIRE(r.exit_code == kOk);
  const auto doc = nlohmann::json::parse(r.output);
  bool saw_undetected = false, saw_class2 = false;
  for (const auto& rep : doc["reports"]) {
    const auto& label = rep["partition"]["label"];
    if (label == "(23,1)") {
      saw_undetected = !rep["verdicts"]["class1_entangled"].get<bool>() &&
                       !rep["verdicts"]["class2_entangled"].get<bool>();
    }
    if (label == "(12,3)") saw_class2 = rep["verdicts"]["class2_entangled"].get<bool>();
  }
  CHECK(saw_undetected);
  CHECK(saw_class2);
}

TEST_CASE("human output carries the verdict sentence") {
  const auto r = run_args({"analyze", "--state", "w", "--n", "3", "--format", "human"});
  REQUIRE(r.exit_code == kOk);
  CHECK(r.output.find("Class I detected on 0/3 partitions") != std::string::npos);
  CHECK(r.output.find("Class II detected on 3/3 partitions") != std::string::npos);
}

TEST_CASE("scan-werner CSV") {
  const auto r = run_args({"scan-werner", "--n-min", "2", "--n-max", "4"});
  REQUIRE(r.exit_code == kOk);
  std::istringstream in(r.output);
  std::string line;
  std::getline(in, line);
  CHECK(line == "n,n_a,p_min_class1,p_min_ppt");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 4);
  CHECK(r.output.find('\r') == std::string::npos);
}

TEST_CASE("JSON output is canonical and deterministic") {
  const std::vector<std::vector<std::string>> commands{
      {"analyze", "--state", "separable_random", "--n", "3", "--seed", "5"},
      {"moment-matrix", "--state", "pure_random", "--n", "3", "--seed", "2", "--max-degree", "1"},
      {"minors", "--state", "w", "--n", "3"},
      {"cartesian-check", "--state", "pure_random", "--n", "2", "--seed", "8"},
      {"scan-werner", "--n-min", "2", "--n-max", "3", "--format", "json"},
  };
  for (const auto& args : commands) {
    const auto first = run_args(args);
    const auto second = run_args(args);
    REQUIRE(first.exit_code == kOk);
    CHECK(first.output == second.output);
    CHECK(canonical_json(first.output) == first.output);
  }
}

TEST_CASE("moment-matrix and minors defaults") {
  const auto mm = nlohmann::json::parse(run_args({"moment-matrix", "--state", "w", "--n", "3"}).output);
  CHECK(mm["partition"]["label"] == "(12,3)");
  CHECK(mm["dimension"] == 15);
  const auto minors = nlohmann::json::parse(run_args({"minors", "--state", "w", "--n", "3", "--max-degree", "0"}).output);
  CHECK(minors["max_order"] == 1);
  CHECK(minors["certified"] == false);
}

TEST_CASE("state file and output file") {
  const auto state = temp_path("state.json");
  const auto out = temp_path("out.json");
  {
    std::ofstream f(state);
    f << R"({"family": "werner", "n": 3, "p": 0.9})";
  }
  const auto r = run_args({"analyze", "--state-file", state.string(), "--n-a", "1", "-o", out.string()});
  REQUIRE(r.exit_code == kOk);
  std::ifstream f(out);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() == r.output);
  CHECK(nlohmann::json::parse(r.output)["reports"].size() == 1);
  std::filesystem::remove(state);
  std::filesystem::remove(out);
}

TEST_CASE("exit codes") {
  int code = -1;
  CHECK(run_args({"analyze", "--nonsense"}, &code).exit_code == kInvalidConfig);
  CHECK(run_args({}).exit_code == kInvalidConfig);
  CHECK(run_args({"analyze", "--state", "ghz", "--n", "3"}).exit_code == kInvalidConfig);
  CHECK(run_args({"analyze", "--state", "w", "--n", "3", "--partitions", "1,2,3"}).exit_code == kInvalidConfig);
  CHECK(run_args({"analyze", "--state", "w", "--n", "3", "--format", "xml"}).exit_code == kInvalidConfig);
  CHECK(run_args({"analyze", "--state", "w", "--n", "3", "--state-file", "x.json"}).exit_code == kInvalidConfig);
  CHECK(run_args({"moment-matrix", "--state", "w", "--n", "3", "--max-degree", "4", "--word-cap", "10"}).exit_code ==
        kInvalidConfig);
  CHECK(run_args({"cartesian-check", "--state", "w", "--n", "3"}).exit_code == kInvalidConfig);
  CHECK(run_args({"analyze", "--state-file", "/nonexistent/spinpart.json"}).exit_code == kIoFailure);
  CHECK(run_args({"analyze", "--state", "w", "--n", "3", "-o", "/nonexistent/dir/out.json"}).exit_code ==
        kIoFailure);
  CHECK(run_args({"scan-werner", "--n-max", "20"}).exit_code == kInvalidConfig);
  CHECK(run_args({"analyze", "--help"}, &code).exit_code == kOk);
}

TEST_CASE("explicit partitions") {
  const auto r = run_args({"analyze", "--state", "example3", "--partitions", "1;2,3"});
  REQUIRE(r.exit_code == kOk);
  const auto doc = nlohmann::json::parse(r.output);
  REQUIRE(doc["reports"].size() == 2);
  CHECK(doc["reports"][0]["p1"].get<double>() == doctest::Approx(-4.0));
  CHECK(doc["reports"][1]["p1"].get<double>() == doctest::Approx(0.0));
}
