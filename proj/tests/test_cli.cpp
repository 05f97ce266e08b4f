#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef KPPDR_CLI_PATH
#error "KPPDR_CLI_PATH must point at the CLI binary"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

// Runs the CLI with stdout captured in a temp file; stderr is left alone.
RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const std::string path = "cli_out_" + std::to_string(counter++) + ".txt";
  const std::string command = std::string(KPPDR_CLI_PATH) + " " + args + " > " + path;
  const int status = std::system(command.c_str());
  RunResult result;
  result.exit_code = WEXITSTATUS(status);
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  result.output = buffer.str();
  std::remove(path.c_str());
  return result;
}

nlohmann::json parse(const RunResult& r) { return nlohmann::json::parse(r.output); }

}  // namespace

TEST_CASE("optimal subcommand") {
  const RunResult r = run_cli("optimal --family symmetric --k 6 --n 3");
  REQUIRE(r.exit_code == 0);
  const auto j = parse(r);
  CHECK(j["slem"].get<double>() == doctest::Approx(0.8660254).epsilon(1e-7));
  for (const auto& p : j["probs"]) CHECK(p.get<double>() == doctest::Approx(1.0 / 6));
  CHECK(j["feasible"] == true);
}

TEST_CASE("slem subcommand matches the two-node closed form") {
  const RunResult r = run_cli("slem --family symmetric --k 2 --n 1 --probs 0.6666667");
  REQUIRE(r.exit_code == 0);
  const auto j = parse(r);
  CHECK(j["slem"].get<double>() == doctest::Approx(0.3333334).epsilon(1e-7));
  CHECK(j["spectrum"].size() == 2);
}

TEST_CASE("slem accepts the mh and optimal literals") {
  const RunResult r = run_cli("slem --family semi-symmetric --k 6 --n 3 --probs mh");
  REQUIRE(r.exit_code == 0);
  CHECK(parse(r)["slem"].get<double>() == doctest::Approx(0.9013878).epsilon(1e-6));
}

TEST_CASE("build subcommand prints the edge list") {
  const RunResult r = run_cli("build --family symmetric --k 2 --n 1");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output == "1,1  2,1  1  full\n");

  const RunResult big = run_cli("build --family cycle --k 8 --n 2");
  int lines = 0;
  for (char c : big.output) lines += c == '\n';
  CHECK(lines == 32);
}

TEST_CASE("mh subcommand") {
  const RunResult r = run_cli("mh --family semi-symmetric --k 6 --n 3");
  REQUIRE(r.exit_code == 0);
  for (const auto& p : parse(r)["probs"]) CHECK(p.get<double>() == 0.25);
}

TEST_CASE("certify subcommand") {
  const RunResult r = run_cli("certify --k 4 --n 1");
  REQUIRE(r.exit_code == 0);
  const auto j = parse(r);
  CHECK(j["max_residual"].get<double>() < 1e-8);
  CHECK(j["residuals"].size() == 11);
}

TEST_CASE("stratify subcommand") {
  const RunResult r = run_cli("stratify --family symmetric --k 3 --n 2 --probs 0.25,0.25");
  REQUIRE(r.exit_code == 0);
  const auto j = parse(r);
  CHECK(j["max_discrepancy"].get<double>() < 1e-9);
  CHECK(j["slem_in_quotient"] == true);
}

TEST_CASE("optimize subcommand") {
  const RunResult r = run_cli("optimize --family symmetric --k 3 --n 1 --seed 5");
  REQUIRE(r.exit_code == 0);
  const auto j = parse(r);
  CHECK(j["converged"] == true);
  CHECK(j["slem"].get<double>() == doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("simulate subcommand emits a deterministic trace") {
  const std::string args =
      "simulate --family symmetric --k 6 --n 3 --probs optimal --trials 20 --iters 10 --seed 9";
  const RunResult a = run_cli(args);
  const RunResult b = run_cli(args);
  REQUIRE(a.exit_code == 0);
  CHECK(a.output == b.output);
  CHECK(a.output.rfind("iteration,distance\n0,1\n", 0) == 0);
  int lines = 0;
  for (char c : a.output) lines += c == '\n';
  CHECK(lines == 12);  // header plus iterations 0..10
}

TEST_CASE("simulate accepts point-mass initialization") {
  const RunResult r = run_cli(
      "simulate --family symmetric --k 4 --n 2 --probs optimal --trials 5 --iters 5 --seed 2 "
      "--init point-mass");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.rfind("iteration,distance\n0,1\n", 0) == 0);
}

TEST_CASE("compare subcommand") {
  const char* specs = R"({
    "trials": 30, "iterations": 40, "seed": 11,
    "entries": [
      {"label": "symmetric-optimal", "family": "symmetric", "k": 6, "n": 3, "probs": "optimal"},
      {"label": "semi-optimal", "family": "semi-symmetric", "k": 6, "n": 3, "probs": "optimal"}
    ]
  })";
  std::ofstream("compare_specs.json") << specs;
  const RunResult r = run_cli("compare --specs compare_specs.json --traces-csv compare_traces.csv");
  std::remove("compare_specs.json");
  REQUIRE(r.exit_code == 0);
  const auto j = parse(r);
  CHECK(j["labels"].size() == 2);
  CHECK(j["tail_rates"].size() == 2);

  std::ifstream csv("compare_traces.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "label,iteration,distance");
  csv.close();
  std::remove("compare_traces.csv");
}

TEST_CASE("out flag writes to a file") {
  const RunResult r = run_cli("optimal --family cycle --k 4 --n 1 --out cli_out_file.json");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.empty());
  std::ifstream in("cli_out_file.json");
  REQUIRE(in.good());
  const auto j = nlohmann::json::parse(in);
  CHECK(j["slem"].get<double>() == doctest::Approx(1.0 / 3));
  in.close();
  std::remove("cli_out_file.json");
}

TEST_CASE("exit codes") {
  CHECK(run_cli("frobnicate").exit_code == 2);                                    // unknown command
  CHECK(run_cli("optimal --family symmetric --k 6").exit_code == 2);              // missing flag
  CHECK(run_cli("optimal --family ring --k 6 --n 3").exit_code == 2);             // bad family
  CHECK(run_cli("build --family semi-cycle --k 7 --n 1").exit_code == 2);         // invalid spec
  CHECK(run_cli("slem --family symmetric --k 3 --n 1 --probs 0.9,0.9").exit_code ==
        3);                                                                        // infeasible
  CHECK(run_cli("slem --family semi-symmetric --k 3 --n 1 --probs optimal").exit_code == 3);
  CHECK(run_cli("optimize --family symmetric --k 4 --n 2 --max-evals 10 --restarts 1")
            .exit_code == 5);                                                      // budget too small
  CHECK(run_cli("--help").exit_code == 0);
}
