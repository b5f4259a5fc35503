#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "biopt/bench.hpp"
#include "biopt/cli.hpp"
#include "biopt/instances.hpp"
#include "fixtures.hpp"

using namespace biopt;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "biopt");
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "biopt_cli_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string write_temp(const std::string& name, const Problem& p) {
  const auto path = scratch(name);
  std::ofstream(path) << write_instance(p);
  return path.string();
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("usage errors exit 2") {
  CHECK(run_cli({}).code == cli::kUsage);
  CHECK(run_cli({"frobnicate"}).code == cli::kUsage);
  CHECK(run_cli({"gen", "--family", "knapsack", "--size", "0"}).code == cli::kUsage);
  CHECK(run_cli({"gen", "--family", "tsp", "--size", "3"}).code == cli::kUsage);
  CHECK(run_cli({"gen", "--family", "knapsack", "--size", "3", "--range", "5"}).code == cli::kUsage);
  CHECK(run_cli({"gen", "--size", "3"}).code == cli::kUsage);
  const std::string t1 = write_temp("t1.boip", testing::t1());
  CHECK(run_cli({"solve", "--alg", "split", "--threads", "1", t1}).code == cli::kUsage);
  CHECK(run_cli({"solve", "--alg", "nope", t1}).code == cli::kUsage);
  CHECK(run_cli({"--help"}).code == cli::kOk);
}

TEST_CASE("gen writes to stdout or to a file") {
  const Outcome a = run_cli({"gen", "--family", "knapsack", "--size", "3", "--seed", "42"});
  CHECK(a.code == cli::kOk);
  CHECK(a.out == write_instance(generate({Family::Knapsack, 3, 42})));

  const auto path = scratch("gen.boip");
  const Outcome b = run_cli({"gen", "--family", "assignment", "--size", "2", "-o", path.string()});
  CHECK(b.code == cli::kOk);
  CHECK(b.out.find("4 variables, 4 constraints") != std::string::npos);
  CHECK(read_instance_string(slurp(path)) == generate({Family::Assignment, 2, 1}));
}

TEST_CASE("solve prints result lines and a footer") {
  const std::string t1 = write_temp("t1.boip", testing::t1());
  const auto result_path = scratch("t1.result");
  for (const std::string alg : {"seq", "split", "meet", "brute"}) {
    const Outcome r = run_cli({"solve", "--alg", alg, "-o", result_path.string(), t1});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.rfind("0 3 : 0 3\n1 2 : 1 2\n2 1 : 2 1\n3 0 : 3 0\n# pareto_size 4\n", 0) == 0);
    CHECK(slurp(result_path) == "0 3 : 0 3\n1 2 : 1 2\n2 1 : 2 1\n3 0 : 3 0\n");
  }
  CHECK(run_cli({"solve", t1}).out.find("# ip_solves 5\n") != std::string::npos);
}

TEST_CASE("solve exit codes") {
  CHECK(run_cli({"solve", write_temp("bad.boip", testing::infeasible())}).code == cli::kEmptyFront);
  CHECK(run_cli({"solve", scratch("does_not_exist.boip").string()}).code == cli::kIoError);
  const auto garbage = scratch("garbage.boip");
  std::ofstream(garbage) << "BOIP 1\nSENSE up down\n";
  const Outcome r = run_cli({"solve", garbage.string()});
  CHECK(r.code == cli::kIoError);
  CHECK(r.err.find("line 2") != std::string::npos);
}

TEST_CASE("verify agrees on a small instance") {
  const std::string k = write_temp("k.boip", generate({Family::Knapsack, 8, 2}));
  const Outcome r = run_cli({"verify", k});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("sequential: ok") != std::string::npos);
  CHECK(r.out.find("splitting: ok") != std::string::npos);
  CHECK(r.out.find("meeting: ok") != std::string::npos);
}

TEST_CASE("verify reports an injected fault with exit 4") {
  auto algorithms = cli::default_verify_set();
  algorithms.push_back({"dropper", [](const Problem& p) {
                          const BoipResult r = run_algorithm(Algorithm::Sequential, p);
                          std::vector<Solution> front(r.front.begin(), r.front.end());
                          front.pop_back();
                          return pareto_filter(front);
                        }});
  std::ostringstream out;
  std::ostringstream err;
  CHECK(cli::verify_problem(testing::t1(), algorithms, {}, out, err) == cli::kMismatch);
  CHECK(out.str().find("dropper: MISMATCH\n  missing: (3,0)") != std::string::npos);
  CHECK(out.str().find("meeting: ok") != std::string::npos);
}

TEST_CASE("verify refuses boxes over the enumeration budget") {
  const Problem big({std::vector<std::int64_t>(30, 1), std::vector<std::int64_t>(30, 1)}, {Sense::Min, Sense::Min},
                    std::vector<VarBounds>(30, {0, 1}), {});
  const Outcome r = run_cli({"verify", write_temp("big.boip", big)});
  CHECK(r.code == cli::kUsage);
  CHECK(r.err.find("1073741824") != std::string::npos);
}

TEST_CASE("bench writes csv and fails early on an unwritable destination") {
  const auto csv = scratch("bench.csv");
  const Outcome r = run_cli({"bench", "--sizes", "6", "--reps", "1", "--algs", "seq,meet", "--out", csv.string(),
                             "--no-warmup"});
  CHECK(r.code == cli::kOk);
  const std::string text = slurp(csv);
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);
  CHECK(r.out.find("meeting") != std::string::npos);

  CHECK(run_cli({"bench", "--sizes", "6", "--reps", "1", "--out", "/nonexistent_dir/x/bench.csv"}).code ==
        cli::kIoError);
  CHECK(run_cli({"bench", "--reps", "0"}).code == cli::kUsage);
}
