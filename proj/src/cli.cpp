#include "biopt/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include "biopt/bench.hpp"
#include "biopt/instances.hpp"

namespace biopt::cli {

namespace {

/** Usage problem detected after CLI11 accepted the flags. */
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("--range must look like lo:hi, got '" + text + "'");
  try {
    std::size_t used_lo = 0;
    std::size_t used_hi = 0;
    const std::int64_t lo = std::stoll(text.substr(0, colon), &used_lo);
    const std::int64_t hi = std::stoll(text.substr(colon + 1), &used_hi);
    if (used_lo != colon || used_hi != text.size() - colon - 1) throw std::invalid_argument(text);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw UsageError("--range must look like lo:hi, got '" + text + "'");
  }
}

Problem load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open '" + path + "'");
  return read_instance(in);
}

SolverOptions solver_options() {
  SolverOptions options;
  try {
    options.node_limit = node_limit_from_env();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return options;
}

void print_outcomes(const Problem& p, const std::vector<OutcomeVector>& points, std::ostream& out) {
  for (const auto& v : points) out << ' ' << to_user_sense(p, v);
}

// --- gen -------------------------------------------------------------------

struct GenArgs {
  std::string family;
  int size = 0;
  std::uint64_t seed = 1;
  std::string range = "1:100";
  std::string output;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  GeneratorSpec spec;
  try {
    spec.family = family_from_string(a.family);
    spec.size = a.size;
    spec.seed = a.seed;
    std::tie(spec.cost_lo, spec.cost_hi) = parse_range(a.range);
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const Problem p = generate(spec);
  if (a.output.empty()) {
    write_instance(p, out);
    return kOk;
  }
  std::ofstream file(a.output);
  write_instance(p, file);
  file.close();
  if (!file) throw std::ios_base::failure("cannot write '" + a.output + "'");
  out << a.output << ": " << p.num_vars() << " variables, " << p.constraints().size() << " constraints\n";
  return kOk;
}

// --- solve -----------------------------------------------------------------

struct SolveArgs {
  std::string algorithm = "seq";
  int threads = 0;  // 0: the algorithm's natural count
  std::string input;
  std::string output;
};

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  Algorithm alg;
  try {
    alg = algorithm_from_string(a.algorithm);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (a.threads != 0 && a.threads != threads_of(alg)) {
    throw UsageError(std::string(to_string(alg)) + " runs with exactly " + std::to_string(threads_of(alg)) +
                     " thread(s), got --threads " + std::to_string(a.threads));
  }
  AlgorithmOptions options;
  options.solver = solver_options();
  const Problem p = load(a.input);

  const auto start = std::chrono::steady_clock::now();
  const BoipResult result = run_algorithm(alg, p, options);
  const double elapsed =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  if (!a.output.empty()) {
    std::ofstream file(a.output);
    write_result(p, result.front, file);
    file.close();
    if (!file) throw std::ios_base::failure("cannot write '" + a.output + "'");
  }
  write_result(p, result.front, out);
  out << "# pareto_size " << result.front.size() << '\n';
  out << "# ip_solves " << result.stats.ip_solves << '\n';
  out << "# elapsed_ms " << std::fixed << std::setprecision(3) << elapsed << '\n';
  return result.front.empty() ? kEmptyFront : kOk;
}

// --- bench -----------------------------------------------------------------

struct BenchArgs {
  std::vector<std::string> families{"knapsack"};
  std::vector<int> sizes{12};
  int reps = 10;
  std::vector<std::string> algorithms{"seq", "split", "meet", "brute"};
  std::string output = "bench.csv";
  std::string summary_output;
  std::string range = "1:100";
  double time_limit_s = 0.0;
  bool no_warmup = false;
};

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  BenchConfig config;
  try {
    config.families.clear();
    for (const auto& f : a.families) config.families.push_back(family_from_string(f));
    config.sizes = a.sizes;
    config.reps = a.reps;
    config.algorithms.clear();
    for (const auto& s : a.algorithms) config.algorithms.push_back(algorithm_from_string(s));
    std::tie(config.cost_lo, config.cost_hi) = parse_range(a.range);
    if (a.time_limit_s > 0) {
      config.time_limit = std::chrono::milliseconds(static_cast<std::int64_t>(a.time_limit_s * 1000));
    }
    config.warmup = !a.no_warmup;
    config.validate();
    GeneratorSpec{Family::Knapsack, 1, 0, config.cost_lo, config.cost_hi}.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  config.node_limit = solver_options().node_limit;

  // Fail on an unwritable destination before spending time on the runs.
  std::ofstream csv(a.output);
  if (!csv) throw std::ios_base::failure("cannot write '" + a.output + "'");

  const auto records = run_bench(config, &err);
  write_csv(records, csv);
  csv.close();
  if (!csv) throw std::ios_base::failure("cannot write '" + a.output + "'");

  const auto summary = summarize(records);
  write_summary_table(summary, out);
  if (!a.summary_output.empty()) {
    std::ofstream file(a.summary_output);
    write_summary_csv(summary, file);
    file.close();
    if (!file) throw std::ios_base::failure("cannot write '" + a.summary_output + "'");
  }
  return kOk;
}

}  // namespace

std::vector<NamedAlgorithm> default_verify_set(const SolverOptions& options) {
  std::vector<NamedAlgorithm> set;
  for (const Algorithm a : {Algorithm::Sequential, Algorithm::Splitting, Algorithm::Meeting}) {
    set.push_back({std::string(to_string(a)), [a, options](const Problem& p) {
                     return run_algorithm(a, p, AlgorithmOptions{options, {}}).front;
                   }});
  }
  return set;
}

int verify_problem(const Problem& p, const std::vector<NamedAlgorithm>& algorithms,
                   const EnumerationBudget& budget, std::ostream& out, std::ostream& err) {
  const std::uint64_t size = lattice_size(p);
  if (size > budget.max_points) {
    err << "error: lattice has " << size << " points, enumeration budget is " << budget.max_points << '\n';
    return kUsage;
  }
  const ParetoSet oracle = brute_force_pareto(p, budget);
  const auto expected = oracle.outcomes();
  const std::set<OutcomeVector> expected_set(expected.begin(), expected.end());
  out << "oracle: " << oracle.size() << " non-dominated points\n";

  bool all_ok = true;
  for (const auto& alg : algorithms) {
    const auto got = alg.solve(p).outcomes();
    const std::set<OutcomeVector> got_set(got.begin(), got.end());
    std::vector<OutcomeVector> missing;
    std::vector<OutcomeVector> extra;
    std::set_difference(expected_set.begin(), expected_set.end(), got_set.begin(), got_set.end(),
                        std::back_inserter(missing));
    std::set_difference(got_set.begin(), got_set.end(), expected_set.begin(), expected_set.end(),
                        std::back_inserter(extra));
    if (missing.empty() && extra.empty()) {
      out << alg.name << ": ok (" << got_set.size() << " points)\n";
      continue;
    }
    all_ok = false;
    out << alg.name << ": MISMATCH\n";
    if (!missing.empty()) {
      out << "  missing:";
      print_outcomes(p, missing, out);
      out << '\n';
    }
    if (!extra.empty()) {
      out << "  extra:";
      print_outcomes(p, extra, out);
      out << '\n';
    }
  }
  return all_ok ? kOk : kMismatch;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact bi-objective integer programming: Pareto sets by the epsilon-constraint method"};
  app.name(args.empty() ? "biopt" : args[0]);
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
  gen_cmd->add_option("--family", gen.family, "assignment or knapsack")->required();
  gen_cmd->add_option("--size", gen.size, "Tasks (assignment) or items (knapsack)")->required();
  gen_cmd->add_option("--seed", gen.seed, "Generator seed")->capture_default_str();
  gen_cmd->add_option("--range", gen.range, "Inclusive cost range lo:hi")->capture_default_str();
  gen_cmd->add_option("-o,--output", gen.output, "Instance file (default: standard output)");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Compute the non-dominated set of an instance");
  solve_cmd->add_option("--alg", solve.algorithm, "seq, split, meet or brute")->capture_default_str();
  solve_cmd->add_option("--threads", solve.threads, "1 for seq/brute, 2 for split/meet");
  solve_cmd->add_option("-o,--output", solve.output, "Also write the result lines to this file");
  solve_cmd->add_option("file", solve.input, "Instance file")->required();

  std::string verify_input;
  std::uint64_t verify_budget = EnumerationBudget{}.max_points;
  auto* verify_cmd = app.add_subcommand("verify", "Cross-check every algorithm against brute force");
  verify_cmd->add_option("--max-points", verify_budget, "Enumeration budget")->capture_default_str();
  verify_cmd->add_option("file", verify_input, "Instance file")->required();

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Timed comparison of the algorithms");
  bench_cmd->add_option("--families", bench.families, "Comma-separated families")->delimiter(',');
  bench_cmd->add_option("--sizes", bench.sizes, "Comma-separated sizes")->delimiter(',');
  bench_cmd->add_option("--reps", bench.reps, "Seeded instances per size")->capture_default_str();
  bench_cmd->add_option("--algs", bench.algorithms, "Comma-separated algorithms")->delimiter(',');
  bench_cmd->add_option("--out", bench.output, "Per-run CSV")->capture_default_str();
  bench_cmd->add_option("--summary-out", bench.summary_output, "Summary CSV");
  bench_cmd->add_option("--range", bench.range, "Inclusive cost range lo:hi")->capture_default_str();
  bench_cmd->add_option("--time-limit", bench.time_limit_s, "Seconds per run (0: none)");
  bench_cmd->add_flag("--no-warmup", bench.no_warmup, "Skip the untimed warm-up run");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen, out);
    if (*solve_cmd) return cmd_solve(solve, out);
    if (*verify_cmd) {
      const auto options = solver_options();
      return verify_problem(load(verify_input), default_verify_set(options), EnumerationBudget{verify_budget},
                            out, err);
    }
    if (*bench_cmd) return cmd_bench(bench, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const VerificationError& e) {
    err << "error: " << e.what() << '\n';
    return kMismatch;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  }
  return kUsage;
}

}  // namespace biopt::cli
