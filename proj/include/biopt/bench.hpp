#ifndef BIOPT_BENCH_HPP
#define BIOPT_BENCH_HPP

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "biopt/algorithms.hpp"
#include "biopt/instances.hpp"
#include "biopt/oracle.hpp"

namespace biopt {

enum class Algorithm { Sequential, Splitting, Meeting, Brute };

/// Canonical names: sequential, splitting, meeting, brute.
std::string_view to_string(Algorithm a);
/// Accepts canonical names and the short forms seq, split, meet.
Algorithm algorithm_from_string(std::string_view name);
/// Worker threads the algorithm uses: 2 for splitting and meeting, otherwise 1.
int threads_of(Algorithm a);

struct AlgorithmOptions {
  SolverOptions solver;
  EnumerationBudget budget;
};

/// Runs `a` on `p` with fresh backends (branch-and-bound; enumeration for brute).
BoipResult run_algorithm(Algorithm a, const Problem& p, const AlgorithmOptions& options = {});

/** An algorithm disagreed with the oracle. */
class VerificationError : public std::runtime_error {
 public:
  explicit VerificationError(const std::string& what) : std::runtime_error(what) {}
};

struct BenchConfig {
  std::vector<Family> families{Family::Knapsack};
  std::vector<int> sizes{12};
  int reps = 10;
  std::vector<Algorithm> algorithms{Algorithm::Sequential, Algorithm::Splitting, Algorithm::Meeting,
                                    Algorithm::Brute};
  std::optional<std::chrono::milliseconds> time_limit;
  /// Instances whose box has at most this many points are cross-checked against the oracle.
  std::uint64_t oracle_max_points = 1u << 20;
  std::int64_t cost_lo = 1;
  std::int64_t cost_hi = 100;
  std::uint64_t node_limit = SolverOptions::kDefaultNodeLimit;
  bool warmup = true;

  void validate() const;
};

enum class RunStatus { Ok, TimedOut, Skipped };

struct BenchRecord {
  Family family = Family::Knapsack;
  int size = 0;
  std::uint64_t seed = 0;
  Algorithm algorithm = Algorithm::Sequential;
  int threads = 1;
  double elapsed_ms = 0.0;
  std::uint64_t ip_solves = 0;
  std::size_t pareto_size = 0;
  std::optional<bool> verified;  // set only when the oracle ran
  RunStatus status = RunStatus::Ok;
};

/**
 * For each family, size, seed 1..reps and algorithm: generate, time the
 * algorithm call alone, and cross-check oracle-sized instances. A mismatch
 * throws VerificationError. Progress lines go to `log` if given.
 */
std::vector<BenchRecord> run_bench(const BenchConfig& config, std::ostream* log = nullptr);

struct SummaryRow {
  Family family = Family::Knapsack;
  int size = 0;
  Algorithm algorithm = Algorithm::Sequential;
  std::size_t runs = 0;
  double mean_ms = 0.0;
  double stddev_ms = 0.0;
  double mean_ip_solves = 0.0;
  std::optional<double> speedup;  // mean(sequential) / mean(this)
};

/// Aggregates completed runs per (family, size, algorithm), in first-seen order.
std::vector<SummaryRow> summarize(const std::vector<BenchRecord>& records);

/// Header: family,size,seed,algorithm,threads,elapsed_ms,ip_solves,pareto_size,verified
void write_csv(const std::vector<BenchRecord>& records, std::ostream& out);
void write_summary_table(const std::vector<SummaryRow>& rows, std::ostream& out);
void write_summary_csv(const std::vector<SummaryRow>& rows, std::ostream& out);

}  // namespace biopt

#endif  // BIOPT_BENCH_HPP
