#include "biopt/bench.hpp"

#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <tuple>

namespace biopt {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Sequential:
      return "sequential";
    case Algorithm::Splitting:
      return "splitting";
    case Algorithm::Meeting:
      return "meeting";
    case Algorithm::Brute:
      return "brute";
  }
  return "?";
}

Algorithm algorithm_from_string(std::string_view name) {
  if (name == "sequential" || name == "seq") return Algorithm::Sequential;
  if (name == "splitting" || name == "split") return Algorithm::Splitting;
  if (name == "meeting" || name == "meet") return Algorithm::Meeting;
  if (name == "brute") return Algorithm::Brute;
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

int threads_of(Algorithm a) {
  return a == Algorithm::Splitting || a == Algorithm::Meeting ? 2 : 1;
}

BoipResult run_algorithm(Algorithm a, const Problem& p, const AlgorithmOptions& options) {
  switch (a) {
    case Algorithm::Sequential: {
      BranchAndBoundBackend backend(options.solver);
      return sequential_boip(p, backend);
    }
    case Algorithm::Splitting: {
      BranchAndBoundBackend w1(options.solver);
      BranchAndBoundBackend w2(options.solver);
      SolverBackend* backends[] = {&w1, &w2};
      return splitting_boip(p, backends);
    }
    case Algorithm::Meeting: {
      BranchAndBoundBackend w1(options.solver);
      BranchAndBoundBackend w2(options.solver);
      return meeting_boip(p, w1, w2);
    }
    case Algorithm::Brute: {
      BoipResult out;
      out.front = brute_force_pareto(p, options.budget);
      out.stats.pareto_size = out.front.size();
      return out;
    }
  }
  throw std::logic_error("unhandled algorithm");
}

void BenchConfig::validate() const {
  if (reps < 1) throw std::invalid_argument("reps must be at least 1");
  if (families.empty()) throw std::invalid_argument("no families selected");
  if (sizes.empty()) throw std::invalid_argument("no sizes selected");
  if (algorithms.empty()) throw std::invalid_argument("no algorithms selected");
  for (const int s : sizes) {
    if (s < 1) throw std::invalid_argument("sizes must be positive");
  }
  if (time_limit && time_limit->count() <= 0) throw std::invalid_argument("time limit must be positive");
}

namespace {

using Clock = std::chrono::steady_clock;

struct Timed {
  BoipResult result;
  double elapsed_ms = 0.0;
  RunStatus status = RunStatus::Ok;
};

Timed timed_run(Algorithm a, const Problem& p, const BenchConfig& config) {
  AlgorithmOptions options;
  options.solver.node_limit = config.node_limit;
  const auto start = Clock::now();
  if (config.time_limit) options.solver.deadline = start + *config.time_limit;
  if (a == Algorithm::Brute) options.budget.max_points = config.oracle_max_points;

  Timed out;
  try {
    out.result = run_algorithm(a, p, options);
  } catch (const TimeLimitExceeded&) {
    out.status = RunStatus::TimedOut;
  } catch (const BudgetExceeded&) {
    out.status = RunStatus::Skipped;
  }
  out.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return out;
}

}  // namespace

std::vector<BenchRecord> run_bench(const BenchConfig& config, std::ostream* log) {
  config.validate();
  std::vector<BenchRecord> records;
  for (const Family family : config.families) {
    for (const int size : config.sizes) {
      auto make = [&](std::uint64_t seed) {
        return generate(GeneratorSpec{family, size, seed, config.cost_lo, config.cost_hi});
      };
      if (config.warmup) {
        (void)timed_run(config.algorithms.front(), make(1), config);
      }
      for (int rep = 1; rep <= config.reps; ++rep) {
        const auto seed = static_cast<std::uint64_t>(rep);
        const Problem p = make(seed);
        std::optional<ParetoSet> oracle;
        if (lattice_size(p) <= config.oracle_max_points) {
          oracle = brute_force_pareto(p, EnumerationBudget{config.oracle_max_points});
        }
        for (const Algorithm a : config.algorithms) {
          Timed run = timed_run(a, p, config);
          BenchRecord rec;
          rec.family = family;
          rec.size = size;
          rec.seed = seed;
          rec.algorithm = a;
          rec.threads = threads_of(a);
          rec.elapsed_ms = run.elapsed_ms;
          rec.status = run.status;
          if (run.status == RunStatus::Ok) {
            rec.ip_solves = run.result.stats.ip_solves;
            rec.pareto_size = run.result.front.size();
            if (oracle) {
              rec.verified = run.result.front.same_outcomes(*oracle);
              if (!*rec.verified) {
                throw VerificationError(std::string(to_string(a)) + " disagrees with the oracle on " +
                                        std::string(to_string(family)) + " size " + std::to_string(size) +
                                        " seed " + std::to_string(seed));
              }
            }
          }
          if (log) {
            *log << to_string(family) << ' ' << size << " seed " << seed << ' ' << to_string(a) << ": "
                 << std::fixed << std::setprecision(1) << rec.elapsed_ms << " ms";
            if (rec.status == RunStatus::TimedOut) *log << " (timed out)";
            if (rec.status == RunStatus::Skipped) *log << " (skipped)";
            *log << '\n';
          }
          records.push_back(rec);
        }
      }
    }
  }
  return records;
}

std::vector<SummaryRow> summarize(const std::vector<BenchRecord>& records) {
  using Key = std::tuple<Family, int, Algorithm>;
  std::vector<Key> order;
  std::map<Key, std::vector<const BenchRecord*>> groups;
  for (const auto& r : records) {
    if (r.status != RunStatus::Ok) continue;
    const Key k{r.family, r.size, r.algorithm};
    auto [it, inserted] = groups.try_emplace(k);
    if (inserted) order.push_back(k);
    it->second.push_back(&r);
  }

  std::vector<SummaryRow> rows;
  for (const auto& k : order) {
    const auto& g = groups[k];
    SummaryRow row;
    std::tie(row.family, row.size, row.algorithm) = k;
    row.runs = g.size();
    double sum = 0.0;
    double solves = 0.0;
    for (const auto* r : g) {
      sum += r->elapsed_ms;
      solves += static_cast<double>(r->ip_solves);
    }
    row.mean_ms = sum / static_cast<double>(g.size());
    row.mean_ip_solves = solves / static_cast<double>(g.size());
    if (g.size() > 1) {
      double sq = 0.0;
      for (const auto* r : g) sq += (r->elapsed_ms - row.mean_ms) * (r->elapsed_ms - row.mean_ms);
      row.stddev_ms = std::sqrt(sq / static_cast<double>(g.size() - 1));
    }
    rows.push_back(row);
  }
  for (auto& row : rows) {
    for (const auto& base : rows) {
      if (base.family == row.family && base.size == row.size && base.algorithm == Algorithm::Sequential &&
          row.mean_ms > 0.0) {
        row.speedup = base.mean_ms / row.mean_ms;
      }
    }
  }
  return rows;
}

void write_csv(const std::vector<BenchRecord>& records, std::ostream& out) {
  out << "family,size,seed,algorithm,threads,elapsed_ms,ip_solves,pareto_size,verified\n";
  for (const auto& r : records) {
    out << to_string(r.family) << ',' << r.size << ',' << r.seed << ',' << to_string(r.algorithm) << ','
        << r.threads << ',' << std::fixed << std::setprecision(3) << r.elapsed_ms << ',' << r.ip_solves
        << ',' << r.pareto_size << ',';
    switch (r.status) {
      case RunStatus::TimedOut:
        out << "timeout";
        break;
      case RunStatus::Skipped:
        out << "skipped";
        break;
      case RunStatus::Ok:
        if (r.verified) out << (*r.verified ? "true" : "false");
        break;
    }
    out << '\n';
  }
}

void write_summary_table(const std::vector<SummaryRow>& rows, std::ostream& out) {
  out << std::left << std::setw(11) << "family" << std::right << std::setw(6) << "size" << "  " << std::left
      << std::setw(11) << "algorithm" << std::right << std::setw(5) << "runs" << std::setw(12) << "mean_ms"
      << std::setw(12) << "stddev_ms" << std::setw(10) << "ip_mean" << std::setw(9) << "speedup" << '\n';
  for (const auto& r : rows) {
    out << std::left << std::setw(11) << to_string(r.family) << std::right << std::setw(6) << r.size << "  "
        << std::left << std::setw(11) << to_string(r.algorithm) << std::right << std::setw(5) << r.runs
        << std::fixed << std::setprecision(2) << std::setw(12) << r.mean_ms << std::setw(12) << r.stddev_ms
        << std::setw(10) << std::setprecision(1) << r.mean_ip_solves << std::setw(9);
    if (r.speedup) {
      out << std::setprecision(2) << *r.speedup;
    } else {
      out << "-";
    }
    out << '\n';
  }
}

void write_summary_csv(const std::vector<SummaryRow>& rows, std::ostream& out) {
  out << "family,size,algorithm,runs,mean_ms,stddev_ms,mean_ip_solves,speedup\n";
  for (const auto& r : rows) {
    out << to_string(r.family) << ',' << r.size << ',' << to_string(r.algorithm) << ',' << r.runs << ','
        << std::fixed << std::setprecision(3) << r.mean_ms << ',' << r.stddev_ms << ',' << r.mean_ip_solves
        << ',';
    if (r.speedup) out << std::setprecision(4) << *r.speedup;
    out << '\n';
  }
}

}  // namespace biopt
