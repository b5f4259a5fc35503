#ifndef BIOPT_CLI_HPP
#define BIOPT_CLI_HPP

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "biopt/ipsolve.hpp"
#include "biopt/model.hpp"
#include "biopt/oracle.hpp"

namespace biopt::cli {

enum ExitCode : int {
  kOk = 0,
  kIoError = 1,
  kUsage = 2,
  kEmptyFront = 3,
  kMismatch = 4,
};

/// Entry point shared by the `biopt` binary and the tests. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct NamedAlgorithm {
  std::string name;
  std::function<ParetoSet(const Problem&)> solve;
};

/// The algorithms `verify` checks: sequential, splitting and meeting.
std::vector<NamedAlgorithm> default_verify_set(const SolverOptions& options = {});

/**
 * Compares every algorithm against the oracle. Returns kOk, kMismatch (with
 * a per-algorithm diff on `out`) or kUsage when the box is over budget.
 */
int verify_problem(const Problem& p, const std::vector<NamedAlgorithm>& algorithms,
                   const EnumerationBudget& budget, std::ostream& out, std::ostream& err);

}  // namespace biopt::cli

#endif  // BIOPT_CLI_HPP
