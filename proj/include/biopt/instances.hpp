#ifndef BIOPT_INSTANCES_HPP
#define BIOPT_INSTANCES_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "biopt/model.hpp"

namespace biopt {

/**
 * SplitMix64. Fixed and portable so every implementation regenerates
 * identical instances from the same seed.
 */
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// lo + next() mod (hi - lo + 1).
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);

 private:
  std::uint64_t state_;
};

enum class Family { Assignment, Knapsack };

std::string_view to_string(Family f);
/// Throws std::invalid_argument for unknown names.
Family family_from_string(std::string_view name);

struct GeneratorSpec {
  Family family = Family::Knapsack;
  int size = 1;
  std::uint64_t seed = 0;
  std::int64_t cost_lo = 1;
  std::int64_t cost_hi = 100;

  /// Throws std::invalid_argument when size < 1 or the cost range is empty or non-positive.
  void validate() const;
};

/**
 * n*n binary variables x[i*n + j]; row constraints first, then column
 * constraints; cost matrix 1 is drawn row-major before cost matrix 2.
 */
Problem gen_assignment(const GeneratorSpec& spec);

/**
 * n binary items. Weights are drawn first, then profits 1, then profits 2;
 * capacity is floor(total weight / 2); both profits are maximized.
 */
Problem gen_knapsack(const GeneratorSpec& spec);

/// Dispatches on spec.family.
Problem generate(const GeneratorSpec& spec);

/** Malformed instance text; carries a 1-based line and column. */
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

void write_instance(const Problem& p, std::ostream& out);
std::string write_instance(const Problem& p);
Problem read_instance(std::istream& in);
Problem read_instance_string(std::string_view text);

/// `f1 f2 : x1 ... xn` per point, user sense, f1 ascending.
void write_result(const Problem& p, const ParetoSet& front, std::ostream& out);

}  // namespace biopt

#endif  // BIOPT_INSTANCES_HPP
