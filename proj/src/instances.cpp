#include "biopt/instances.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include "biopt/checked.hpp"

namespace biopt {

std::int64_t SplitMix64::uniform(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(next() % span);
}

std::string_view to_string(Family f) {
  return f == Family::Assignment ? "assignment" : "knapsack";
}

Family family_from_string(std::string_view name) {
  if (name == "assignment") return Family::Assignment;
  if (name == "knapsack") return Family::Knapsack;
  throw std::invalid_argument("unknown family '" + std::string(name) + "'");
}

void GeneratorSpec::validate() const {
  if (size < 1) throw std::invalid_argument("size must be at least 1");
  if (cost_lo < 1 || cost_lo > cost_hi) {
    throw std::invalid_argument("cost range [" + std::to_string(cost_lo) + ", " +
                                std::to_string(cost_hi) + "] must be non-empty and positive");
  }
}

Problem gen_assignment(const GeneratorSpec& spec) {
  spec.validate();
  if (spec.family != Family::Assignment) throw std::invalid_argument("spec is not an assignment spec");
  const auto n = static_cast<std::size_t>(spec.size);
  SplitMix64 rng(spec.seed);
  std::array<std::vector<std::int64_t>, 2> costs;
  for (auto& c : costs) {
    c.resize(n * n);
    for (auto& v : c) v = rng.uniform(spec.cost_lo, spec.cost_hi);
  }
  std::vector<LinearConstraint> rows;
  for (std::size_t i = 0; i < n; ++i) {
    LinearConstraint row{std::vector<std::int64_t>(n * n, 0), Relation::Eq, 1};
    for (std::size_t j = 0; j < n; ++j) row.coeffs[i * n + j] = 1;
    rows.push_back(std::move(row));
  }
  for (std::size_t j = 0; j < n; ++j) {
    LinearConstraint col{std::vector<std::int64_t>(n * n, 0), Relation::Eq, 1};
    for (std::size_t i = 0; i < n; ++i) col.coeffs[i * n + j] = 1;
    rows.push_back(std::move(col));
  }
  return Problem(std::move(costs), {Sense::Min, Sense::Min}, std::vector<VarBounds>(n * n, {0, 1}),
                 std::move(rows));
}

Problem gen_knapsack(const GeneratorSpec& spec) {
  spec.validate();
  if (spec.family != Family::Knapsack) throw std::invalid_argument("spec is not a knapsack spec");
  const auto n = static_cast<std::size_t>(spec.size);
  SplitMix64 rng(spec.seed);
  std::vector<std::int64_t> weights(n);
  std::int64_t total = 0;
  for (auto& w : weights) {
    w = rng.uniform(spec.cost_lo, spec.cost_hi);
    total = checked_add(total, w);
  }
  std::array<std::vector<std::int64_t>, 2> profits;
  for (auto& pr : profits) {
    pr.resize(n);
    for (auto& v : pr) v = rng.uniform(spec.cost_lo, spec.cost_hi);
  }
  std::vector<LinearConstraint> rows{{std::move(weights), Relation::Le, total / 2}};
  return Problem(std::move(profits), {Sense::Max, Sense::Max}, std::vector<VarBounds>(n, {0, 1}),
                 std::move(rows));
}

Problem generate(const GeneratorSpec& spec) {
  return spec.family == Family::Assignment ? gen_assignment(spec) : gen_knapsack(spec);
}

// ---------------------------------------------------------------------------
// Instance file format

namespace {

std::string_view sense_name(Sense s) { return s == Sense::Min ? "min" : "max"; }

std::string_view relation_name(Relation r) {
  switch (r) {
    case Relation::Le:
      return "<=";
    case Relation::Ge:
      return ">=";
    case Relation::Eq:
      return "=";
  }
  return "?";
}

void write_row(std::ostream& out, std::string_view tag, std::span<const std::int64_t> values) {
  out << tag;
  for (const auto v : values) out << ' ' << v;
}

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

struct Line {
  std::size_t number = 0;
  std::vector<Token> tokens;
};

/** Splits input into non-empty lines of tokens with '#' comments removed. */
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  std::optional<Line> next() {
    while (std::getline(in_, buffer_)) {
      ++number_;
      if (const auto hash = buffer_.find('#'); hash != std::string::npos) buffer_.resize(hash);
      if (!buffer_.empty() && buffer_.back() == '\r') buffer_.pop_back();
      Line line{number_, {}};
      std::size_t i = 0;
      while (i < buffer_.size()) {
        while (i < buffer_.size() && (buffer_[i] == ' ' || buffer_[i] == '\t')) ++i;
        const std::size_t start = i;
        while (i < buffer_.size() && buffer_[i] != ' ' && buffer_[i] != '\t') ++i;
        if (i > start) line.tokens.push_back({std::string_view(buffer_).substr(start, i - start), start + 1});
      }
      if (!line.tokens.empty()) return line;
    }
    return std::nullopt;
  }

  Line expect(std::string_view what) {
    auto line = next();
    if (!line) throw ParseError(number_ + 1, 1, "unexpected end of file, expected " + std::string(what));
    return std::move(*line);
  }

  std::size_t line_number() const { return number_; }

 private:
  std::istream& in_;
  std::string buffer_;
  std::size_t number_ = 0;
};

std::int64_t parse_int(const Line& line, std::size_t index) {
  const Token& t = line.tokens[index];
  std::int64_t v = 0;
  const auto [end, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc() || end != t.text.data() + t.text.size()) {
    throw ParseError(line.number, t.column, "expected an integer, got '" + std::string(t.text) + "'");
  }
  return v;
}

void expect_keyword(const Line& line, std::string_view keyword) {
  if (line.tokens[0].text != keyword) {
    throw ParseError(line.number, line.tokens[0].column,
                     "expected '" + std::string(keyword) + "', got '" + std::string(line.tokens[0].text) + "'");
  }
}

void expect_arity(const Line& line, std::size_t count) {
  if (line.tokens.size() != count) {
    const std::size_t col =
        line.tokens.size() > count ? line.tokens[count].column : line.tokens.back().column;
    throw ParseError(line.number, col,
                     std::string(line.tokens[0].text) + " line has " + std::to_string(line.tokens.size() - 1) +
                         " fields, expected " + std::to_string(count - 1));
  }
}

Sense parse_sense(const Line& line, std::size_t index) {
  const Token& t = line.tokens[index];
  if (t.text == "min") return Sense::Min;
  if (t.text == "max") return Sense::Max;
  throw ParseError(line.number, t.column, "expected 'min' or 'max', got '" + std::string(t.text) + "'");
}

Relation parse_relation(const Line& line, std::size_t index) {
  const Token& t = line.tokens[index];
  if (t.text == "<=") return Relation::Le;
  if (t.text == ">=") return Relation::Ge;
  if (t.text == "=") return Relation::Eq;
  throw ParseError(line.number, t.column, "expected '<=', '>=' or '=', got '" + std::string(t.text) + "'");
}

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                         message),
      line_(line),
      column_(column) {}

void write_instance(const Problem& p, std::ostream& out) {
  out << "BOIP 1\n";
  out << "SENSE " << sense_name(p.sense(Objective::F1)) << ' ' << sense_name(p.sense(Objective::F2)) << '\n';
  out << "VARS " << p.num_vars() << '\n';
  write_row(out, "OBJ1", p.user_objective(Objective::F1));
  out << '\n';
  write_row(out, "OBJ2", p.user_objective(Objective::F2));
  out << '\n';
  const auto bounds = p.bounds();
  for (std::size_t j = 0; j < bounds.size(); ++j) {
    out << "B " << j << ' ' << bounds[j].lo << ' ' << bounds[j].hi << '\n';
  }
  out << "CONSTRAINTS " << p.constraints().size() << '\n';
  for (const auto& row : p.constraints()) {
    write_row(out, "ROW", row.coeffs);
    out << ' ' << relation_name(row.relation) << ' ' << row.rhs << '\n';
  }
}

std::string write_instance(const Problem& p) {
  std::ostringstream out;
  write_instance(p, out);
  return out.str();
}

Problem read_instance(std::istream& in) {
  LineReader reader(in);

  Line header = reader.expect("BOIP header");
  expect_keyword(header, "BOIP");
  expect_arity(header, 2);
  if (parse_int(header, 1) != 1) throw ParseError(header.number, header.tokens[1].column, "unsupported format version");

  Line sense = reader.expect("SENSE line");
  expect_keyword(sense, "SENSE");
  expect_arity(sense, 3);
  const std::array<Sense, 2> senses{parse_sense(sense, 1), parse_sense(sense, 2)};

  Line vars = reader.expect("VARS line");
  expect_keyword(vars, "VARS");
  expect_arity(vars, 2);
  const std::int64_t n = parse_int(vars, 1);
  if (n < 1) throw ParseError(vars.number, vars.tokens[1].column, "VARS must be positive");
  const auto count = static_cast<std::size_t>(n);

  std::array<std::vector<std::int64_t>, 2> objectives;
  for (int k = 0; k < 2; ++k) {
    const std::string tag = "OBJ" + std::to_string(k + 1);
    Line obj = reader.expect(tag + " line");
    expect_keyword(obj, tag);
    expect_arity(obj, count + 1);
    for (std::size_t j = 0; j < count; ++j) objectives[k].push_back(parse_int(obj, j + 1));
  }

  std::vector<VarBounds> bounds;
  for (std::size_t j = 0; j < count; ++j) {
    Line b = reader.expect("B line");
    expect_keyword(b, "B");
    expect_arity(b, 4);
    if (parse_int(b, 1) != static_cast<std::int64_t>(j)) {
      throw ParseError(b.number, b.tokens[1].column, "expected bounds for variable " + std::to_string(j));
    }
    const VarBounds vb{parse_int(b, 2), parse_int(b, 3)};
    if (vb.lo > vb.hi) throw ParseError(b.number, b.tokens[2].column, "lower bound exceeds upper bound");
    bounds.push_back(vb);
  }

  Line cons = reader.expect("CONSTRAINTS line");
  expect_keyword(cons, "CONSTRAINTS");
  expect_arity(cons, 2);
  const std::int64_t m = parse_int(cons, 1);
  if (m < 0) throw ParseError(cons.number, cons.tokens[1].column, "CONSTRAINTS must be non-negative");

  std::vector<LinearConstraint> rows;
  for (std::int64_t i = 0; i < m; ++i) {
    Line row = reader.expect("ROW line");
    expect_keyword(row, "ROW");
    expect_arity(row, count + 3);
    LinearConstraint c;
    for (std::size_t j = 0; j < count; ++j) c.coeffs.push_back(parse_int(row, j + 1));
    c.relation = parse_relation(row, count + 1);
    c.rhs = parse_int(row, count + 2);
    rows.push_back(std::move(c));
  }

  if (auto extra = reader.next()) {
    throw ParseError(extra->number, extra->tokens[0].column, "unexpected content after the last ROW");
  }
  try {
    return Problem(std::move(objectives), senses, std::move(bounds), std::move(rows));
  } catch (const std::exception& e) {
    throw ParseError(reader.line_number(), 1, e.what());
  }
}

Problem read_instance_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_instance(in);
}

void write_result(const Problem& p, const ParetoSet& front, std::ostream& out) {
  std::vector<std::pair<OutcomeVector, const Solution*>> rows;
  for (const auto& s : front) rows.emplace_back(to_user_sense(p, s.outcome), &s);
  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [v, s] : rows) {
    out << v.f1 << ' ' << v.f2 << " :";
    for (const auto x : s->assignment) out << ' ' << x;
    out << '\n';
  }
}

}  // namespace biopt
