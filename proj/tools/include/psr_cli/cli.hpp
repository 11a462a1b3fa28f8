#pragma once

// Building blocks of psrtool: CSV and INI input, rule resolution, and the
// score / divergence / verify / grid-score commands. Commands read and write
// streams so they can be driven from tests without touching the filesystem.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "psr/entropy.hpp"
#include "psr/scoring_rules.hpp"

namespace psr::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int verify_failed = 1;
inline constexpr int malformed_input = 2;
inline constexpr int invalid_density = 3;
inline constexpr int unknown_rule = 4;
}  // namespace exit_code

class CliError : public std::runtime_error {
 public:
  CliError(int code, const std::string& message) : std::runtime_error(message), code_(code) {}
  int code() const noexcept { return code_; }

 private:
  int code_;
};

// ---- CSV ------------------------------------------------------------------

struct NumericTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::vector<std::size_t> lines;  // 1-based source line of each row
};

// Comma-separated, header row required, no quoting. Blank lines are skipped.
// Accepts inf / -inf. Throws CliError(malformed_input) naming the line.
NumericTable read_numeric_csv(std::istream& in, const std::string& source);

// One value per line with an optional non-numeric header line.
std::vector<double> read_value_column(std::istream& in, const std::string& source);

// Shortest text that reads back to the same double; inf / -inf / nan.
std::string format_number(double x);

// ---- rules and configuration ------------------------------------------------

struct RuleSpec {
  std::string label;  // column / report name
  std::string spec;   // "quadratic", "power(1.5)", "linear", ...
  std::optional<double> tol;
  std::optional<std::size_t> samples;
};

// Splits "quadratic, power(1.5), weighted_quadratic(2,0,0,3)" at top-level
// commas. Throws CliError(malformed_input) when the list is empty.
std::vector<RuleSpec> parse_rule_list(std::string_view list);

struct ResolvedRule {
  RuleSpec spec;
  ScoringRule rule;
  std::optional<Entropy> entropy;  // empty for the linear control rule
};

// Unknown names give CliError(unknown_rule); bad parameters give
// CliError(malformed_input).
ResolvedRule resolve_rule(const RuleSpec& spec);
std::vector<ResolvedRule> resolve_rules(const std::vector<RuleSpec>& specs);

inline const std::set<std::string> kAllSuites{"propriety", "euler", "cone", "symmetry", "probe"};

struct RunConfig {
  std::vector<RuleSpec> rules;
  std::uint64_t seed = 42;
  std::size_t samples = 1000;
  double tol = 1e-10;
  std::vector<std::size_t> dims{2, 5, 20};
  std::optional<std::vector<double>> weights;
  std::set<std::string> suites{"propriety", "euler", "cone", "symmetry"};
};

// The catalog rules with the defaults above.
RunConfig default_config();

// INI text:
//
//   [general]
//   seed = 42
//   samples = 1000
//   tol = 1e-10
//   dims = 2, 5, 20
//   weights = 1, 2, 1          ; or weights_file = path
//   suites = propriety, euler, symmetry
//
//   [quadratic]                ; one section per rule
//   [cubic]
//   entropy = power(3)         ; defaults to the section name
//   tol = 1e-9
//
// A `rules = ...` key in [general] adds rules without sections. Throws
// CliError(malformed_input) on parse errors; an empty rule list is rejected
// later, when the rules are resolved.
RunConfig parse_config(std::istream& in, const std::string& source,
                       const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

// ---- commands -------------------------------------------------------------

// forecasts: header p1..pn, one density per row; outcomes: one 1-based
// outcome index per row. Writes forecast_id, outcome, <rule>_score,
// <rule>_entropy per rule, then `mean` and `inf_count` footer rows.
void run_score(const RunConfig& config, std::istream& forecasts, const std::string& forecasts_name,
               std::istream& outcomes, const std::string& outcomes_name, std::ostream& out);

// rule, row, q1..qm: the matrix D(p_i, q_j) for each rule.
void run_divergence(const RunConfig& config, std::istream& p, const std::string& p_name, std::istream& q,
                    const std::string& q_name, std::ostream& out);

// Writes the JSON report; returns ok or verify_failed.
int run_verify(const RunConfig& config, std::ostream& out);

// Hyvarinen score of a positive grid density: index, x, value, score rows
// and a fisher_entropy footer; with `p`, also the divergence D(p, q).
void run_grid_score(std::istream& q, const std::string& q_name, std::istream* p, const std::string& p_name,
                    std::ostream& out);

}  // namespace psr::cli
