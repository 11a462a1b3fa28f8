#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>

#include "psr_cli/cli.hpp"

namespace psr::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = line.find(',');
    out.push_back(trim(line.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return out;
}

std::optional<double> parse_double(std::string_view s) {
  if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || std::isnan(x)) return std::nullopt;
  return x;
}

[[noreturn]] void malformed(const std::string& source, std::size_t line, const std::string& what) {
  throw CliError(exit_code::malformed_input, fmt::format("{}:{}: {}", source, line, what));
}

}  // namespace

NumericTable read_numeric_csv(std::istream& in, const std::string& source) {
  NumericTable table;
  std::string line;
  std::size_t number = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++number;
    if (trim(line).empty()) continue;
    const auto fields = split(line);
    if (!have_header) {
      for (auto f : fields) {
        if (f.empty()) malformed(source, number, "empty column name in header");
        table.header.emplace_back(f);
      }
      have_header = true;
      continue;
    }
    if (fields.size() != table.header.size()) {
      malformed(source, number,
                fmt::format("expected {} fields, found {}", table.header.size(), fields.size()));
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const auto x = parse_double(fields[c]);
      if (!x) malformed(source, number, fmt::format("column {}: '{}' is not a number", c + 1, fields[c]));
      row.push_back(*x);
    }
    table.rows.push_back(std::move(row));
    table.lines.push_back(number);
  }
  if (!have_header) malformed(source, number == 0 ? 1 : number, "missing header row");
  return table;
}

std::vector<double> read_value_column(std::istream& in, const std::string& source) {
  std::vector<double> out;
  std::string line;
  std::size_t number = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++number;
    const auto t = trim(line);
    if (t.empty()) continue;
    const auto x = parse_double(t);
    if (!x) {
      if (first) {
        first = false;
        continue;
      }
      malformed(source, number, fmt::format("'{}' is not a number", t));
    }
    first = false;
    out.push_back(*x);
  }
  if (out.empty()) malformed(source, number == 0 ? 1 : number, "no values");
  return out;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{}", x);
}

}  // namespace psr::cli
