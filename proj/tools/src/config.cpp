#include <fmt/format.h>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

#include "psr_cli/cli.hpp"

namespace psr::cli {

namespace pt = boost::property_tree;

namespace {

const std::set<std::string> kRuleNames{"quadratic", "spherical", "shannon", "power",
                                       "pseudospherical", "weighted_quadratic", "linear"};

std::string trimmed(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  while (true) {
    const auto comma = s.find(',');
    std::string item = trimmed(s.substr(0, comma));
    if (!item.empty()) out.push_back(std::move(item));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

[[noreturn]] void bad(const std::string& source, const std::string& what) {
  throw CliError(exit_code::malformed_input, fmt::format("{}: {}", source, what));
}

template <class T>
T parse_number(const std::string& source, const std::string& key, const std::string& text) {
  T x{};
  const std::string t = trimmed(text);
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), x);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    bad(source, fmt::format("{}: '{}' is not a valid number", key, text));
  }
  return x;
}

std::vector<double> parse_weights(const std::string& source, const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::string flat = text;
  for (char& c : flat) {
    if (c == '\n' || c == '\r') c = ',';
  }
  for (const auto& item : split_list(flat)) {
    const double w = parse_number<double>(source, key, item);
    if (!(w > 0.0) || !std::isfinite(w)) bad(source, fmt::format("{}: weights must be positive and finite", key));
    out.push_back(w);
  }
  if (out.empty()) bad(source, fmt::format("{}: no weights given", key));
  return out;
}

std::string rule_name(std::string_view spec) {
  const auto open = spec.find('(');
  return trimmed(spec.substr(0, open));
}

std::string label_for(std::string_view spec) {
  std::string label = trimmed(spec);
  for (char& c : label) {
    if (c == ',') c = ';';
  }
  label.erase(std::remove(label.begin(), label.end(), ' '), label.end());
  return label;
}

}  // namespace

std::vector<RuleSpec> parse_rule_list(std::string_view list) {
  std::vector<RuleSpec> out;
  int depth = 0;
  std::size_t start = 0;
  auto flush = [&](std::size_t end) {
    const std::string item = trimmed(list.substr(start, end - start));
    if (!item.empty()) out.push_back(RuleSpec{label_for(item), item, std::nullopt, std::nullopt});
  };
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (list[i] == '(') ++depth;
    if (list[i] == ')') --depth;
    if (depth < 0) throw CliError(exit_code::malformed_input, fmt::format("unbalanced ')' in rule list '{}'", list));
    if (list[i] == ',' && depth == 0) {
      flush(i);
      start = i + 1;
    }
  }
  if (depth != 0) throw CliError(exit_code::malformed_input, fmt::format("unbalanced '(' in rule list '{}'", list));
  flush(list.size());
  if (out.empty()) throw CliError(exit_code::malformed_input, "empty rule list: nothing to evaluate");
  return out;
}

ResolvedRule resolve_rule(const RuleSpec& spec) {
  const std::string name = rule_name(spec.spec);
  if (!kRuleNames.count(name)) {
    throw CliError(exit_code::unknown_rule, fmt::format("unknown rule '{}'", spec.spec));
  }
  if (name == "linear") {
    if (trimmed(spec.spec) != "linear") {
      throw CliError(exit_code::malformed_input, "the linear rule takes no parameters");
    }
    ScoringRule r = linear_score_rule();
    return ResolvedRule{spec, ScoringRule(spec.label, [r](const Density& q) { return r(q); }), std::nullopt};
  }
  try {
    const Entropy e = parse_entropy(spec.spec);
    const ScoringRule base = make_psr(e);
    return ResolvedRule{spec, ScoringRule(spec.label, [base](const Density& q) { return base(q); }, e), e};
  } catch (const ConstructionError& err) {
    throw CliError(exit_code::malformed_input, fmt::format("rule '{}': {}", spec.spec, err.what()));
  }
}

std::vector<ResolvedRule> resolve_rules(const std::vector<RuleSpec>& specs) {
  if (specs.empty()) throw CliError(exit_code::malformed_input, "empty rule list: nothing to evaluate");
  std::vector<ResolvedRule> out;
  std::set<std::string> seen;
  for (const auto& s : specs) {
    if (!seen.insert(s.label).second) {
      throw CliError(exit_code::malformed_input, fmt::format("rule '{}' listed twice", s.label));
    }
    out.push_back(resolve_rule(s));
  }
  return out;
}

RunConfig default_config() {
  RunConfig c;
  for (const auto& name : default_catalog()) c.rules.push_back(RuleSpec{name, name, std::nullopt, std::nullopt});
  return c;
}

RunConfig parse_config(std::istream& in, const std::string& source, const std::filesystem::path& base_dir) {
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  pt::ptree tree;
  try {
    std::istringstream s(text);
    pt::read_ini(s, tree);
  } catch (const pt::ini_parser_error& e) {
    bad(fmt::format("{}:{}", source, e.line()), e.message());
  }
  for (const auto& [key, node] : tree) {
    if (node.empty() && !node.data().empty()) bad(source, fmt::format("key '{}' outside a section", key));
  }

  // read_ini drops sections with no keys, so take the section list from the text.
  std::vector<std::string> sections;
  {
    std::istringstream s(text);
    std::string line;
    while (std::getline(s, line)) {
      const std::string t = trimmed(line);
      if (t.size() >= 2 && t.front() == '[' && t.back() == ']') sections.push_back(trimmed(t.substr(1, t.size() - 2)));
    }
  }

  RunConfig c;
  const pt::ptree empty;
  for (const auto& section : sections) {
    const auto found = tree.get_child_optional(pt::ptree::path_type(section, '\0'));
    const pt::ptree& body = found ? *found : empty;
    if (section == "general") {
      for (const auto& [key, node] : body) {
        const std::string value = node.data();
        if (key == "seed") {
          c.seed = parse_number<std::uint64_t>(source, key, value);
        } else if (key == "samples") {
          c.samples = parse_number<std::size_t>(source, key, value);
          if (c.samples == 0) bad(source, "samples must be at least 1");
        } else if (key == "tol") {
          c.tol = parse_number<double>(source, key, value);
        } else if (key == "dims") {
          c.dims.clear();
          for (const auto& d : split_list(value)) c.dims.push_back(parse_number<std::size_t>(source, key, d));
          if (c.dims.empty()) bad(source, "dims: empty list");
          for (std::size_t d : c.dims) {
            if (d == 0) bad(source, "dims: dimensions must be positive");
          }
        } else if (key == "weights") {
          c.weights = parse_weights(source, key, value);
        } else if (key == "weights_file") {
          std::filesystem::path path = trimmed(value);
          if (path.is_relative()) path = base_dir / path;
          std::ifstream f(path);
          if (!f) bad(source, fmt::format("cannot open weights_file '{}'", path.string()));
          const std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
          c.weights = parse_weights(path.string(), "weights_file", text);
        } else if (key == "suites") {
          c.suites.clear();
          for (const auto& s : split_list(value)) {
            if (!kAllSuites.count(s)) bad(source, fmt::format("unknown suite '{}'", s));
            c.suites.insert(s);
          }
        } else if (key == "rules") {
          for (auto& r : parse_rule_list(value)) c.rules.push_back(std::move(r));
        } else {
          bad(source, fmt::format("unknown key '{}' in [general]", key));
        }
      }
      continue;
    }
    RuleSpec rule{section, section, std::nullopt, std::nullopt};
    for (const auto& [key, node] : body) {
      const std::string value = node.data();
      if (key == "entropy" || key == "rule") {
        rule.spec = trimmed(value);
      } else if (key == "gamma") {
        parse_number<double>(source, key, value);
        rule.spec = fmt::format("{}({})", rule_name(rule.spec), trimmed(value));
      } else if (key == "matrix") {
        rule.spec = fmt::format("{}({})", rule_name(rule.spec), trimmed(value));
      } else if (key == "tol") {
        rule.tol = parse_number<double>(source, key, value);
      } else if (key == "samples") {
        rule.samples = parse_number<std::size_t>(source, key, value);
        if (*rule.samples == 0) bad(source, "samples must be at least 1");
      } else {
        bad(source, fmt::format("unknown key '{}' in [{}]", key, section));
      }
    }
    c.rules.push_back(std::move(rule));
  }
  if (c.weights && c.dims.size() == 1 && c.dims[0] != c.weights->size()) {
    bad(source, "dims and weights disagree");
  }
  if (c.weights) c.dims = {c.weights->size()};
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CliError(exit_code::malformed_input, fmt::format("cannot open config '{}'", path.string()));
  return parse_config(in, path.string(), path.parent_path());
}

}  // namespace psr::cli
