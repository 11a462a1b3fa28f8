// psrtool: score forecasts, tabulate divergences, and run verification suites.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

#include "CLI11.hpp"
#include "psr_cli/cli.hpp"

namespace {

using psr::cli::CliError;
namespace exit_code = psr::cli::exit_code;

struct Shared {
  std::string rules;
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::optional<double> tol;
  std::string out;
  bool rules_set = false;
};

void add_shared(CLI::App* cmd, Shared& s) {
  cmd->add_option("--rules", s.rules, "comma-separated rules, e.g. quadratic,shannon,power(1.5),linear");
  cmd->add_option("--config", s.config, "INI config file");
  cmd->add_option("--seed", s.seed, "RNG seed");
  cmd->add_option("--samples", s.samples, "samples per suite")->check(CLI::PositiveNumber);
  cmd->add_option("--tol", s.tol, "tolerance");
  cmd->add_option("--out", s.out, "output file (default stdout)");
}

psr::cli::RunConfig build_config(const Shared& s) {
  psr::cli::RunConfig c = s.config.empty() ? psr::cli::default_config() : psr::cli::load_config(s.config);
  if (s.rules_set) c.rules = psr::cli::parse_rule_list(s.rules);
  if (s.seed) c.seed = *s.seed;
  if (s.samples) c.samples = *s.samples;
  if (s.tol) c.tol = *s.tol;
  return c;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError(exit_code::malformed_input, "cannot open '" + path + "'");
  return in;
}

template <class Fn>
int with_output(const Shared& s, Fn fn) {
  if (s.out.empty()) return fn(std::cout);
  std::ofstream out(s.out);
  if (!out) throw CliError(exit_code::malformed_input, "cannot write '" + s.out + "'");
  return fn(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proper scoring rules: scoring, divergences and verification"};
  app.require_subcommand(1);

  Shared shared;
  std::string forecasts, outcomes, p_path, q_path, grid_path, grid_p;

  auto* score = app.add_subcommand("score", "score forecasts against observed outcomes");
  add_shared(score, shared);
  score->add_option("forecasts", forecasts, "CSV of forecast densities (header p1..pn)")->required();
  score->add_option("outcomes", outcomes, "CSV of 1-based outcome indices")->required();

  auto* divergence = app.add_subcommand("divergence", "divergence matrix D(p_i, q_j) per rule");
  add_shared(divergence, shared);
  divergence->add_option("p", p_path, "CSV of true densities")->required();
  divergence->add_option("q", q_path, "CSV of reported densities")->required();

  auto* verify = app.add_subcommand("verify", "run the verification suites and emit a JSON report");
  add_shared(verify, shared);

  auto* grid = app.add_subcommand("grid-score", "Hyvarinen score of a positive density on a periodic grid");
  grid->add_option("q", grid_path, "one value per line")->required();
  grid->add_option("--against", grid_p, "normalized grid density p; adds the divergence D(p, q)");
  grid->add_option("--out", shared.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_code::malformed_input;
  }
  for (auto* cmd : {score, divergence, verify}) {
    if (cmd->parsed() && cmd->count("--rules") > 0) shared.rules_set = true;
  }

  try {
    if (*grid) {
      auto q = open_input(grid_path);
      std::optional<std::ifstream> p;
      if (!grid_p.empty()) p.emplace(open_input(grid_p));
      return with_output(shared, [&](std::ostream& out) {
        psr::cli::run_grid_score(q, grid_path, p ? &*p : nullptr, grid_p, out);
        return exit_code::ok;
      });
    }
    const psr::cli::RunConfig config = build_config(shared);
    if (*score) {
      auto f = open_input(forecasts);
      auto o = open_input(outcomes);
      return with_output(shared, [&](std::ostream& out) {
        psr::cli::run_score(config, f, forecasts, o, outcomes, out);
        return exit_code::ok;
      });
    }
    if (*divergence) {
      auto p = open_input(p_path);
      auto q = open_input(q_path);
      return with_output(shared, [&](std::ostream& out) {
        psr::cli::run_divergence(config, p, p_path, q, q_path, out);
        return exit_code::ok;
      });
    }
    return with_output(shared, [&](std::ostream& out) { return psr::cli::run_verify(config, out); });
  } catch (const CliError& e) {
    std::cerr << "psrtool: " << e.what() << "\n";
    return e.code();
  } catch (const std::exception& e) {
    std::cerr << "psrtool: " << e.what() << "\n";
    return exit_code::malformed_input;
  }
}
