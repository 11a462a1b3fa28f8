#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <ostream>

#include "json.hpp"
#include "psr/bregman.hpp"
#include "psr/geometry.hpp"
#include "psr/hyvarinen.hpp"
#include "psr/sampling.hpp"
#include "psr_cli/cli.hpp"

namespace psr::cli {

using json = nlohmann::ordered_json;

namespace {

MeasureSpace space_for(const RunConfig& config, std::size_t n, const std::string& source) {
  if (!config.weights) return MeasureSpace::uniform(n);
  if (config.weights->size() != n) {
    throw CliError(exit_code::malformed_input,
                   fmt::format("{}: {} columns but the configured measure has {} weights", source, n,
                               config.weights->size()));
  }
  return MeasureSpace(*config.weights);
}

// Every row must be a density; all offending rows are reported together.
std::vector<Density> densities(const NumericTable& table, const MeasureSpace& space, const std::string& source) {
  std::vector<Density> out;
  std::vector<std::string> problems;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    try {
      if (!ConeVector(space, table.rows[r]).finite()) throw DomainError("non-finite entry");
      out.emplace_back(space, table.rows[r]);
    } catch (const DomainError& e) {
      problems.push_back(fmt::format("line {}: {}", table.lines[r], e.what()));
    }
  }
  if (!problems.empty()) {
    throw CliError(exit_code::invalid_density,
                   fmt::format("{}: invalid density rows\n  {}", source, fmt::join(problems, "\n  ")));
  }
  return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) { out << fmt::format("{}\n", fmt::join(fields, ",")); }

struct ColumnStats {
  CompensatedSum sum;
  std::size_t finite = 0;
  std::size_t infinite = 0;

  void add(double x) {
    if (std::isfinite(x)) {
      sum.add(x);
      ++finite;
    } else {
      ++infinite;
    }
  }
  std::string mean() const { return finite ? format_number(sum.value() / static_cast<double>(finite)) : ""; }
};

json vec(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(x);
  return a;
}

json number(double x) {
  if (std::isfinite(x)) return x;
  return format_number(x);
}

double rule_tol(const RunConfig& c, const ResolvedRule& r) { return r.spec.tol.value_or(c.tol); }
std::size_t rule_samples(const RunConfig& c, const ResolvedRule& r) { return r.spec.samples.value_or(c.samples); }

json propriety_entry(const ProprietyReport& r) {
  return json{{"suite", "propriety"},
              {"rule", r.rule},
              {"dimension", r.dimension},
              {"samples", r.samples},
              {"tolerance", r.tolerance},
              {"min_margin", number(r.min_margin)},
              {"witness_p", vec(r.witness_p)},
              {"witness_q", vec(r.witness_q)},
              {"strict_violations", r.strict_violations},
              {"infinite_favorable", r.infinite_favorable},
              {"infinite_unfavorable", r.infinite_unfavorable},
              {"pass", r.pass}};
}

json euler_entry(const EulerReport& r) {
  return json{{"suite", "euler"},        {"rule", r.rule},
              {"dimension", r.dimension}, {"samples", r.samples},
              {"tolerance", r.tolerance}, {"max_defect", number(r.max_defect)},
              {"witness_q", vec(r.witness_q)}, {"pass", r.pass}};
}

json cone_entry(const ConeSubgradientReport& r) {
  return json{{"suite", "cone"},
              {"rule", r.rule},
              {"dimension", r.dimension},
              {"samples", r.samples},
              {"tolerance", r.tolerance},
              {"min_gap", number(r.min_gap)},
              {"max_equality_defect", number(r.max_equality_defect)},
              {"witness_p", vec(r.witness_p)},
              {"witness_q", vec(r.witness_q)},
              {"pass", r.pass}};
}

json symmetry_entry(const std::string& rule, const DivergenceReport& r) {
  return json{{"suite", "symmetry"},
              {"rule", rule},
              {"dimension", r.dimension},
              {"samples", r.pair_count},
              {"max_symmetry_defect", number(r.max_symmetry_defect)},
              {"witness_p", vec(r.witness_p)},
              {"witness_q", vec(r.witness_q)},
              {"fit_residual", number(r.fit_residual)},
              {"classification", to_string(r.classification)},
              {"pass", r.classification != SymmetryClass::inconclusive}};
}

// Probes the analytic score at interior simplex points, kept away from the
// boundary so the finite-difference derivatives stay accurate.
json probe_entry(const RunConfig& c, const ResolvedRule& r, const MeasureSpace& space) {
  const Entropy& e = *r.entropy;
  const auto simplex = ConvexDomainSpec::simplex(space);
  const std::size_t points = std::min<std::size_t>(rule_samples(c, r), 10);
  std::size_t verified = 0;
  std::size_t unique = 0;
  std::vector<double> witness;
  for (std::size_t k = 0; k < points; ++k) {
    Rng rng(c.seed, k);
    const Density d = sample_density(rng, space);
    const Density centre = normalize(ConeVector::constant(space, 1.0));
    const ConeVector q = 0.5 * (d + centre);
    ProbeOptions options;
    options.seed = derive_seed(c.seed, k);
    const auto result = subdifferential_probe(e, simplex, q, {supporting_score(e, Density(q))}, options);
    verified += result.verified.size();
    unique += result.unique_claim ? 1 : 0;
    if ((result.verified.empty() || !result.unique_claim) && witness.empty()) witness = q.data();
  }
  return json{{"suite", "probe"},      {"rule", r.spec.label},        {"dimension", space.size()},
              {"samples", points},     {"verified", verified},        {"unique_claims", unique},
              {"witness_q", vec(witness)}, {"pass", verified == points && unique == points}};
}

}  // namespace

void run_score(const RunConfig& config, std::istream& forecasts, const std::string& forecasts_name,
               std::istream& outcomes, const std::string& outcomes_name, std::ostream& out) {
  const auto rules = resolve_rules(config.rules);
  const NumericTable f = read_numeric_csv(forecasts, forecasts_name);
  const NumericTable o = read_numeric_csv(outcomes, outcomes_name);
  const std::size_t n = f.header.size();
  if (o.header.size() != 1) {
    throw CliError(exit_code::malformed_input, fmt::format("{}:1: expected a single outcome column", outcomes_name));
  }
  if (f.rows.size() != o.rows.size()) {
    throw CliError(exit_code::malformed_input,
                   fmt::format("{} has {} rows but {} has {}", forecasts_name, f.rows.size(), outcomes_name,
                               o.rows.size()));
  }
  std::vector<std::size_t> index(o.rows.size());
  for (std::size_t r = 0; r < o.rows.size(); ++r) {
    const double x = o.rows[r][0];
    if (!(x >= 1 && x <= static_cast<double>(n)) || x != std::floor(x)) {
      throw CliError(exit_code::malformed_input,
                     fmt::format("{}:{}: outcome must be an integer in [1, {}]", outcomes_name, o.lines[r], n));
    }
    index[r] = static_cast<std::size_t>(x) - 1;
  }
  const MeasureSpace space = space_for(config, n, forecasts_name);
  const auto qs = densities(f, space, forecasts_name);

  std::vector<std::string> header{"forecast_id", "outcome"};
  for (const auto& r : rules) {
    header.push_back(r.spec.label + "_score");
    header.push_back(r.spec.label + "_entropy");
  }
  write_row(out, header);

  std::vector<ColumnStats> stats(2 * rules.size());
  for (std::size_t row = 0; row < qs.size(); ++row) {
    std::vector<std::string> fields{std::to_string(row + 1), std::to_string(index[row] + 1)};
    for (std::size_t k = 0; k < rules.size(); ++k) {
      const DualVector s = rules[k].rule(qs[row]);
      const double realized = s[index[row]];
      const double entropy = pair(qs[row], s);
      stats[2 * k].add(realized);
      stats[2 * k + 1].add(entropy);
      fields.push_back(format_number(realized));
      fields.push_back(format_number(entropy));
    }
    write_row(out, fields);
  }
  std::vector<std::string> mean{"mean", ""};
  std::vector<std::string> count{"inf_count", ""};
  for (const auto& s : stats) {
    mean.push_back(s.mean());
    count.push_back(std::to_string(s.infinite));
  }
  write_row(out, mean);
  write_row(out, count);
}

void run_divergence(const RunConfig& config, std::istream& p, const std::string& p_name, std::istream& q,
                    const std::string& q_name, std::ostream& out) {
  const auto rules = resolve_rules(config.rules);
  const NumericTable pt = read_numeric_csv(p, p_name);
  const NumericTable qt = read_numeric_csv(q, q_name);
  if (pt.header.size() != qt.header.size()) {
    throw CliError(exit_code::malformed_input,
                   fmt::format("{} has {} columns but {} has {}", p_name, pt.header.size(), q_name, qt.header.size()));
  }
  const MeasureSpace space = space_for(config, pt.header.size(), p_name);
  const auto ps = densities(pt, space, p_name);
  const auto qs = densities(qt, space, q_name);

  std::vector<std::string> header{"rule", "p"};
  for (std::size_t j = 0; j < qs.size(); ++j) header.push_back(fmt::format("q{}", j + 1));
  write_row(out, header);
  for (const auto& r : rules) {
    for (std::size_t i = 0; i < ps.size(); ++i) {
      std::vector<std::string> fields{r.spec.label, fmt::format("p{}", i + 1)};
      for (const auto& qj : qs) {
        double d = std::numeric_limits<double>::quiet_NaN();
        try {
          d = score_divergence(r.rule, ps[i], qj);
        } catch (const DomainError&) {
        }
        fields.push_back(format_number(d));
      }
      write_row(out, fields);
    }
  }
}

int run_verify(const RunConfig& config, std::ostream& out) {
  const auto rules = resolve_rules(config.rules);
  json results = json::array();
  bool pass = true;
  auto record = [&](json entry) {
    pass = pass && entry["pass"].get<bool>();
    results.push_back(std::move(entry));
  };

  for (const auto& r : rules) {
    for (std::size_t n : config.dims) {
      const MeasureSpace space = config.weights ? MeasureSpace(*config.weights) : MeasureSpace::uniform(n);
      const double tol = rule_tol(config, r);
      const std::size_t samples = rule_samples(config, r);
      try {
        if (config.suites.count("propriety")) {
          record(propriety_entry(verify_propriety(r.rule, space, config.seed, samples, tol)));
        }
        if (!r.entropy) continue;
        if (config.suites.count("euler")) {
          record(euler_entry(verify_euler(r.rule, *r.entropy, space, config.seed, samples, tol)));
        }
        if (config.suites.count("cone")) {
          record(cone_entry(verify_cone_subgradient(r.rule, *r.entropy, space, config.seed, samples, tol)));
        }
        if (config.suites.count("symmetry")) {
          record(symmetry_entry(r.spec.label, symmetry_defect(*r.entropy, space, config.seed, samples)));
        }
        if (config.suites.count("probe")) record(probe_entry(config, r, space));
      } catch (const StructuralError& e) {
        // e.g. a weighted_quadratic matrix of another size
        results.push_back(json{{"suite", "all"}, {"rule", r.spec.label}, {"dimension", n}, {"skipped", e.what()}});
      }
    }
  }

  json rule_names = json::array();
  for (const auto& r : rules) rule_names.push_back(r.spec.label);
  json report{{"seed", config.seed},
              {"samples", config.samples},
              {"tolerance", config.tol},
              {"dims", config.dims},
              {"rules", rule_names},
              {"results", results},
              {"pass", pass}};
  out << report.dump(2) << "\n";
  return pass ? exit_code::ok : exit_code::verify_failed;
}

void run_grid_score(std::istream& q, const std::string& q_name, std::istream* p, const std::string& p_name,
                    std::ostream& out) {
  auto load = [](std::istream& in, const std::string& name) {
    const std::vector<double> values = read_value_column(in, name);
    if (values.size() < PeriodicGrid::kMinPoints) {
      throw CliError(exit_code::malformed_input,
                     fmt::format("{}: a periodic grid needs at least {} points", name, PeriodicGrid::kMinPoints));
    }
    const PeriodicGrid grid(values.size());
    try {
      return GridDensity(grid, values);
    } catch (const DomainError& e) {
      throw CliError(exit_code::invalid_density, fmt::format("{}: {}", name, e.what()));
    }
  };
  const GridDensity qd = load(q, q_name);
  const DualVector s = hyvarinen_score(qd);
  write_row(out, {"index", "x", "value", "score"});
  for (std::size_t i = 0; i < qd.grid().size(); ++i) {
    write_row(out, {std::to_string(i), format_number(qd.grid().node(i)), format_number(qd.values()[i]),
                    format_number(s[i])});
  }
  write_row(out, {"fisher_entropy", "", "", format_number(fisher_entropy(qd))});
  if (p) {
    const GridDensity pd = load(*p, p_name);
    if (pd.grid().size() != qd.grid().size()) {
      throw CliError(exit_code::malformed_input, fmt::format("{} and {} have different grid sizes", p_name, q_name));
    }
    if (std::abs(pd.mass() - 1.0) > Density::kMassTolerance) {
      throw CliError(exit_code::invalid_density,
                     fmt::format("{}: grid density must have unit mass (sum times 1/N), got {}", p_name,
                                 format_number(pd.mass())));
    }
    write_row(out, {"divergence", "", "", format_number(hyvarinen_divergence(pd, qd))});
  }
}

}  // namespace psr::cli
