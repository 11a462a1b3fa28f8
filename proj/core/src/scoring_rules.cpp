#include "psr/scoring_rules.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "psr/sampling.hpp"

namespace psr {

ScoringRule::ScoringRule(std::string name, ScoreFn score, std::optional<Entropy> entropy)
    : name_(std::move(name)), score_(std::move(score)), entropy_(std::move(entropy)) {
  if (!score_) throw ConstructionError("scoring rule '" + name_ + "' has no score oracle");
}

ScoringRule make_psr(const Entropy& e) {
  return ScoringRule(e.name(), [e](const Density& q) { return supporting_score(e, q); }, e);
}

ScoringRule linear_score_rule() {
  return ScoringRule("linear", [](const Density& q) { return as_dual(q); });
}

DualVector zero_homog_extend(const ScoringRule& s, const ConeVector& q) { return s(normalize(q)); }

double expected_score(const ScoringRule& s, const Density& p, const Density& q) { return pair(p, s(q)); }

double score_divergence(const ScoringRule& s, const Density& p, const Density& q) {
  const double truthful = expected_score(s, p, p);
  const double reported = expected_score(s, p, q);
  if (std::isinf(truthful) && std::isinf(reported) && truthful == reported) {
    throw DomainError("score_divergence: both expected scores are infinite");
  }
  return truthful - reported;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_samples(std::size_t samples) {
  if (samples == 0) throw PreconditionError("verification needs at least one sample");
}

}  // namespace

ProprietyReport verify_propriety(const ScoringRule& s, const MeasureSpace& space, std::uint64_t seed,
                                 std::size_t samples, double tol) {
  check_samples(samples);
  ProprietyReport report;
  report.rule = s.name();
  report.dimension = space.size();
  report.samples = samples;
  report.tolerance = tol;
  report.min_margin = kInf;

  for (std::size_t k = 0; k < samples; ++k) {
    Rng rng(seed, k);
    const Density p = sample_density(rng, space);
    const Density q = sample_density(rng, space);
    double margin = std::numeric_limits<double>::quiet_NaN();
    try {
      margin = score_divergence(s, p, q);
    } catch (const DomainError&) {
    }
    if (std::isnan(margin) || margin == -kInf) {
      ++report.infinite_unfavorable;
      if (report.witness_p.empty()) {
        report.witness_p = p.data();
        report.witness_q = q.data();
      }
      continue;
    }
    if (margin == kInf) {
      ++report.infinite_favorable;
      continue;
    }
    if (margin < report.min_margin) {
      report.min_margin = margin;
      report.witness_p = p.data();
      report.witness_q = q.data();
    }
    if (max_abs_diff(p.values(), q.values()) > kStrictSeparation && margin < kStrictMargin) {
      ++report.strict_violations;
    }
  }
  report.pass = report.infinite_unfavorable == 0 && report.min_margin >= -tol;
  return report;
}

EulerReport verify_euler(const ScoringRule& s, const Entropy& e, const MeasureSpace& space, std::uint64_t seed,
                         std::size_t samples, double tol) {
  check_samples(samples);
  EulerReport report;
  report.rule = s.name();
  report.dimension = space.size();
  report.samples = samples;
  report.tolerance = tol;
  for (std::size_t k = 0; k < samples; ++k) {
    Rng rng(seed, k);
    const ConeVector q = sample_cone_point(rng, space);
    const double extended = canonical_extension_value(e, q);
    const double defect = std::abs(pair(q, zero_homog_extend(s, q)) - extended) / (1.0 + std::abs(extended));
    if (!(defect <= report.max_defect)) {
      report.max_defect = std::isnan(defect) ? kInf : defect;
      report.witness_q = q.data();
    }
  }
  report.pass = report.max_defect <= tol;
  return report;
}

ConeSubgradientReport verify_cone_subgradient(const ScoringRule& s, const Entropy& e, const MeasureSpace& space,
                                              std::uint64_t seed, std::size_t samples, double tol) {
  check_samples(samples);
  ConeSubgradientReport report;
  report.rule = s.name();
  report.dimension = space.size();
  report.samples = samples;
  report.tolerance = tol;
  report.min_gap = kInf;
  for (std::size_t k = 0; k < samples; ++k) {
    Rng rng(seed, k);
    const ConeVector p = sample_cone_point(rng, space);
    const ConeVector q = sample_cone_point(rng, space);
    const double phi_p = canonical_extension_value(e, p);
    const double phi_q = canonical_extension_value(e, q);
    const DualVector sq = zero_homog_extend(s, q);
    const double gap = (phi_p - pair(p, sq)) / (1.0 + std::abs(phi_p));
    if (gap < report.min_gap) {
      report.min_gap = gap;
      report.witness_p = p.data();
      report.witness_q = q.data();
    }
    report.max_equality_defect =
        std::max(report.max_equality_defect, std::abs(phi_q - pair(q, sq)) / (1.0 + std::abs(phi_q)));
  }
  report.pass = report.min_gap >= -tol && report.max_equality_defect <= tol;
  return report;
}

}  // namespace psr
