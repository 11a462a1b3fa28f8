#include "psr/bregman.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "psr/sampling.hpp"

namespace psr {

double bregman_divergence(const Entropy& e, const ConeVector& p, const ConeVector& q) {
  return e.value(p) - e.value(q) - pair(p - q, e.subgradient(q));
}

AffineScore affine_score_at(const Entropy& e, const ConeVector& q) {
  DualVector f = e.subgradient(q);
  const double alpha = e.value(q) - pair(q, f);
  return AffineScore{std::move(f), alpha, q};
}

LinearityReport linearity_report(const Entropy& e, const MeasureSpace& space, std::uint64_t seed,
                                 std::size_t samples) {
  if (samples == 0) throw PreconditionError("linearity_check needs at least one sample");
  LinearityReport r;
  r.samples = samples;
  for (std::size_t k = 0; k < samples; ++k) {
    Rng rng(seed, k);
    const ConeVector q = sample_box_point(rng, space, 0.05, 2.0);
    const ConeVector p1 = sample_box_point(rng, space, 0.05, 2.0);
    const ConeVector p2 = sample_box_point(rng, space, 0.05, 2.0);
    const double phi = e.value(q);
    const AffineScore s = affine_score_at(e, q);
    r.max_offset = std::max(r.max_offset, std::abs(s.offset) / (1.0 + std::abs(phi)));
    const double joint = s(p1 + p2);
    const double split = s(p1) + s(p2);
    r.max_additivity_defect =
        std::max(r.max_additivity_defect, std::abs(joint - split) / (1.0 + std::abs(joint)));
    for (double lambda : {0.5, 2.0, 10.0}) {
      const double scaled = lambda * phi;
      r.max_homogeneity_defect =
          std::max(r.max_homogeneity_defect, std::abs(e.value(lambda * q) - scaled) / (1.0 + std::abs(scaled)));
    }
  }
  r.linear = r.max_offset <= kLinearityTolerance && r.max_additivity_defect <= kLinearityTolerance;
  r.homogeneous = r.max_homogeneity_defect <= kLinearityTolerance;
  return r;
}

bool linearity_check(const Entropy& e, const MeasureSpace& space, std::uint64_t seed, std::size_t samples) {
  return linearity_report(e, space, seed, samples).linear;
}

Entropy rebase_entropy(const Entropy& e, const ConeVector& a) {
  const DualVector anchor_grad = e.subgradient(a);
  const double anchor_value = e.value(a);
  Entropy::Definition d;
  d.name = e.name() + "@rebased";
  d.value = [e, a, anchor_grad, anchor_value](const ConeVector& p) {
    return e.value(p) - anchor_value - pair(p - a, anchor_grad);
  };
  d.subgradient = [e, anchor_grad](const ConeVector& p) { return e.subgradient(p) - anchor_grad; };
  switch (e.domain_kind()) {
    case EntropyDomain::whole_space:
    case EntropyDomain::nonnegative_orthant:
      d.domain = e.domain_kind();
      break;
    case EntropyDomain::custom:
      d.domain = EntropyDomain::custom;
      d.custom_domain = e.domain(a.space());
      break;
  }
  d.strict = e.strict();
  return Entropy(std::move(d));
}

std::string to_string(SymmetryClass c) {
  switch (c) {
    case SymmetryClass::symmetric_generalized_quadratic:
      return "symmetric_generalized_quadratic";
    case SymmetryClass::asymmetric_with_witness:
      return "asymmetric_with_witness";
    case SymmetryClass::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

namespace {

ConeVector draw(Rng& rng, const ConvexDomainSpec& domain) {
  auto x = sample_point(rng, domain, 0.05, 2.0);
  if (!x) throw DomainError("could not sample the entropy's domain");
  return *std::move(x);
}

}  // namespace

double quadratic_form_fit_residual(const Entropy& e, const MeasureSpace& space, std::uint64_t seed) {
  const std::size_t n = space.size();
  const std::size_t features = n * (n + 1) / 2 + n + 1;
  const std::size_t rows = std::max<std::size_t>(2 * features, 64);
  const ConvexDomainSpec domain = e.domain(space);

  Eigen::MatrixXd a(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(features));
  Eigen::VectorXd b(static_cast<Eigen::Index>(rows));
  for (std::size_t r = 0; r < rows; ++r) {
    Rng rng(derive_seed(seed, 0xf17), r);
    const ConeVector q = draw(rng, domain);
    const auto ri = static_cast<Eigen::Index>(r);
    Eigen::Index c = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) a(ri, c++) = q[i] * q[j];
    }
    for (std::size_t i = 0; i < n; ++i) a(ri, c++) = q[i];
    a(ri, c) = 1.0;
    b(ri) = e.value(q);
  }
  const Eigen::VectorXd x = a.completeOrthogonalDecomposition().solve(b);
  const Eigen::VectorXd residual = a * x - b;
  return residual.cwiseAbs().maxCoeff() / (1.0 + b.cwiseAbs().maxCoeff());
}

DivergenceReport symmetry_defect(const Entropy& e, const MeasureSpace& space, std::uint64_t seed, std::size_t samples,
                                 const std::vector<PointPair>& probes) {
  DivergenceReport report;
  report.entropy = e.name();
  report.dimension = space.size();
  const ConvexDomainSpec domain = e.domain(space);

  auto consider = [&](const ConeVector& p, const ConeVector& q) {
    const double defect = std::abs(bregman_divergence(e, p, q) - bregman_divergence(e, q, p));
    ++report.pair_count;
    if (report.witness_p.empty() || defect > report.max_symmetry_defect) {
      report.max_symmetry_defect = defect;
      report.witness_p = p.data();
      report.witness_q = q.data();
    }
  };
  for (std::size_t k = 0; k < samples; ++k) {
    Rng rng(seed, k);
    const ConeVector p = draw(rng, domain);
    const ConeVector q = draw(rng, domain);
    consider(p, q);
  }
  for (const auto& [p, q] : probes) consider(p, q);

  report.fit_residual = quadratic_form_fit_residual(e, space, seed);
  if (report.pair_count > 0 && report.max_symmetry_defect <= kSymmetricDefect &&
      report.fit_residual <= kQuadraticFitResidual) {
    report.classification = SymmetryClass::symmetric_generalized_quadratic;
  } else if (report.max_symmetry_defect > kAsymmetricDefect) {
    report.classification = SymmetryClass::asymmetric_with_witness;
  }
  return report;
}

DiscriminationBound quadratic_discrimination_bound(const ConeVector& p, const ConeVector& q,
                                                   std::span<const double> nu) {
  if (!(p.space() == q.space())) throw StructuralError("discrimination bound: operands on different spaces");
  if (nu.size() != p.size()) throw StructuralError("discrimination bound: nu has the wrong length");
  CompensatedSum linear;
  CompensatedSum squares;
  CompensatedSum mass;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(nu[i] > 0.0)) throw PreconditionError("discrimination bound: nu must be positive");
    const double d = p[i] - q[i];
    linear.add(d * nu[i]);
    squares.add(d * d * nu[i]);
    mass.add(nu[i]);
  }
  DiscriminationBound out{linear.value() * linear.value(), mass.value() * squares.value()};
  if (out.d1 > out.scaled_d2 * (1.0 + 1e-12) + 1e-300) {
    throw std::logic_error("Cauchy-Schwarz bound violated: D1 > (sum nu) D2");
  }
  return out;
}

}  // namespace psr
