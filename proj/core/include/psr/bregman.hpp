#pragma once

// Functional Bregman divergences, affine scores, the rebased entropy that
// regenerates a divergence, and a numerical symmetry classifier.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "psr/entropy.hpp"
#include "psr/measure.hpp"

namespace psr {

// D(p, q) = Phi(p) - Phi(q) - (p - q).Phi*(q).
double bregman_divergence(const Entropy& e, const ConeVector& p, const ConeVector& q);

// The supporting hyperplane s(p) = p.f + alpha of Phi at a basepoint q.
struct AffineScore {
  DualVector gradient_part;
  double offset = 0.0;
  ConeVector basepoint;

  double operator()(const ConeVector& p) const { return pair(p, gradient_part) + offset; }
};

// f = Phi*(q), alpha = Phi(q) - q.Phi*(q).
AffineScore affine_score_at(const Entropy& e, const ConeVector& q);

struct LinearityReport {
  std::size_t samples = 0;
  double max_offset = 0.0;          // max |alpha| / (1 + |Phi(q)|)
  double max_additivity_defect = 0.0;
  double max_homogeneity_defect = 0.0;  // max |Phi(l q) - l Phi(q)| / (1 + |l Phi(q)|)
  bool linear = false;              // offsets vanish and s(., q) is additive
  bool homogeneous = false;         // Phi(l q) = l Phi(q) on the samples
};

inline constexpr double kLinearityTolerance = 1e-10;

// Samples positive cone points from Uniform(0.05, 2)^n and checks whether each
// affine score s(., q) is a linear functional; independently checks
// 1-homogeneity of Phi for l in {0.5, 2, 10}.
LinearityReport linearity_report(const Entropy& e, const MeasureSpace& space, std::uint64_t seed, std::size_t samples);

// linearity_report(...).linear
bool linearity_check(const Entropy& e, const MeasureSpace& space, std::uint64_t seed, std::size_t samples);

// Psi(p) = D(p, a), Psi*(p) = Phi*(p) - Phi*(a). Psi differs from Phi by an
// affine functional, so both generate the same divergence.
Entropy rebase_entropy(const Entropy& e, const ConeVector& a);

enum class SymmetryClass { symmetric_generalized_quadratic, asymmetric_with_witness, inconclusive };

std::string to_string(SymmetryClass c);

struct DivergenceReport {
  std::string entropy;
  std::size_t dimension = 0;
  std::size_t pair_count = 0;
  double max_symmetry_defect = 0.0;
  std::vector<double> witness_p;
  std::vector<double> witness_q;
  // max residual of the least-squares fit of Phi on {q_i q_j, q_i, 1},
  // scaled by 1 + max |Phi|
  double fit_residual = 0.0;
  SymmetryClass classification = SymmetryClass::inconclusive;
};

inline constexpr double kSymmetricDefect = 1e-10;
inline constexpr double kAsymmetricDefect = 1e-8;
inline constexpr double kQuadraticFitResidual = 1e-10;

using PointPair = std::pair<ConeVector, ConeVector>;

// Max |D(p,q) - D(q,p)| over `samples` seeded pairs drawn from the entropy's
// domain (Uniform(0.05, 2) boxes off the simplex) plus any explicit probes.
// Classified symmetric when the defect is <= 1e-10 and Phi fits a quadratic
// form to 1e-10, asymmetric when some pair exceeds 1e-8, inconclusive
// otherwise.
DivergenceReport symmetry_defect(const Entropy& e, const MeasureSpace& space, std::uint64_t seed, std::size_t samples,
                                 const std::vector<PointPair>& probes = {});

// Least-squares residual of Phi against the basis {q_i q_j, q_i, 1} on seeded
// domain samples.
double quadratic_form_fit_residual(const Entropy& e, const MeasureSpace& space, std::uint64_t seed);

struct DiscriminationBound {
  double d1 = 0.0;         // (sum (p - q) nu)^2
  double scaled_d2 = 0.0;  // (sum nu) * sum (p - q)^2 nu
};

// Cauchy-Schwarz bound D1 <= (sum nu) D2. Throws std::logic_error if the
// computed values violate it beyond roundoff.
DiscriminationBound quadratic_discrimination_bound(const ConeVector& p, const ConeVector& q,
                                                   std::span<const double> nu);

}  // namespace psr
