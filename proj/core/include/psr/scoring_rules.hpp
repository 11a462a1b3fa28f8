#pragma once

// Proper scoring rules built from entropies, their 0-homogeneous extension to
// the positive cone, and sampled propriety / Euler identity checks.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "psr/entropy.hpp"
#include "psr/measure.hpp"

namespace psr {

class ScoringRule {
 public:
  using ScoreFn = std::function<DualVector(const Density&)>;

  ScoringRule(std::string name, ScoreFn score, std::optional<Entropy> entropy = std::nullopt);

  const std::string& name() const noexcept { return name_; }
  // The generating entropy, or nullptr for rules not built from one.
  const Entropy* entropy() const noexcept { return entropy_ ? &*entropy_ : nullptr; }
  // Rules in this library depend on q only through q / (q.1).
  bool zero_homogeneous() const noexcept { return true; }

  DualVector operator()(const Density& q) const { return score_(q); }

 private:
  std::string name_;
  ScoreFn score_;
  std::optional<Entropy> entropy_;
};

// S(q) = Phi*(q) + Phi(q) - q.Phi*(q). Boundary points without a subgradient
// fall back to the entropy's closed-form boundary score if it has one and
// raise DomainError otherwise.
ScoringRule make_psr(const Entropy& e);

// The improper rule S(q) = q. Kept as a negative control.
ScoringRule linear_score_rule();

// S(q / (q.1)). Throws DomainError for negative entries or zero mass.
DualVector zero_homog_extend(const ScoringRule& s, const ConeVector& q);

// p . S(q); -inf when S(q) is -inf somewhere p is positive.
double expected_score(const ScoringRule& s, const Density& p, const Density& q);

// p . S(p) - p . S(q); +inf when the second term is -inf.
double score_divergence(const ScoringRule& s, const Density& p, const Density& q);

struct ProprietyReport {
  std::string rule;
  std::size_t dimension = 0;
  std::size_t samples = 0;
  double tolerance = 0.0;
  // smallest finite p.S(p) - p.S(q) observed
  double min_margin = 0.0;
  std::vector<double> witness_p;
  std::vector<double> witness_q;
  // pairs with |p - q|_inf > 1e-6 but margin < 1e-12
  std::size_t strict_violations = 0;
  // margins that came out +inf (favorable) or -inf / undefined (unfavorable)
  std::size_t infinite_favorable = 0;
  std::size_t infinite_unfavorable = 0;
  bool pass = false;
};

inline constexpr double kStrictSeparation = 1e-6;
inline constexpr double kStrictMargin = 1e-12;

// Draws `samples` seeded Dirichlet(1) pairs (p, q) on `space`. Passes iff
// min_margin >= -tol and no unfavorable infinite margin occurred. Throws
// PreconditionError when samples == 0.
ProprietyReport verify_propriety(const ScoringRule& s, const MeasureSpace& space, std::uint64_t seed,
                                 std::size_t samples, double tol);

struct EulerReport {
  std::string rule;
  std::size_t dimension = 0;
  std::size_t samples = 0;
  double tolerance = 0.0;
  // max |q.S(q) - Phi(q)| / (1 + |Phi(q)|) over cone points
  double max_defect = 0.0;
  std::vector<double> witness_q;
  bool pass = false;
};

// Cone points are Dirichlet(1) shapes with LogUniform(0.1, 10) mass.
EulerReport verify_euler(const ScoringRule& s, const Entropy& e, const MeasureSpace& space, std::uint64_t seed,
                         std::size_t samples, double tol);

struct ConeSubgradientReport {
  std::string rule;
  std::size_t dimension = 0;
  std::size_t samples = 0;
  double tolerance = 0.0;
  // min over pairs of Phi(p) - p.S(q), scaled by 1 + |Phi(p)|
  double min_gap = 0.0;
  std::vector<double> witness_p;
  std::vector<double> witness_q;
  // max over q of |Phi(q) - q.S(q)| / (1 + |Phi(q)|)
  double max_equality_defect = 0.0;
  bool pass = false;
};

// Checks that the 0-homogeneous extension of S supports the 1-homogeneous
// extension of Phi on the positive cone: Phi(p) >= p.S(q), with equality at
// p = q, over seeded cone pairs.
ConeSubgradientReport verify_cone_subgradient(const ScoringRule& s, const Entropy& e, const MeasureSpace& space,
                                              std::uint64_t seed, std::size_t samples, double tol);

}  // namespace psr
