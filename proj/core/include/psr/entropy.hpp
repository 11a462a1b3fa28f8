#pragma once

// Convex entropy functions with analytic subgradient oracles.
//
// An Entropy bundles a value oracle Phi, an optional subgradient oracle
// Phi*, a natural convex domain, and homogeneity metadata. Catalog entries:
//
//   quadratic              Phi = q.q                  Phi* = 2q
//   spherical              Phi = (q.q)^(1/2)          Phi* = q / (q.q)^(1/2)
//   power(g)               Phi = sum q^g mu           Phi* = g q^(g-1)
//   shannon                Phi = sum q ln q mu        Phi* = ln q + 1
//   pseudospherical(g)     Phi = (sum q^g mu)^(1/g)   Phi* = q^(g-1) / (sum q^g mu)^((g-1)/g)
//   weighted_quadratic(Q)  Phi = q^T Q q              Phi* = 2 Q q / mu
//
// The weighted quadratic uses the plain matrix form; dividing its gradient by
// mu keeps pair(d, Phi*(q)) equal to the directional derivative 2 d^T Q q.

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "psr/domain.hpp"
#include "psr/measure.hpp"

namespace psr {

// Where an entropy's oracles are defined.
enum class EntropyDomain {
  whole_space,          // all of Span P
  nonnegative_orthant,  // q_i >= 0
  custom,               // a fixed ConvexDomainSpec
};

class Entropy {
 public:
  using ValueFn = std::function<double(const ConeVector&)>;
  using SubgradientFn = std::function<DualVector(const ConeVector&)>;
  using ScoreFn = std::function<DualVector(const Density&)>;

  struct Definition {
    std::string name;
    ValueFn value;
    SubgradientFn subgradient;  // may be empty
    EntropyDomain domain = EntropyDomain::whole_space;
    std::optional<ConvexDomainSpec> custom_domain;
    std::optional<double> homogeneity_degree;
    bool strict = true;
    // Closed-form proper score valid on the closed simplex, used where the
    // subgradient oracle refuses a boundary point (may be empty).
    ScoreFn boundary_score;
  };

  explicit Entropy(Definition def);

  const std::string& name() const noexcept { return def_->name; }
  std::optional<double> homogeneity_degree() const noexcept { return def_->homogeneity_degree; }
  bool strict() const noexcept { return def_->strict; }
  bool has_subgradient() const noexcept { return static_cast<bool>(def_->subgradient); }
  const ScoreFn& boundary_score() const noexcept { return def_->boundary_score; }
  EntropyDomain domain_kind() const noexcept { return def_->domain; }

  bool contains(const ConeVector& q) const;
  // The natural domain of this entropy on the given space.
  ConvexDomainSpec domain(const MeasureSpace& space) const;

  // Throw DomainError outside the domain or where the oracle is undefined.
  double value(const ConeVector& q) const;
  DualVector subgradient(const ConeVector& q) const;

 private:
  std::shared_ptr<const Definition> def_;
};

// Names: quadratic, spherical, power, shannon, pseudospherical,
// weighted_quadratic. power and pseudospherical take {gamma} with gamma > 1;
// weighted_quadratic takes the n*n entries of a symmetric positive-definite
// Q in row-major order. Throws ConstructionError on bad input.
Entropy catalog_entropy(std::string_view name, std::span<const double> params = {});

// Parses "quadratic", "power(1.5)", "pseudospherical(3)", ...
Entropy parse_entropy(std::string_view spec);

// The catalog names with the default parameters used by the verification
// suites: quadratic, spherical, shannon, power(1.5), power(3), pseudospherical(3).
std::vector<std::string> default_catalog();

// (q.1) Phi(q / (q.1)). Throws DomainError for zero mass or negative entries.
double canonical_extension_value(const Entropy& e, const ConeVector& q);

// The proper score built from Phi and Phi* at q / (q.1),
//     S(q) = Phi*(q) + (Phi(q) - q.Phi*(q)) 1,
// i.e. the 0-homogeneous extension of the score. Satisfies
// pair(q, result) == canonical_extension_value(e, q).
DualVector extended_subgradient(const Entropy& e, const ConeVector& q);

// Same score on a density, falling back to the boundary score when the
// subgradient oracle refuses q.
DualVector supporting_score(const Entropy& e, const Density& q);

inline constexpr double kDefaultFdStep = 1e-5;

// One-sided difference quotient estimate of the right directional derivative
// Phi'_+(p, q), with one Richardson refinement over steps h and h/2. Returns
// -infinity when the quotients keep falling without bound as the step shrinks.
// Throws DomainError when q + h p leaves the entropy's domain.
double directional_derivative_fd(const Entropy& e, const ConeVector& q, const ConeVector& p,
                                 double h = kDefaultFdStep);

struct CompositeEntropySpec {
  using Scalar = std::function<double(double)>;

  std::string name = "composite";
  Scalar outer;                    // phi, increasing
  Scalar outer_derivative;         // phi'
  Scalar outer_second_derivative;  // phi'' (optional)
  Scalar inner;                    // f, convex
  Scalar inner_derivative;         // f'
  std::vector<double> nu_weights;
  bool strict = false;  // declared strict convexity of the result
};

// Phi(p) = phi(sum_i f(p_i) nu_i) restricted to `domain`, with subgradient
//     Phi*(p)_i = phi'(sum_j f(p_j) nu_j) f'(p_i) nu_i / mu_i.
// Sampled checks reject a non-increasing phi or a non-convex result
// (ConstructionError).
Entropy composite_entropy(const CompositeEntropySpec& spec, const ConvexDomainSpec& domain);

}  // namespace psr
