#pragma once

// Polyhedral convex sets K with P subset K subset Span P.
//
// Every kind is normalized at construction into a constraint description
//
//     a_j . x  = b_j   (equalities)
//     g_i . x <= h_i   (inequalities)
//
// using plain Euclidean dot products on the coordinate values. Cone hulls of
// generator points are converted by facet enumeration, so they are meant for
// the small dimensions this library works in (n of order ten).

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "psr/measure.hpp"

namespace psr {

enum class DomainKind { simplex, nonnegative_orthant, cone_hull_of_points, halfspace_intersection };

std::string to_string(DomainKind kind);

struct Halfspace {
  std::vector<double> normal;
  double offset = 0.0;
};

class ConvexDomainSpec {
 public:
  static constexpr double kFeasibilityTolerance = 1e-12;
  static constexpr double kEqualityTolerance = 1e-9;

  static ConvexDomainSpec simplex(const MeasureSpace& space);
  static ConvexDomainSpec nonnegative_orthant(const MeasureSpace& space);
  static ConvexDomainSpec cone_hull(const MeasureSpace& space, std::vector<ConeVector> generators);
  // Each halfspace reads normal . x <= offset. Opposite pairs are folded
  // into equalities; other implicit equalities are not detected.
  static ConvexDomainSpec halfspace_intersection(const MeasureSpace& space, std::vector<Halfspace> halfspaces);
  // All of Span P.
  static ConvexDomainSpec whole_space(const MeasureSpace& space) { return halfspace_intersection(space, {}); }

  DomainKind kind() const noexcept { return kind_; }
  const MeasureSpace& space() const noexcept { return space_; }
  const std::vector<ConeVector>& generators() const noexcept { return generators_; }
  const std::vector<Halfspace>& equalities() const noexcept { return equalities_; }
  const std::vector<Halfspace>& inequalities() const noexcept { return inequalities_; }

  bool contains(const ConeVector& q) const;

  // Indices of inequalities that hold with equality at q.
  std::vector<std::size_t> active_set(const ConeVector& q) const;

  // Dimension of the affine hull of K.
  std::size_t affine_dimension() const noexcept { return affine_dimension_; }

  // True when every vertex e_i / mu_i of the simplex lies in K.
  bool contains_simplex() const;

 private:
  ConvexDomainSpec(DomainKind kind, MeasureSpace space) : kind_(kind), space_(std::move(space)) {}
  void finish();

  DomainKind kind_;
  MeasureSpace space_;
  std::vector<ConeVector> generators_;
  std::vector<Halfspace> equalities_;
  std::vector<Halfspace> inequalities_;
  std::size_t affine_dimension_ = 0;
};

class Rng;

// A random point of K: Dirichlet(1) on the simplex, componentwise
// Uniform(lo, hi) on the orthant, Uniform(lo, hi) combinations of the
// generators for cone hulls, and rejection from the box [lo, hi]^n for
// halfspace intersections (nullopt if 1000 draws all miss).
std::optional<ConeVector> sample_point(Rng& rng, const ConvexDomainSpec& domain, double lo = 0.05, double hi = 2.0);

}  // namespace psr
