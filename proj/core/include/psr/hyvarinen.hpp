#pragma once

// The Hyvarinen scoring rule on a uniform periodic grid over [0, 1).
//
// D is the centered difference (v_{i+1} - v_{i-1}) / (2h) with wraparound.
// It is antisymmetric under the uniform pairing, so summation by parts
//     sum (D v) w h = - sum v (D w) h
// holds exactly. The log-gradient of a positive q is taken as g(q) = (D q) / q,
// which makes q g(q) = D q linear in q. With
//
//     S(q)   = -2 D g(q) - g(q)^2           (larger is better)
//     Phi(q) = sum q g(q)^2 h
//
// the identities q.S(q) = Phi(q) and
//     p.S(p) - p.S(q) = sum p (g(p) - g(q))^2 h
// hold exactly on the grid, for unnormalized q as well, and S(l q) = S(q).

#include <cstddef>
#include <span>
#include <vector>

#include "psr/measure.hpp"

namespace psr {

class PeriodicGrid {
 public:
  static constexpr std::size_t kMinPoints = 4;

  // Throws PreconditionError when points < 4.
  explicit PeriodicGrid(std::size_t points);

  std::size_t size() const noexcept { return points_; }
  double spacing() const noexcept { return spacing_; }
  double node(std::size_t i) const noexcept { return static_cast<double>(i) * spacing_; }
  // Uniform weights h.
  const MeasureSpace& space() const noexcept { return space_; }

 private:
  std::size_t points_;
  double spacing_;
  MeasureSpace space_;
};

// Strictly positive values on a grid; normalization optional.
class GridDensity {
 public:
  // Throws DomainError on a nonpositive or non-finite entry and
  // StructuralError on a length mismatch.
  GridDensity(const PeriodicGrid& grid, std::vector<double> values);

  const PeriodicGrid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_.values(); }
  const ConeVector& vector() const noexcept { return values_; }
  double mass() const { return total_mass(values_); }
  GridDensity scaled(double lambda) const;

 private:
  PeriodicGrid grid_;
  ConeVector values_;
};

std::vector<double> grid_diff(const PeriodicGrid& grid, std::span<const double> v);

// g(q) = (D q) / q
std::vector<double> log_gradient(const GridDensity& q);

DualVector hyvarinen_score(const GridDensity& q);

double fisher_entropy(const GridDensity& q);

// sum p (g(p) - g(q))^2 h. p must have unit mass (DomainError otherwise).
double hyvarinen_divergence(const GridDensity& p, const GridDensity& q);

}  // namespace psr
