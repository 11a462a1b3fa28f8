#include "psr/hyvarinen.hpp"

#include <cmath>
#include <string>

namespace psr {

namespace {

std::size_t checked_points(std::size_t points) {
  if (points < PeriodicGrid::kMinPoints) throw PreconditionError("periodic grid needs at least 4 points");
  return points;
}

}  // namespace

PeriodicGrid::PeriodicGrid(std::size_t points)
    : points_(checked_points(points)),
      spacing_(1.0 / static_cast<double>(points)),
      space_(MeasureSpace::uniform(points, spacing_)) {}

GridDensity::GridDensity(const PeriodicGrid& grid, std::vector<double> values)
    : grid_(grid), values_(grid.space(), std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] > 0.0) || !std::isfinite(values_[i])) {
      throw DomainError("grid density entry " + std::to_string(i) + " must be positive and finite");
    }
  }
}

GridDensity GridDensity::scaled(double lambda) const {
  return GridDensity(grid_, (lambda * values_).data());
}

std::vector<double> grid_diff(const PeriodicGrid& grid, std::span<const double> v) {
  const std::size_t n = grid.size();
  if (v.size() != n) throw StructuralError("grid_diff: length does not match the grid");
  const double inv = 1.0 / (2.0 * grid.spacing());
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double next = v[(i + 1) % n];
    const double prev = v[(i + n - 1) % n];
    out[i] = (next - prev) * inv;
  }
  return out;
}

std::vector<double> log_gradient(const GridDensity& q) {
  std::vector<double> g = grid_diff(q.grid(), q.values());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] /= q.values()[i];
  return g;
}

DualVector hyvarinen_score(const GridDensity& q) {
  const std::vector<double> g = log_gradient(q);
  std::vector<double> s = grid_diff(q.grid(), g);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = -2.0 * s[i] - g[i] * g[i];
  return DualVector(q.grid().space(), std::move(s));
}

double fisher_entropy(const GridDensity& q) {
  const std::vector<double> g = log_gradient(q);
  const double h = q.grid().spacing();
  CompensatedSum sum;
  for (std::size_t i = 0; i < g.size(); ++i) sum.add(q.values()[i] * g[i] * g[i] * h);
  return sum.value();
}

double hyvarinen_divergence(const GridDensity& p, const GridDensity& q) {
  if (!(p.grid().space() == q.grid().space())) throw StructuralError("hyvarinen_divergence: grids differ");
  if (std::abs(p.mass() - 1.0) > Density::kMassTolerance) {
    throw DomainError("hyvarinen_divergence: p must be normalized");
  }
  const std::vector<double> gp = log_gradient(p);
  const std::vector<double> gq = log_gradient(q);
  const double h = p.grid().spacing();
  CompensatedSum sum;
  for (std::size_t i = 0; i < gp.size(); ++i) {
    const double d = gp[i] - gq[i];
    sum.add(p.values()[i] * d * d * h);
  }
  return sum.value();
}

}  // namespace psr
