#include "psr/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "linalg.hpp"
#include "psr/sampling.hpp"

namespace psr {

namespace {

constexpr double kDirectionTolerance = 1e-12;

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void require_member(const ConvexDomainSpec& k, const ConeVector& q) {
  if (!k.contains(q)) throw PreconditionError("base point is not in the domain");
}

detail::Rows equality_rows(const ConvexDomainSpec& k) {
  detail::Rows rows;
  for (const auto& e : k.equalities()) rows.push_back(e.normal);
  return rows;
}

detail::Rows two_sided_rows(const ConvexDomainSpec& k, const ConeVector& q) {
  detail::Rows rows = equality_rows(k);
  for (std::size_t i : k.active_set(q)) rows.push_back(k.inequalities()[i].normal);
  return rows;
}

std::vector<ConeVector> to_vectors(const MeasureSpace& space, detail::Rows rows) {
  std::vector<ConeVector> out;
  out.reserve(rows.size());
  for (auto& r : rows) out.emplace_back(space, std::move(r));
  return out;
}

ConeVector unit(const ConeVector& d) {
  const double n = norm(d.values());
  return (1.0 / n) * d;
}

}  // namespace

bool direction_cone_membership(const ConvexDomainSpec& k, const ConeVector& q, const ConeVector& d) {
  require_member(k, q);
  if (!(d.space() == k.space())) throw StructuralError("direction on a different measure space");
  const double dn = norm(d.values());
  if (dn == 0.0) return true;
  for (const auto& e : k.equalities()) {
    if (std::abs(dot(e.normal, d.values())) > kDirectionTolerance * norm(e.normal) * dn) return false;
  }
  for (std::size_t i : k.active_set(q)) {
    const auto& g = k.inequalities()[i].normal;
    if (dot(g, d.values()) > kDirectionTolerance * norm(g) * dn) return false;
  }
  return true;
}

std::vector<ConeVector> lineality_space(const ConvexDomainSpec& k, const ConeVector& q) {
  require_member(k, q);
  return to_vectors(k.space(), detail::null_space(two_sided_rows(k, q), k.space().size()));
}

std::vector<DualVector> annihilator_basis(const MeasureSpace& space, const std::vector<ConeVector>& vectors) {
  detail::Rows rows;
  for (const auto& v : vectors) {
    if (!(v.space() == space)) throw StructuralError("annihilator: vector on a different measure space");
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] * space.weight(i);
    rows.push_back(std::move(r));
  }
  std::vector<DualVector> out;
  for (auto& b : detail::null_space(rows, space.size())) out.emplace_back(space, std::move(b));
  return out;
}

bool is_quasi_interior(const ConvexDomainSpec& k, const ConeVector& q) {
  const auto two_sided = lineality_space(k, q);
  const auto hull_directions = to_vectors(k.space(), detail::null_space(equality_rows(k), k.space().size()));
  return annihilator_basis(k.space(), two_sided).size() == annihilator_basis(k.space(), hull_directions).size();
}

std::vector<ConeVector> sample_feasible_directions(const ConvexDomainSpec& k, const ConeVector& q, std::uint64_t seed,
                                                   std::size_t count) {
  require_member(k, q);
  const MeasureSpace& space = k.space();
  const std::size_t n = space.size();
  std::vector<ConeVector> out;
  auto accept = [&](const ConeVector& d) {
    if (norm(d.values()) < 1e-12) return;
    if (!direction_cone_membership(k, q, d)) return;
    out.push_back(unit(d));
  };

  for (const auto& b : lineality_space(k, q)) {
    accept(b);
    accept(-b);
  }

  const detail::Rows hull = detail::null_space(equality_rows(k), n);
  auto project = [&](const std::vector<double>& x) {
    std::vector<double> d(n, 0.0);
    for (const auto& z : hull) {
      const double c = dot(z, x);
      for (std::size_t i = 0; i < n; ++i) d[i] += c * z[i];
    }
    return ConeVector(space, std::move(d));
  };
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> e(n, 0.0);
    e[i] = 1.0;
    accept(project(e));
    e[i] = -1.0;
    accept(project(e));
  }

  const std::size_t target = out.size() + count;
  for (std::size_t attempt = 0; out.size() < target && attempt < 20 * count; ++attempt) {
    Rng rng(seed, attempt);
    std::vector<double> g(n);
    for (double& x : g) x = rng.normal();
    accept(project(g));
  }
  return out;
}

SubgradientProbeResult subdifferential_probe(const Entropy& e, const ConvexDomainSpec& k, const ConeVector& q,
                                             const std::vector<DualVector>& candidates, const ProbeOptions& options) {
  require_member(k, q);
  SubgradientProbeResult result;
  result.quasi_interior = is_quasi_interior(k, q);

  const std::vector<ConeVector> directions = sample_feasible_directions(k, q, options.seed, options.directions);
  result.directions_sampled = directions.size();
  const double base = e.value(q);

  struct DirectionData {
    const ConeVector* d;
    double derivative;
    bool two_sided;
  };
  std::vector<DirectionData> derivs;
  std::vector<ConeVector> points;
  for (const auto& d : directions) {
    const ConeVector step = q + kDefaultFdStep * d;
    if (k.contains(step) && e.contains(step)) {
      derivs.push_back({&d, directional_derivative_fd(e, q, d), direction_cone_membership(k, q, -d)});
    }
    for (double t : {1e-4, 1e-3, 1e-2, 1e-1, 1.0}) {
      ConeVector p = q + t * d;
      if (k.contains(p) && e.contains(p)) points.push_back(std::move(p));
    }
  }
  result.points_sampled = points.size();

  bool unique = false;
  for (const auto& c : candidates) {
    RejectedCandidate rejected{c, std::nullopt, std::nullopt, 0.0};
    for (const auto& p : points) {
      const double value = e.value(p);
      const double support = pair(p - q, c) + base;
      const double violation = (support - value) / (1.0 + std::abs(value));
      if (violation > options.inequality_tolerance && violation > rejected.violation) {
        rejected.violation = violation;
        rejected.witness_point = p;
      }
    }
    bool tight_on_two_sided = true;
    double worst_excess = 0.0;
    for (const auto& dd : derivs) {
      const double excess = pair(*dd.d, c) - dd.derivative;
      if (excess > options.derivative_tolerance && excess > worst_excess) {
        worst_excess = excess;
        rejected.witness_direction = *dd.d;
      }
      if (dd.two_sided && !(std::abs(excess) <= options.derivative_tolerance)) tight_on_two_sided = false;
    }
    rejected.violation = std::max(rejected.violation, worst_excess);
    if (rejected.witness_point || rejected.witness_direction) {
      result.rejected.push_back(std::move(rejected));
    } else {
      result.verified.push_back(c);
      if (tight_on_two_sided) unique = true;
    }
  }
  result.unique_claim = result.quasi_interior && unique;
  return result;
}

}  // namespace psr
