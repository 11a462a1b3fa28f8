#include "psr/domain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "linalg.hpp"
#include "psr/sampling.hpp"

namespace psr {

std::string to_string(DomainKind kind) {
  switch (kind) {
    case DomainKind::simplex:
      return "simplex";
    case DomainKind::nonnegative_orthant:
      return "nonnegative_orthant";
    case DomainKind::cone_hull_of_points:
      return "cone_hull_of_points";
    case DomainKind::halfspace_intersection:
      return "halfspace_intersection";
  }
  return "unknown";
}

namespace {

struct Evaluation {
  double value;
  double scale;
};

Evaluation evaluate(const Halfspace& c, std::span<const double> x) {
  double v = 0.0;
  double s = 1.0 + std::abs(c.offset);
  for (std::size_t i = 0; i < x.size(); ++i) {
    v += c.normal[i] * x[i];
    s += std::abs(c.normal[i] * x[i]);
  }
  return {v - c.offset, s};
}

double norm(const std::vector<double>& v) {
  return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

std::vector<Halfspace> coordinate_lower_bounds(std::size_t n) {
  std::vector<Halfspace> out;
  for (std::size_t i = 0; i < n; ++i) {
    Halfspace h{std::vector<double>(n, 0.0), 0.0};
    h.normal[i] = -1.0;
    out.push_back(std::move(h));
  }
  return out;
}

bool opposite(const Halfspace& a, const Halfspace& b) {
  const double na = norm(a.normal);
  const double nb = norm(b.normal);
  if (na == 0.0 || nb == 0.0) return false;
  const double cosine = std::inner_product(a.normal.begin(), a.normal.end(), b.normal.begin(), 0.0) / (na * nb);
  return cosine < -1.0 + 1e-12 && std::abs(a.offset / na + b.offset / nb) <= 1e-12 * (1.0 + std::abs(a.offset / na));
}

// Visit every k-subset of {0..m-1}.
template <class Fn>
void for_each_subset(std::size_t m, std::size_t k, Fn fn) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > m) return;
  while (true) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

double binomial(std::size_t m, std::size_t k) {
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(m - k + i) / static_cast<double>(i);
  return r;
}

}  // namespace

ConvexDomainSpec ConvexDomainSpec::simplex(const MeasureSpace& space) {
  ConvexDomainSpec k(DomainKind::simplex, space);
  k.equalities_.push_back({std::vector<double>(space.weights().begin(), space.weights().end()), 1.0});
  k.inequalities_ = coordinate_lower_bounds(space.size());
  k.finish();
  return k;
}

ConvexDomainSpec ConvexDomainSpec::nonnegative_orthant(const MeasureSpace& space) {
  ConvexDomainSpec k(DomainKind::nonnegative_orthant, space);
  k.inequalities_ = coordinate_lower_bounds(space.size());
  k.finish();
  return k;
}

ConvexDomainSpec ConvexDomainSpec::cone_hull(const MeasureSpace& space, std::vector<ConeVector> generators) {
  const std::size_t n = space.size();
  ConvexDomainSpec k(DomainKind::cone_hull_of_points, space);
  detail::Rows gens;
  for (const auto& g : generators) {
    if (!(g.space() == space)) throw StructuralError("cone_hull: generator on a different measure space");
    gens.push_back(g.data());
  }
  k.generators_ = std::move(generators);

  // Equalities: the annihilator of the linear span of the generators.
  const detail::Rows annihilator = detail::null_space(gens, n);
  for (const auto& a : annihilator) k.equalities_.push_back({a, 0.0});
  const std::size_t dim = n - annihilator.size();

  if (dim > 0) {
    if (binomial(gens.size(), dim - 1) > 2e6) {
      throw ConstructionError("cone_hull: too many generators for facet enumeration");
    }
    detail::Rows normals;
    for_each_subset(gens.size(), dim - 1, [&](const std::vector<std::size_t>& subset) {
      detail::Rows rows = annihilator;
      for (std::size_t s : subset) rows.push_back(gens[s]);
      const detail::Rows candidates = detail::null_space(rows, n);
      if (candidates.size() != 1) return;
      std::vector<double> c = candidates.front();
      double lo = 0.0;
      double hi = 0.0;
      for (const auto& g : gens) {
        const double d = std::inner_product(c.begin(), c.end(), g.begin(), 0.0) / std::max(1.0, norm(g));
        lo = std::min(lo, d);
        hi = std::max(hi, d);
      }
      const double tol = 1e-10;
      if (lo < -tol && hi > tol) return;
      if (hi <= tol && lo >= -tol) return;  // every generator lies on the hyperplane
      // Orient so that generators satisfy c . x >= 0, stored as -c . x <= 0.
      if (lo < -tol) {
        for (double& x : c) x = -x;
      }
      for (const auto& existing : normals) {
        if (max_abs_diff(existing, c) < 1e-9) return;
      }
      normals.push_back(c);
    });
    for (auto c : normals) {
      for (double& x : c) x = -x;
      k.inequalities_.push_back({std::move(c), 0.0});
    }
  }
  k.finish();
  return k;
}

ConvexDomainSpec ConvexDomainSpec::halfspace_intersection(const MeasureSpace& space, std::vector<Halfspace> halfspaces) {
  ConvexDomainSpec k(DomainKind::halfspace_intersection, space);
  for (const auto& h : halfspaces) {
    if (h.normal.size() != space.size()) throw StructuralError("halfspace normal has the wrong length");
  }
  std::vector<bool> used(halfspaces.size(), false);
  for (std::size_t i = 0; i < halfspaces.size(); ++i) {
    if (used[i]) continue;
    for (std::size_t j = i + 1; j < halfspaces.size(); ++j) {
      if (!used[j] && opposite(halfspaces[i], halfspaces[j])) {
        used[i] = used[j] = true;
        k.equalities_.push_back(halfspaces[i]);
        break;
      }
    }
    if (!used[i]) k.inequalities_.push_back(halfspaces[i]);
  }
  k.finish();
  return k;
}

void ConvexDomainSpec::finish() {
  detail::Rows rows;
  for (const auto& e : equalities_) rows.push_back(e.normal);
  affine_dimension_ = space_.size() - detail::rank(rows, space_.size());
}

bool ConvexDomainSpec::contains(const ConeVector& q) const {
  if (!(q.space() == space_)) throw StructuralError("domain membership: point on a different measure space");
  if (!q.finite()) return false;
  for (const auto& e : equalities_) {
    const auto [v, s] = evaluate(e, q.values());
    if (std::abs(v) > kEqualityTolerance * s) return false;
  }
  for (const auto& g : inequalities_) {
    const auto [v, s] = evaluate(g, q.values());
    if (v > kFeasibilityTolerance * s) return false;
  }
  return true;
}

std::vector<std::size_t> ConvexDomainSpec::active_set(const ConeVector& q) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < inequalities_.size(); ++i) {
    const auto [v, s] = evaluate(inequalities_[i], q.values());
    if (std::abs(v) <= kFeasibilityTolerance * s) out.push_back(i);
  }
  return out;
}

bool ConvexDomainSpec::contains_simplex() const {
  for (std::size_t i = 0; i < space_.size(); ++i) {
    std::vector<double> vertex(space_.size(), 0.0);
    vertex[i] = 1.0 / space_.weight(i);
    if (!contains(ConeVector(space_, std::move(vertex)))) return false;
  }
  return true;
}

std::optional<ConeVector> sample_point(Rng& rng, const ConvexDomainSpec& domain, double lo, double hi) {
  const MeasureSpace& space = domain.space();
  switch (domain.kind()) {
    case DomainKind::simplex:
      return sample_density(rng, space);
    case DomainKind::nonnegative_orthant:
      return sample_box_point(rng, space, lo, hi);
    case DomainKind::cone_hull_of_points: {
      ConeVector out = ConeVector::zeros(space);
      for (const auto& g : domain.generators()) out = out + rng.uniform(lo, hi) * g;
      return out;
    }
    case DomainKind::halfspace_intersection:
      for (int attempt = 0; attempt < 1000; ++attempt) {
        ConeVector x = sample_box_point(rng, space, lo, hi);
        if (domain.contains(x)) return x;
      }
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace psr
