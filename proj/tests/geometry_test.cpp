#include <gtest/gtest.h>

#include <cmath>

#include "psr/geometry.hpp"
#include "psr/sampling.hpp"

using namespace psr;

namespace {

ConeVector cv(const MeasureSpace& mu, std::vector<double> v) { return ConeVector(mu, std::move(v)); }
DualVector dv(const MeasureSpace& mu, std::vector<double> v) { return DualVector(mu, std::move(v)); }

// Random point of the orthant or simplex with some coordinates forced to 0.
ConeVector point_with_zeros(Rng& rng, const MeasureSpace& mu, bool simplex) {
  std::vector<double> v(mu.size());
  for (double& x : v) x = rng.uniform() < 0.3 ? 0.0 : rng.exponential();
  if (simplex) {
    double mass = 0;
    for (std::size_t i = 0; i < v.size(); ++i) mass += v[i] * mu.weight(i);
    if (mass == 0) {
      v[0] = 1.0 / mu.weight(0);
    } else {
      for (double& x : v) x /= mass;
    }
  }
  return cv(mu, std::move(v));
}

bool strictly_positive(const ConeVector& q) {
  for (double x : q.values()) {
    if (!(x > 0)) return false;
  }
  return true;
}

}  // namespace

TEST(DirectionCone, OrthantExamples) {
  const auto mu = MeasureSpace::uniform(2);
  const auto k = ConvexDomainSpec::nonnegative_orthant(mu);
  EXPECT_TRUE(direction_cone_membership(k, cv(mu, {1, 0}), cv(mu, {0, 1})));
  EXPECT_FALSE(direction_cone_membership(k, cv(mu, {1, 0}), cv(mu, {0, -1})));
  Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    EXPECT_TRUE(direction_cone_membership(k, cv(mu, {1, 1}), sample_box_point(rng, mu, -1, 1)));
  }
  EXPECT_THROW(direction_cone_membership(k, cv(mu, {-1, 0}), cv(mu, {1, 0})), PreconditionError);
}

TEST(DirectionCone, SimplexKeepsMass) {
  const auto mu = MeasureSpace::uniform(3);
  const auto k = ConvexDomainSpec::simplex(mu);
  const ConeVector q = cv(mu, {0.5, 0.5, 0});
  EXPECT_TRUE(direction_cone_membership(k, q, cv(mu, {1, -1, 0})));
  EXPECT_TRUE(direction_cone_membership(k, q, cv(mu, {-1, 0, 1})));
  EXPECT_FALSE(direction_cone_membership(k, q, cv(mu, {1, 0, -1})));
  EXPECT_FALSE(direction_cone_membership(k, q, cv(mu, {1, 0, 0})));
}

TEST(LinealitySpace, Examples) {
  const auto mu = MeasureSpace::uniform(2);
  const auto orthant = ConvexDomainSpec::nonnegative_orthant(mu);
  const auto a = lineality_space(orthant, cv(mu, {1, 0}));
  ASSERT_EQ(a.size(), 1u);
  EXPECT_NEAR(std::abs(a[0][0]), 1.0, 1e-12);
  EXPECT_NEAR(a[0][1], 0.0, 1e-12);
  EXPECT_EQ(lineality_space(orthant, cv(mu, {1, 1})).size(), 2u);

  const auto simplex = ConvexDomainSpec::simplex(mu);
  const auto b = lineality_space(simplex, cv(mu, {0.5, 0.5}));
  ASSERT_EQ(b.size(), 1u);
  EXPECT_NEAR(std::abs(b[0][0]), 1 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(b[0][0] + b[0][1], 0.0, 1e-12);
}

TEST(QuasiInterior, Examples) {
  const auto mu = MeasureSpace::uniform(2);
  const auto orthant = ConvexDomainSpec::nonnegative_orthant(mu);
  EXPECT_TRUE(is_quasi_interior(orthant, cv(mu, {1, 1})));
  EXPECT_FALSE(is_quasi_interior(orthant, cv(mu, {1, 0})));
  const auto simplex = ConvexDomainSpec::simplex(mu);
  EXPECT_TRUE(is_quasi_interior(simplex, cv(mu, {0.5, 0.5})));
  EXPECT_FALSE(is_quasi_interior(simplex, cv(mu, {1, 0})));
}

TEST(QuasiInterior, ConeHullAndHalfspaces) {
  const auto mu = MeasureSpace::uniform(3);
  const auto hull = ConvexDomainSpec::cone_hull(mu, {cv(mu, {1, 0, 0}), cv(mu, {1, 1, 0}), cv(mu, {1, 1, 1})});
  EXPECT_TRUE(hull.contains(cv(mu, {3, 2, 1})));
  EXPECT_FALSE(hull.contains(cv(mu, {1, 2, 0})));
  EXPECT_TRUE(is_quasi_interior(hull, cv(mu, {3, 2, 1})));
  EXPECT_FALSE(is_quasi_interior(hull, cv(mu, {2, 1, 0})));

  // a plane x3 = 0 cut by x1 >= 0: quasi-interior iff x1 > 0
  const auto slab = ConvexDomainSpec::halfspace_intersection(
      mu, {{{0, 0, 1}, 0}, {{0, 0, -1}, 0}, {{-1, 0, 0}, 0}});
  EXPECT_EQ(slab.affine_dimension(), 2u);
  EXPECT_TRUE(is_quasi_interior(slab, cv(mu, {1, -4, 0})));
  EXPECT_FALSE(is_quasi_interior(slab, cv(mu, {0, -4, 0})));
}

TEST(Annihilator, Examples) {
  const auto mu = MeasureSpace::uniform(2);
  const auto a = annihilator_basis(mu, {cv(mu, {1, 0})});
  ASSERT_EQ(a.size(), 1u);
  EXPECT_NEAR(a[0][0], 0.0, 1e-12);
  EXPECT_NEAR(std::abs(a[0][1]), 1.0, 1e-12);
  EXPECT_TRUE(annihilator_basis(mu, {cv(mu, {1, 0}), cv(mu, {0, 1})}).empty());
  EXPECT_EQ(annihilator_basis(mu, {}).size(), 2u);
}

TEST(Annihilator, UsesWeightedPairing) {
  const auto mu = MeasureSpace({1.0, 3.0});
  const ConeVector v = cv(mu, {1, 1});
  const auto a = annihilator_basis(mu, {v});
  ASSERT_EQ(a.size(), 1u);
  EXPECT_NEAR(pair(v, a[0]), 0.0, 1e-12);
}

TEST(SubdifferentialProbe, OrthantBoundary) {
  const auto mu = MeasureSpace::uniform(2);
  const auto k = ConvexDomainSpec::nonnegative_orthant(mu);
  const auto r = subdifferential_probe(catalog_entropy("quadratic"), k, cv(mu, {1, 0}),
                                       {dv(mu, {2, 0}), dv(mu, {2, -1}), dv(mu, {2, 1})});
  ASSERT_EQ(r.verified.size(), 2u);
  EXPECT_EQ(r.verified[0].data(), (std::vector<double>{2, 0}));
  EXPECT_EQ(r.verified[1].data(), (std::vector<double>{2, -1}));
  ASSERT_EQ(r.rejected.size(), 1u);
  EXPECT_EQ(r.rejected[0].candidate.data(), (std::vector<double>{2, 1}));
  ASSERT_TRUE(r.rejected[0].witness_point.has_value());
  // the witness really breaks Phi(p) >= (p - q).q* + Phi(q), through mass on atom 2
  const ConeVector& w = *r.rejected[0].witness_point;
  const double support = 2 * (w[0] - 1) + w[1] + 1;
  EXPECT_LT(w[0] * w[0] + w[1] * w[1], support);
  EXPECT_GT(w[1], 0.0);
  EXPECT_FALSE(r.quasi_interior);
  EXPECT_FALSE(r.unique_claim);
}

TEST(SubdifferentialProbe, InteriorIsUnique) {
  const auto mu = MeasureSpace::uniform(2);
  const auto k = ConvexDomainSpec::nonnegative_orthant(mu);
  const auto r = subdifferential_probe(catalog_entropy("quadratic"), k, cv(mu, {1, 1}), {dv(mu, {2, 2})});
  EXPECT_EQ(r.verified.size(), 1u);
  EXPECT_TRUE(r.rejected.empty());
  EXPECT_TRUE(r.unique_claim);
}

TEST(SubdifferentialProbe, ShannonOnSimplex) {
  const auto mu = MeasureSpace::uniform(2);
  const auto k = ConvexDomainSpec::simplex(mu);
  const double g = std::log(0.5) + 1;
  const auto r = subdifferential_probe(catalog_entropy("shannon"), k, cv(mu, {0.5, 0.5}),
                                       {dv(mu, {g, g}), dv(mu, {g + 1, g})});
  EXPECT_EQ(r.verified.size(), 1u);
  EXPECT_EQ(r.rejected.size(), 1u);
  EXPECT_TRUE(r.quasi_interior);
  EXPECT_TRUE(r.unique_claim);
  // Adding a constant leaves a subgradient relative to the simplex.
  const auto shifted = subdifferential_probe(catalog_entropy("shannon"), k, cv(mu, {0.5, 0.5}), {dv(mu, {g + 3, g + 3})});
  EXPECT_EQ(shifted.verified.size(), 1u);
}

TEST(SubdifferentialProbe, CandidateSweep) {
  const auto mu = MeasureSpace::uniform(2);
  const auto k = ConvexDomainSpec::nonnegative_orthant(mu);
  for (double t : {-2.0, -1.0, 0.0, 0.1, 1.0}) {
    const auto r = subdifferential_probe(catalog_entropy("quadratic"), k, cv(mu, {1, 0}), {dv(mu, {2, t})});
    EXPECT_EQ(r.verified.size(), t <= 0 ? 1u : 0u) << t;
  }
}

// Property: the quasi-interior is the relative interior for the orthant and simplex.
TEST(GeometryProperty, QuasiInteriorIsRelativeInterior) {
  std::size_t disagreements = 0;
  for (std::uint64_t k = 0; k < 500; ++k) {
    Rng rng(50, k);
    const std::size_t n = 1 + k % 6;
    const auto mu = MeasureSpace::uniform(n);
    const bool simplex = k % 2 == 0;
    const auto domain = simplex ? ConvexDomainSpec::simplex(mu) : ConvexDomainSpec::nonnegative_orthant(mu);
    const ConeVector q = point_with_zeros(rng, mu, simplex);
    ASSERT_TRUE(domain.contains(q));
    // the 1-atom simplex is a single point, its own relative interior
    const bool relint = (simplex && n == 1) || strictly_positive(q);
    if (is_quasi_interior(domain, q) != relint) ++disagreements;
  }
  EXPECT_EQ(disagreements, 0u);
}

TEST(GeometryProperty, SegmentAndConvexity) {
  for (std::uint64_t k = 0; k < 200; ++k) {
    Rng rng(51, k);
    const std::size_t n = 2 + k % 5;
    const auto mu = MeasureSpace::uniform(n);
    const bool simplex = k % 2 == 0;
    const auto domain = simplex ? ConvexDomainSpec::simplex(mu) : ConvexDomainSpec::nonnegative_orthant(mu);
    const ConeVector q1 = simplex ? ConeVector(sample_density(rng, mu)) : sample_box_point(rng, mu, 0.05, 2);
    const ConeVector q2 = point_with_zeros(rng, mu, simplex);
    const ConeVector q3 = simplex ? ConeVector(sample_density(rng, mu)) : sample_box_point(rng, mu, 0.05, 2);
    ASSERT_TRUE(is_quasi_interior(domain, q1));
    EXPECT_TRUE(is_quasi_interior(domain, 0.5 * (q1 + q2)));
    const double t = rng.uniform(0.01, 0.99);
    EXPECT_TRUE(is_quasi_interior(domain, t * q1 + (1 - t) * q3));
  }
}

TEST(GeometryProperty, DensitiesAreFeasibleDirections) {
  for (std::size_t n : {2u, 3u, 5u}) {
    std::vector<double> w{0.5, 1.0, 2.0, 1.5, 0.75};
    w.resize(n);
    const MeasureSpace mu(w);
    std::vector<ConeVector> vertices;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> e(n, 0.0);
      e[i] = 1.0 / w[i];
      vertices.emplace_back(mu, std::move(e));
    }
    const auto hull = ConvexDomainSpec::cone_hull(mu, vertices);
    const auto orthant = ConvexDomainSpec::nonnegative_orthant(mu);
    EXPECT_TRUE(hull.contains_simplex());
    for (std::uint64_t k = 0; k < 20; ++k) {
      Rng rng(52, k);
      const ConeVector q = point_with_zeros(rng, mu, true);
      for (int j = 0; j < 100; ++j) {
        const Density p = sample_density(rng, mu);
        EXPECT_TRUE(direction_cone_membership(hull, q, p));
        EXPECT_TRUE(direction_cone_membership(orthant, q, p));
      }
    }
  }
}

TEST(GeometryProperty, VerifiedCandidatesRespectDerivativeBound) {
  const auto mu = MeasureSpace::uniform(3);
  const auto k = ConvexDomainSpec::nonnegative_orthant(mu);
  const Entropy quad = catalog_entropy("quadratic");
  for (std::uint64_t s = 0; s < 20; ++s) {
    Rng rng(53, s);
    const ConeVector q = point_with_zeros(rng, mu, false);
    std::vector<DualVector> candidates;
    for (int c = 0; c < 5; ++c) candidates.push_back(quad.subgradient(q) + as_dual(sample_box_point(rng, mu, -1, 1)));
    ProbeOptions opts;
    opts.seed = s;
    const auto r = subdifferential_probe(quad, k, q, candidates, opts);
    for (const auto& c : r.verified) {
      for (const auto& d : sample_feasible_directions(k, q, s, 32)) {
        EXPECT_LE(pair(d, c), directional_derivative_fd(quad, q, d) + 1e-6);
      }
    }
    for (const auto& rej : r.rejected) EXPECT_TRUE(rej.witness_point || rej.witness_direction);
  }
}
