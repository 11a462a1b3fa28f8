#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "oracles.hpp"
#include "psr/bregman.hpp"
#include "psr/sampling.hpp"
#include "psr/scoring_rules.hpp"

using namespace psr;

namespace {

ConeVector cv(const MeasureSpace& mu, std::vector<double> v) { return ConeVector(mu, std::move(v)); }

Entropy d2_generator(const MeasureSpace& mu, std::vector<double> nu) {
  CompositeEntropySpec spec;
  spec.name = "d2";
  spec.outer = [](double x) { return x; };
  spec.outer_derivative = [](double) { return 1.0; };
  spec.inner = [](double x) { return x * x; };
  spec.inner_derivative = [](double x) { return 2 * x; };
  spec.nu_weights = std::move(nu);
  spec.strict = true;
  return composite_entropy(spec, ConvexDomainSpec::whole_space(mu));
}

Entropy d1_generator(const MeasureSpace& mu, std::vector<double> nu) {
  CompositeEntropySpec spec;
  spec.name = "d1";
  spec.outer = [](double x) { return x * x; };
  // x^2 only increases on x >= 0; the inner integral stays positive on the samples
  spec.outer_derivative = [](double x) { return 2 * x; };
  spec.inner = [](double x) { return x; };
  spec.inner_derivative = [](double) { return 1.0; };
  spec.nu_weights = std::move(nu);
  return composite_entropy(spec, ConvexDomainSpec::nonnegative_orthant(mu));
}

Entropy power_composite(const MeasureSpace& mu, double gamma) {
  CompositeEntropySpec spec;
  spec.name = "power_composite";
  spec.outer = [](double x) { return x; };
  spec.outer_derivative = [](double) { return 1.0; };
  spec.inner = [gamma](double x) { return std::pow(x, gamma); };
  spec.inner_derivative = [gamma](double x) { return gamma * std::pow(x, gamma - 1); };
  spec.nu_weights.assign(mu.size(), 1.0);
  spec.strict = true;
  return composite_entropy(spec, ConvexDomainSpec::nonnegative_orthant(mu));
}

std::vector<double> random_spd(Rng& rng, std::size_t n) {
  std::vector<double> a(n * n);
  for (double& x : a) x = rng.normal();
  std::vector<double> q(n * n, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      double s = 0;
      for (std::size_t k = 0; k < n; ++k) s += a[r * n + k] * a[c * n + k];
      q[r * n + c] = s + (r == c ? 0.5 : 0.0);
    }
  }
  return q;
}

}  // namespace

TEST(BregmanDivergence, Examples) {
  const auto mu = MeasureSpace::uniform(2);
  const Entropy quad = catalog_entropy("quadratic");
  EXPECT_NEAR(bregman_divergence(quad, cv(mu, {1, 0}), cv(mu, {0.5, 0.5})), 0.5, 1e-15);
  for (const auto& name : default_catalog()) {
    const ConeVector q = cv(mu, {0.3, 0.9});
    EXPECT_NEAR(bregman_divergence(parse_entropy(name), q, q), 0.0, 1e-15) << name;
  }
  const auto mu3 = MeasureSpace::uniform(3);
  const Entropy cubic = parse_entropy("power(3)");
  const ConeVector p = cv(mu3, {0.6, 0.3, 0.1});
  const ConeVector q = cv(mu3, {1.0 / 3, 1.0 / 3, 1.0 / 3});
  const double asym = bregman_divergence(cubic, q, p) - bregman_divergence(cubic, p, q);
  EXPECT_NEAR(asym, 7.0 / 1125.0, 1e-15);
  EXPECT_NEAR(asym, oracle::cubic_asymmetry(p.data(), q.data(), {1, 1, 1}), 1e-15);
}

TEST(AffineScore, Examples) {
  const auto mu = MeasureSpace::uniform(2);
  const Entropy quad = catalog_entropy("quadratic");
  const AffineScore s = affine_score_at(quad, cv(mu, {0.5, 0.5}));
  EXPECT_DOUBLE_EQ(s.gradient_part[0], 1.0);
  EXPECT_DOUBLE_EQ(s.gradient_part[1], 1.0);
  EXPECT_DOUBLE_EQ(s.offset, -0.5);
  EXPECT_DOUBLE_EQ(s(cv(mu, {0.5, 0.5})), 0.5);

  const Entropy sph = catalog_entropy("spherical");
  EXPECT_NEAR(affine_score_at(sph, cv(mu, {0.3, 1.7})).offset, 0.0, 1e-15);
}

TEST(AffineScore, AffineAndSupporting) {
  for (const auto& name : default_catalog()) {
    const Entropy e = parse_entropy(name);
    const auto mu = MeasureSpace({1.0, 0.5, 2.0});
    for (std::uint64_t k = 0; k < 200; ++k) {
      Rng rng(40, k);
      const ConeVector q = sample_box_point(rng, mu, 0.05, 2);
      const ConeVector p1 = sample_box_point(rng, mu, 0.05, 2);
      const ConeVector p2 = sample_box_point(rng, mu, 0.05, 2);
      const double t = rng.uniform();
      const AffineScore s = affine_score_at(e, q);
      const double mixed = s(t * p1 + (1 - t) * p2);
      EXPECT_NEAR(mixed, t * s(p1) + (1 - t) * s(p2), 1e-12 * (1 + std::abs(mixed))) << name;
      EXPECT_LE(s(p1), e.value(p1) + 1e-12 * (1 + std::abs(e.value(p1)))) << name;
      EXPECT_NEAR(s(q), e.value(q), 1e-12 * (1 + std::abs(e.value(q)))) << name;
    }
  }
}

TEST(Linearity, Examples) {
  const auto mu = MeasureSpace::uniform(3);
  EXPECT_TRUE(linearity_check(catalog_entropy("spherical"), mu, 42, 200));
  EXPECT_FALSE(linearity_check(catalog_entropy("quadratic"), mu, 42, 200));
  EXPECT_TRUE(linearity_check(parse_entropy("pseudospherical(3)"), mu, 42, 200));
  EXPECT_FALSE(linearity_check(catalog_entropy("shannon"), mu, 42, 200));
}

TEST(Linearity, MatchesOneHomogeneity) {
  const auto mu = MeasureSpace({0.5, 1.0, 1.5, 2.0});
  for (const auto& name : default_catalog()) {
    const auto r = linearity_report(parse_entropy(name), mu, 3, 200);
    EXPECT_EQ(r.linear, r.homogeneous) << name;
  }
}

TEST(Rebase, Examples) {
  const auto mu = MeasureSpace::uniform(2);
  const Entropy quad = catalog_entropy("quadratic");
  const Entropy at_zero = rebase_entropy(quad, cv(mu, {0, 0}));
  EXPECT_DOUBLE_EQ(at_zero.value(cv(mu, {0.3, 0.4})), 0.25);

  const Entropy at_half = rebase_entropy(quad, cv(mu, {0.5, 0.5}));
  EXPECT_NEAR(at_half.value(cv(mu, {0.9, 0.2})), 0.16 + 0.09, 1e-15);
  for (std::uint64_t k = 0; k < 100; ++k) {
    Rng rng(41, k);
    const ConeVector p = sample_box_point(rng, mu, -2, 2);
    const ConeVector q = sample_box_point(rng, mu, -2, 2);
    EXPECT_NEAR(bregman_divergence(at_half, p, q), bregman_divergence(quad, p, q), 1e-12);
  }
}

TEST(Rebase, VanishesAtBasepoint) {
  const auto mu = MeasureSpace({1.0, 2.0, 0.5});
  for (const auto& name : default_catalog()) {
    const ConeVector a = cv(mu, {0.2, 0.3, 0.4});
    EXPECT_NEAR(rebase_entropy(parse_entropy(name), a).value(a), 0.0, 1e-15) << name;
  }
}

TEST(Symmetry, QuadraticGeneratorsAreSymmetric) {
  const auto mu = MeasureSpace({1.0, 0.5, 2.0});
  const std::vector<double> nu{0.7, 1.3, 0.4};
  for (const Entropy& e : {d2_generator(mu, nu), d1_generator(mu, nu)}) {
    const auto r = symmetry_defect(e, mu, 42, 500);
    EXPECT_LE(r.max_symmetry_defect, 1e-12) << e.name();
    EXPECT_LE(r.fit_residual, 1e-10) << e.name();
    EXPECT_EQ(r.classification, SymmetryClass::symmetric_generalized_quadratic) << e.name();
  }
}

TEST(Symmetry, CubicPowerIsAsymmetric) {
  const auto mu = MeasureSpace::uniform(3);
  const ConeVector p = cv(mu, {0.6, 0.3, 0.1});
  const ConeVector q = cv(mu, {1.0 / 3, 1.0 / 3, 1.0 / 3});
  const auto r = symmetry_defect(parse_entropy("power(3)"), mu, 42, 0, {{p, q}});
  EXPECT_EQ(r.classification, SymmetryClass::asymmetric_with_witness);
  EXPECT_NEAR(r.max_symmetry_defect, 0.006222222222222222, 1e-9);
  const Entropy cubic = parse_entropy("power(3)");
  const ConeVector wp(mu, r.witness_p);
  const ConeVector wq(mu, r.witness_q);
  EXPECT_EQ(std::abs(bregman_divergence(cubic, wp, wq) - bregman_divergence(cubic, wq, wp)), r.max_symmetry_defect);
}

TEST(Symmetry, CompositePowersAreAsymmetric) {
  for (std::size_t n : {3u, 5u}) {
    const auto mu = MeasureSpace::uniform(n);
    for (double gamma : {1.5, 3.0}) {
      const auto r = symmetry_defect(power_composite(mu, gamma), mu, 42, 200);
      EXPECT_EQ(r.classification, SymmetryClass::asymmetric_with_witness) << gamma;
      EXPECT_GT(r.fit_residual, 1e-10) << gamma;
    }
  }
}

TEST(Symmetry, WeightedQuadraticMatchesQuadraticForm) {
  for (std::uint64_t k = 0; k < 20; ++k) {
    Rng rng(43, k);
    const std::size_t n = 2 + k % 7;
    const std::vector<double> m = random_spd(rng, n);
    const auto mu = MeasureSpace::uniform(n);
    const Entropy e = catalog_entropy("weighted_quadratic", m);
    const auto r = symmetry_defect(e, mu, 42, 100);
    EXPECT_LE(r.max_symmetry_defect, 1e-12 * (1 + n * n)) << n;
    EXPECT_EQ(r.classification, SymmetryClass::symmetric_generalized_quadratic) << n;
    for (int j = 0; j < 10; ++j) {
      const ConeVector p = sample_box_point(rng, mu, -1, 1);
      const ConeVector q = sample_box_point(rng, mu, -1, 1);
      const double expect = oracle::quadratic_form(p.data(), q.data(), m);
      EXPECT_NEAR(bregman_divergence(e, p, q), expect, 1e-12 * (1 + std::abs(expect)));
    }
  }
}

TEST(DiscriminationBoundTest, Examples) {
  const auto mu = MeasureSpace::uniform(2);
  const std::vector<double> nu{1, 1};
  const auto a = quadratic_discrimination_bound(cv(mu, {1, 0}), cv(mu, {0.5, 0.5}), nu);
  EXPECT_DOUBLE_EQ(a.d1, 0.0);
  EXPECT_DOUBLE_EQ(a.scaled_d2, 1.0);
  const auto b = quadratic_discrimination_bound(cv(mu, {0.3, 0.7}), cv(mu, {0.3, 0.7}), nu);
  EXPECT_EQ(b.d1, 0.0);
  EXPECT_EQ(b.scaled_d2, 0.0);
  const auto c = quadratic_discrimination_bound(cv(mu, {2, 0}), cv(mu, {0, 0}), nu);
  EXPECT_DOUBLE_EQ(c.d1, 4.0);
  EXPECT_DOUBLE_EQ(c.scaled_d2, 8.0);
}

// Property: nonnegativity and strictness of the divergence on domain pairs.
TEST(BregmanProperty, NonnegativeAndPositiveDefinite) {
  for (const auto& name : default_catalog()) {
    const Entropy e = parse_entropy(name);
    const auto mu = MeasureSpace::uniform(4);
    for (std::uint64_t k = 0; k < 1000; ++k) {
      Rng rng(44, k);
      const ConeVector p = sample_box_point(rng, mu, 0.05, 2);
      const ConeVector q = sample_box_point(rng, mu, 0.05, 2);
      const double d = bregman_divergence(e, p, q);
      EXPECT_GE(d, -1e-12) << name;
      if (e.strict() && max_abs_diff(p.values(), q.values()) > 1e-6) EXPECT_GT(d, 1e-12) << name;
    }
  }
}

TEST(BregmanProperty, RebaseInvariance) {
  for (const auto& name : default_catalog()) {
    const Entropy e = parse_entropy(name);
    const auto mu = MeasureSpace({0.5, 1.0, 2.0});
    const Entropy psi = rebase_entropy(e, cv(mu, {0.4, 0.8, 1.2}));
    for (std::uint64_t k = 0; k < 100; ++k) {
      Rng rng(45, k);
      const ConeVector p = sample_box_point(rng, mu, 0.05, 2);
      const ConeVector q = sample_box_point(rng, mu, 0.05, 2);
      EXPECT_NEAR(bregman_divergence(psi, p, q), bregman_divergence(e, p, q), 1e-12) << name;
    }
  }
}

TEST(BregmanProperty, CauchySchwarzBound) {
  for (std::uint64_t k = 0; k < 300; ++k) {
    Rng rng(46, k);
    const std::size_t n = 1 + k % 9;
    const auto mu = MeasureSpace::uniform(n);
    std::vector<double> nu(n);
    for (double& x : nu) x = rng.uniform(0.1, 3);
    const auto b = quadratic_discrimination_bound(sample_box_point(rng, mu, -2, 2), sample_box_point(rng, mu, -2, 2), nu);
    EXPECT_LE(b.d1, b.scaled_d2 * (1 + 1e-12));
  }
}
