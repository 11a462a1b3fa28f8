#include "psr/entropy.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <algorithm>
#include <charconv>
#include <cmath>

#include "psr/sampling.hpp"

namespace psr {

Entropy::Entropy(Definition def) {
  if (!def.value) throw ConstructionError("entropy '" + def.name + "' has no value oracle");
  if (def.domain == EntropyDomain::custom && !def.custom_domain) {
    throw ConstructionError("entropy '" + def.name + "' declares a custom domain but supplies none");
  }
  def_ = std::make_shared<const Definition>(std::move(def));
}

bool Entropy::contains(const ConeVector& q) const {
  switch (def_->domain) {
    case EntropyDomain::whole_space:
      return q.finite();
    case EntropyDomain::nonnegative_orthant:
      return q.finite() && q.nonnegative();
    case EntropyDomain::custom:
      if (!(q.space() == def_->custom_domain->space())) {
        throw StructuralError("entropy '" + def_->name + "': point on a different measure space");
      }
      return def_->custom_domain->contains(q);
  }
  return false;
}

ConvexDomainSpec Entropy::domain(const MeasureSpace& space) const {
  switch (def_->domain) {
    case EntropyDomain::whole_space:
      return ConvexDomainSpec::whole_space(space);
    case EntropyDomain::nonnegative_orthant:
      return ConvexDomainSpec::nonnegative_orthant(space);
    case EntropyDomain::custom:
      if (!(space == def_->custom_domain->space())) {
        throw StructuralError("entropy '" + def_->name + "' is bound to another measure space");
      }
      return *def_->custom_domain;
  }
  throw DomainError("unreachable");
}

double Entropy::value(const ConeVector& q) const {
  if (!contains(q)) throw DomainError("entropy '" + def_->name + "': point outside the domain");
  return def_->value(q);
}

DualVector Entropy::subgradient(const ConeVector& q) const {
  if (!def_->subgradient) throw DomainError("entropy '" + def_->name + "' has no subgradient oracle");
  if (!contains(q)) throw DomainError("entropy '" + def_->name + "': point outside the domain");
  return def_->subgradient(q);
}

namespace {

template <class Fn>
DualVector map_dual(const ConeVector& q, Fn fn) {
  std::vector<double> out(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) out[i] = fn(q[i], i);
  return DualVector(q.space(), std::move(out));
}

double power_sum(const ConeVector& q, double gamma) {
  CompensatedSum sum;
  for (std::size_t i = 0; i < q.size(); ++i) sum.add(std::pow(q[i], gamma) * q.space().weight(i));
  return sum.value();
}

void expect_no_params(std::string_view name, std::span<const double> params) {
  if (!params.empty()) throw ConstructionError(std::string(name) + " takes no parameters");
}

double expect_gamma(std::string_view name, std::span<const double> params) {
  if (params.size() != 1) throw ConstructionError(std::string(name) + " takes exactly one parameter (gamma)");
  const double gamma = params[0];
  if (!(gamma > 1.0) || !std::isfinite(gamma)) {
    throw ConstructionError(std::string(name) + ": gamma must be a finite number > 1");
  }
  return gamma;
}

std::string format_param(double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

Entropy quadratic() {
  Entropy::Definition d;
  d.name = "quadratic";
  d.value = [](const ConeVector& q) { return inner(q, q); };
  d.subgradient = [](const ConeVector& q) { return as_dual(2.0 * q); };
  d.homogeneity_degree = 2.0;
  return Entropy(std::move(d));
}

Entropy spherical() {
  Entropy::Definition d;
  d.name = "spherical";
  d.value = [](const ConeVector& q) { return std::sqrt(inner(q, q)); };
  d.subgradient = [](const ConeVector& q) {
    const double norm = std::sqrt(inner(q, q));
    if (!(norm > 0.0)) throw DomainError("spherical: subgradient is not unique at the origin");
    return as_dual((1.0 / norm) * q);
  };
  d.homogeneity_degree = 1.0;
  d.strict = false;
  return Entropy(std::move(d));
}

Entropy power(double gamma) {
  Entropy::Definition d;
  d.name = "power(" + format_param(gamma) + ")";
  d.domain = EntropyDomain::nonnegative_orthant;
  d.value = [gamma](const ConeVector& q) { return power_sum(q, gamma); };
  d.subgradient = [gamma](const ConeVector& q) {
    return map_dual(q, [gamma](double x, std::size_t) { return gamma * std::pow(x, gamma - 1.0); });
  };
  d.homogeneity_degree = gamma;
  return Entropy(std::move(d));
}

Entropy shannon() {
  Entropy::Definition d;
  d.name = "shannon";
  d.domain = EntropyDomain::nonnegative_orthant;
  d.value = [](const ConeVector& q) {
    CompensatedSum sum;
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (q[i] > 0.0) sum.add(q[i] * std::log(q[i]) * q.space().weight(i));
    }
    return sum.value();
  };
  d.subgradient = [](const ConeVector& q) {
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (!(q[i] > 0.0)) throw DomainError("shannon: no subgradient at a boundary point (q_" + std::to_string(i) + " = 0)");
    }
    return map_dual(q, [](double x, std::size_t) { return std::log(x) + 1.0; });
  };
  d.boundary_score = [](const Density& q) {
    return map_dual(q, [](double x, std::size_t) {
      return x > 0.0 ? std::log(x) : -std::numeric_limits<double>::infinity();
    });
  };
  return Entropy(std::move(d));
}

Entropy pseudospherical(double gamma) {
  Entropy::Definition d;
  d.name = "pseudospherical(" + format_param(gamma) + ")";
  d.domain = EntropyDomain::nonnegative_orthant;
  d.value = [gamma](const ConeVector& q) { return std::pow(power_sum(q, gamma), 1.0 / gamma); };
  d.subgradient = [gamma](const ConeVector& q) {
    const double s = power_sum(q, gamma);
    if (!(s > 0.0)) throw DomainError("pseudospherical: subgradient is not unique at the origin");
    const double scale = std::pow(s, (gamma - 1.0) / gamma);
    return map_dual(q, [gamma, scale](double x, std::size_t) { return std::pow(x, gamma - 1.0) / scale; });
  };
  d.homogeneity_degree = 1.0;
  d.strict = false;
  return Entropy(std::move(d));
}

Entropy weighted_quadratic(std::span<const double> params) {
  const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(params.size()))));
  if (n == 0 || n * n != params.size()) {
    throw ConstructionError("weighted_quadratic expects n*n matrix entries, got " + std::to_string(params.size()));
  }
  const auto ni = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd m(ni, ni);
  for (Eigen::Index r = 0; r < ni; ++r) {
    for (Eigen::Index c = 0; c < ni; ++c) m(r, c) = params[static_cast<std::size_t>(r * ni + c)];
  }
  if (!m.allFinite() || (m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, m.cwiseAbs().maxCoeff())) {
    throw ConstructionError("weighted_quadratic: Q must be finite and symmetric");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) throw ConstructionError("weighted_quadratic: Q is not positive-definite");

  auto matrix = std::make_shared<const std::vector<double>>(params.begin(), params.end());
  auto check = [n](const ConeVector& q) {
    if (q.size() != n) throw StructuralError("weighted_quadratic: Q is " + std::to_string(n) + "x" + std::to_string(n));
  };
  Entropy::Definition d;
  d.name = "weighted_quadratic";
  d.value = [matrix, n, check](const ConeVector& q) {
    check(q);
    CompensatedSum sum;
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) sum.add(q[r] * (*matrix)[r * n + c] * q[c]);
    }
    return sum.value();
  };
  d.subgradient = [matrix, n, check](const ConeVector& q) {
    check(q);
    return map_dual(q, [&](double, std::size_t r) {
      CompensatedSum sum;
      for (std::size_t c = 0; c < n; ++c) sum.add((*matrix)[r * n + c] * q[c]);
      return 2.0 * sum.value() / q.space().weight(r);
    });
  };
  d.homogeneity_degree = 2.0;
  return Entropy(std::move(d));
}

}  // namespace

Entropy catalog_entropy(std::string_view name, std::span<const double> params) {
  if (name == "quadratic") {
    expect_no_params(name, params);
    return quadratic();
  }
  if (name == "spherical") {
    expect_no_params(name, params);
    return spherical();
  }
  if (name == "shannon") {
    expect_no_params(name, params);
    return shannon();
  }
  if (name == "power") return power(expect_gamma(name, params));
  if (name == "pseudospherical") return pseudospherical(expect_gamma(name, params));
  if (name == "weighted_quadratic") return weighted_quadratic(params);
  throw ConstructionError("unknown entropy '" + std::string(name) + "'");
}

Entropy parse_entropy(std::string_view spec) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  spec = trim(spec);
  const auto open = spec.find('(');
  if (open == std::string_view::npos) return catalog_entropy(spec);
  if (spec.back() != ')') throw ConstructionError("malformed entropy spec '" + std::string(spec) + "'");
  const std::string_view name = trim(spec.substr(0, open));
  std::string_view args = spec.substr(open + 1, spec.size() - open - 2);
  std::vector<double> params;
  while (!trim(args).empty()) {
    const auto comma = args.find(',');
    const std::string_view token = trim(args.substr(0, comma));
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), x);
    if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
      throw ConstructionError("bad parameter '" + std::string(token) + "' in '" + std::string(spec) + "'");
    }
    params.push_back(x);
    if (comma == std::string_view::npos) break;
    args.remove_prefix(comma + 1);
  }
  return catalog_entropy(name, params);
}

std::vector<std::string> default_catalog() {
  return {"quadratic", "spherical", "shannon", "power(1.5)", "power(3)", "pseudospherical(3)"};
}

double canonical_extension_value(const Entropy& e, const ConeVector& q) {
  if (e.homogeneity_degree() == 1.0) {
    if (!q.nonnegative() || !(total_mass(q) > 0.0)) throw DomainError("canonical extension needs a nonzero cone point");
    return e.value(q);
  }
  const Density hat = normalize(q);
  return total_mass(q) * e.value(hat);
}

DualVector supporting_score(const Entropy& e, const Density& q) {
  try {
    const DualVector f = e.subgradient(q);
    const double offset = e.value(q) - pair(q, f);
    return f + DualVector::constant(q.space(), offset);
  } catch (const DomainError&) {
    if (!e.boundary_score()) throw;
    return e.boundary_score()(q);
  }
}

DualVector extended_subgradient(const Entropy& e, const ConeVector& q) {
  return supporting_score(e, normalize(q));
}

double directional_derivative_fd(const Entropy& e, const ConeVector& q, const ConeVector& p, double h) {
  if (!(h > 0.0)) throw PreconditionError("directional_derivative_fd: step must be positive");
  if (!e.contains(q)) throw DomainError("directional_derivative_fd: base point outside the domain");
  if (!e.contains(q + h * p)) throw DomainError("directional_derivative_fd: q + h p leaves the domain");

  const double base = e.value(q);
  auto quotient = [&](double t) {
    const double v = e.value(q + t * p);
    if (std::isnan(v)) throw DomainError("directional_derivative_fd: entropy returned NaN");
    return (v - base) / t;
  };
  const double d1 = quotient(h);
  const double d2 = quotient(h / 2);
  const double d3 = quotient(h / 4);
  const double d4 = quotient(h / 8);

  // Quotients of a convex function fall monotonically as t -> 0+. A finite
  // limit shows shrinking gaps (ratio ~1/2 for smooth functions); a gap that
  // does not shrink means the quotients run off to -infinity.
  const double noise = 64.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(base)) / (h / 8);
  const double g1 = d1 - d2;
  const double g2 = d2 - d3;
  const double g3 = d3 - d4;
  if (g1 > noise && g2 >= 0.9 * g1 && g3 >= 0.9 * g2) return -std::numeric_limits<double>::infinity();

  return 2.0 * d2 - d1;
}

Entropy composite_entropy(const CompositeEntropySpec& spec, const ConvexDomainSpec& domain) {
  if (!spec.outer || !spec.outer_derivative || !spec.inner || !spec.inner_derivative) {
    throw ConstructionError("composite entropy '" + spec.name + "': missing scalar oracle");
  }
  const MeasureSpace& space = domain.space();
  if (spec.nu_weights.size() != space.size()) throw StructuralError("composite entropy: nu has the wrong length");
  for (double v : spec.nu_weights) {
    if (!(v > 0.0)) throw ConstructionError("composite entropy: nu weights must be positive");
  }

  auto nu = std::make_shared<const std::vector<double>>(spec.nu_weights);
  auto integral = [nu, f = spec.inner](const ConeVector& q) {
    CompensatedSum sum;
    for (std::size_t i = 0; i < q.size(); ++i) sum.add(f(q[i]) * (*nu)[i]);
    return sum.value();
  };

  Entropy::Definition d;
  d.name = spec.name;
  d.domain = EntropyDomain::custom;
  d.custom_domain = domain;
  d.strict = spec.strict;
  d.value = [integral, phi = spec.outer](const ConeVector& q) { return phi(integral(q)); };
  d.subgradient = [integral, nu, dphi = spec.outer_derivative, df = spec.inner_derivative](const ConeVector& q) {
    const double scale = dphi(integral(q));
    return map_dual(q, [&](double x, std::size_t i) { return scale * df(x) * (*nu)[i] / q.space().weight(i); });
  };
  Entropy result(std::move(d));

  Rng rng(0x5eedc0de, 0);
  for (int k = 0; k < 200; ++k) {
    const auto a = sample_point(rng, domain, 0.0, 2.0);
    const auto b = sample_point(rng, domain, 0.0, 2.0);
    if (!a || !b) break;
    for (const ConeVector* x : {&*a, &*b}) {
      if (spec.outer_derivative(integral(*x)) < -1e-12) {
        throw ConstructionError("composite entropy '" + spec.name + "': outer function is decreasing on the sampled range");
      }
    }
    const ConeVector mid = 0.5 * (*a + *b);
    const double fa = result.value(*a);
    const double fb = result.value(*b);
    const double fm = result.value(mid);
    if (fm > 0.5 * (fa + fb) + 1e-10 * (1.0 + std::abs(fa) + std::abs(fb))) {
      throw ConstructionError("composite entropy '" + spec.name + "' fails the midpoint convexity check");
    }
  }
  return result;
}

}  // namespace psr
