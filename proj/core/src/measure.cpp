#include "psr/measure.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace psr {

MeasureSpace::MeasureSpace(std::vector<double> weights) {
  if (weights.empty()) throw PreconditionError("measure space needs at least one atom");
  CompensatedSum total;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i])) {
      throw PreconditionError("measure weight " + std::to_string(i) + " must be positive and finite");
    }
    total.add(weights[i]);
  }
  total_ = total.value();
  weights_ = std::make_shared<const std::vector<double>>(std::move(weights));
}

MeasureSpace MeasureSpace::uniform(std::size_t n, double weight) {
  return MeasureSpace(std::vector<double>(n, weight));
}

bool operator==(const MeasureSpace& a, const MeasureSpace& b) noexcept {
  return a.weights_ == b.weights_ || *a.weights_ == *b.weights_;
}

namespace {

void check_density(const ConeVector& q) {
  CompensatedSum mass;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (!(q[i] >= 0.0) || !std::isfinite(q[i])) {
      throw DomainError("density entry " + std::to_string(i) + " is negative or not finite");
    }
    mass.add(q[i] * q.space().weight(i));
  }
  if (std::abs(mass.value() - 1.0) > Density::kMassTolerance) {
    throw DomainError("density mass " + std::to_string(mass.value()) + " differs from 1");
  }
}

}  // namespace

Density::Density(MeasureSpace space, std::vector<double> values)
    : ConeVector(std::move(space), std::move(values)) {
  check_density(*this);
}

Density::Density(ConeVector q) : ConeVector(std::move(q)) { check_density(*this); }

double pair(const ConeVector& p, const DualVector& f) {
  if (!(p.space() == f.space())) throw StructuralError("pair: operands live on different measure spaces");
  CompensatedSum sum;
  bool pos_inf = false;
  bool neg_inf = false;
  const auto w = p.space().weights();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    const double term = p[i] * f[i] * w[i];
    if (std::isinf(term)) {
      (term > 0 ? pos_inf : neg_inf) = true;
    } else {
      sum.add(term);
    }
  }
  if (pos_inf && neg_inf) throw DomainError("pair: expectation mixes +inf and -inf");
  if (pos_inf) return std::numeric_limits<double>::infinity();
  if (neg_inf) return -std::numeric_limits<double>::infinity();
  return sum.value();
}

double inner(const ConeVector& p, const ConeVector& q) {
  if (!(p.space() == q.space())) throw StructuralError("inner: operands live on different measure spaces");
  CompensatedSum sum;
  const auto w = p.space().weights();
  for (std::size_t i = 0; i < p.size(); ++i) sum.add(p[i] * q[i] * w[i]);
  return sum.value();
}

double total_mass(const ConeVector& q) {
  CompensatedSum sum;
  const auto w = q.space().weights();
  for (std::size_t i = 0; i < q.size(); ++i) sum.add(q[i] * w[i]);
  return sum.value();
}

Density normalize(const ConeVector& q) {
  if (!q.nonnegative()) throw DomainError("normalize: negative entry");
  const double mass = total_mass(q);
  if (!(mass > 0.0) || !std::isfinite(mass)) throw DomainError("normalize: total mass must be positive");
  std::vector<double> out(q.data());
  for (double& v : out) v /= mass;
  return Density(q.space(), std::move(out));
}

DualVector as_dual(const ConeVector& q) { return DualVector(q.space(), q.data()); }
ConeVector as_primal(const DualVector& f) { return ConeVector(f.space(), f.data()); }

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw StructuralError("max_abs_diff: length mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace psr
