#pragma once

// Finite measure spaces and the vectors that live on them.
//
// Every integral in this library is a weighted sum over the atoms of a
// MeasureSpace. ConeVector holds elements of the span of the densities,
// DualVector holds score functions, and pair() is the duality pairing
//
//     p . f = sum_i p_i f_i mu_i.

#include <cmath>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "psr/errors.hpp"

namespace psr {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class MeasureSpace {
 public:
  // Throws PreconditionError for an empty or non-positive weight vector.
  explicit MeasureSpace(std::vector<double> weights);

  static MeasureSpace uniform(std::size_t n, double weight = 1.0);

  std::size_t size() const noexcept { return weights_->size(); }
  std::span<const double> weights() const noexcept { return *weights_; }
  double weight(std::size_t i) const { return (*weights_)[i]; }
  double total_weight() const noexcept { return total_; }

  // Spaces compare equal when they share storage or carry identical weights.
  friend bool operator==(const MeasureSpace& a, const MeasureSpace& b) noexcept;

 private:
  std::shared_ptr<const std::vector<double>> weights_;
  double total_ = 0.0;
};

namespace detail {

template <class Tag>
class SpaceVector {
 public:
  SpaceVector(MeasureSpace space, std::vector<double> values)
      : space_(std::move(space)), values_(std::move(values)) {
    if (values_.size() != space_.size()) {
      throw StructuralError("vector length " + std::to_string(values_.size()) +
                            " does not match measure space size " +
                            std::to_string(space_.size()));
    }
  }

  static SpaceVector constant(const MeasureSpace& space, double c) {
    return SpaceVector(space, std::vector<double>(space.size(), c));
  }
  static SpaceVector zeros(const MeasureSpace& space) { return constant(space, 0.0); }

  const MeasureSpace& space() const noexcept { return space_; }
  std::span<const double> values() const noexcept { return values_; }
  const std::vector<double>& data() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  SpaceVector operator-() const {
    SpaceVector out = *this;
    for (double& v : out.values_) v = -v;
    return out;
  }
  friend SpaceVector operator+(const SpaceVector& a, const SpaceVector& b) {
    return a.zip(b, [](double x, double y) { return x + y; });
  }
  friend SpaceVector operator-(const SpaceVector& a, const SpaceVector& b) {
    return a.zip(b, [](double x, double y) { return x - y; });
  }
  friend SpaceVector operator*(double c, const SpaceVector& a) {
    SpaceVector out = a;
    for (double& v : out.values_) v *= c;
    return out;
  }

  bool nonnegative() const noexcept {
    for (double v : values_) {
      if (!(v >= 0.0)) return false;
    }
    return true;
  }
  bool finite() const noexcept {
    for (double v : values_) {
      if (!std::isfinite(v)) return false;
    }
    return true;
  }

 private:
  template <class Op>
  SpaceVector zip(const SpaceVector& b, Op op) const {
    if (!(space_ == b.space_)) throw StructuralError("operands live on different measure spaces");
    SpaceVector out = *this;
    for (std::size_t i = 0; i < values_.size(); ++i) out.values_[i] = op(values_[i], b.values_[i]);
    return out;
  }

  MeasureSpace space_;
  std::vector<double> values_;
};

struct ConeTag;
struct DualTag;

}  // namespace detail

// An element of Span P: any real function on the atoms.
using ConeVector = detail::SpaceVector<detail::ConeTag>;

// An element of L(P). Entries may be +-infinity to flag infinite scores.
using DualVector = detail::SpaceVector<detail::DualTag>;

// A nonnegative ConeVector of unit total mass (to within kMassTolerance).
class Density : public ConeVector {
 public:
  static constexpr double kMassTolerance = 1e-9;

  // Throws DomainError when a value is negative or the mass is off.
  Density(MeasureSpace space, std::vector<double> values);
  explicit Density(ConeVector q);
};

// sum_i p_i f_i mu_i with compensated summation. Atoms where p_i == 0 are
// skipped, so an infinite score on a null atom contributes nothing
// (0 * inf := 0). Returns +-inf when an infinite entry meets positive or
// negative mass; throws DomainError if both signs of infinity appear.
double pair(const ConeVector& p, const DualVector& f);

// sum_i p_i q_i mu_i for two primal vectors.
double inner(const ConeVector& p, const ConeVector& q);

// q . 1
double total_mass(const ConeVector& q);

// q / (q . 1). Throws DomainError for negative entries or non-positive mass.
Density normalize(const ConeVector& q);

// Reinterpret values as the other side of the pairing (same numbers).
DualVector as_dual(const ConeVector& q);
ConeVector as_primal(const DualVector& f);

double max_abs_diff(std::span<const double> a, std::span<const double> b);

}  // namespace psr
