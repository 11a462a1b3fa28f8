#include "psr/sampling.hpp"

#include <cmath>
#include <numbers>

namespace psr {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  // splitmix64 finalizer over a mix of both inputs
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::log_uniform(double lo, double hi) {
  return std::exp(uniform(std::log(lo), std::log(hi)));
}

double Rng::normal() {
  const double r = std::sqrt(-2.0 * std::log(uniform_open()));
  return r * std::cos(2.0 * std::numbers::pi * uniform());
}

Density sample_density(Rng& rng, const MeasureSpace& space) {
  std::vector<double> w(space.size());
  CompensatedSum total;
  for (double& x : w) {
    x = rng.exponential();
    total.add(x);
  }
  const double t = total.value();
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = w[i] / t / space.weight(i);
  return Density(space, std::move(w));
}

ConeVector sample_cone_point(Rng& rng, const MeasureSpace& space, double lo, double hi) {
  const Density shape = sample_density(rng, space);
  return rng.log_uniform(lo, hi) * static_cast<const ConeVector&>(shape);
}

ConeVector sample_box_point(Rng& rng, const MeasureSpace& space, double lo, double hi) {
  std::vector<double> v(space.size());
  for (double& x : v) x = rng.uniform(lo, hi);
  return ConeVector(space, std::move(v));
}

}  // namespace psr
