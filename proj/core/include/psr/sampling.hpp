#pragma once

// Seeded samplers used by the verification routines.
//
// Draws are built from the raw std::mt19937_64 stream (whose output is fixed
// by the standard) instead of the std:: distributions (whose algorithms are
// implementation-defined), so reports reproduce across standard libraries.
// Each sample k of a run uses its own engine seeded from (seed, k).

#include <cmath>
#include <cstdint>
#include <random>

#include "psr/measure.hpp"

namespace psr {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, std::uint64_t index) : engine_(derive_seed(seed, index)) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Uniform on (0, 1].
  double uniform_open() { return 1.0 - uniform(); }
  double exponential() { return -std::log(uniform_open()); }
  double log_uniform(double lo, double hi);
  // Standard normal via Box-Muller.
  double normal();

  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// Dirichlet(1, ..., 1) weights w, returned as the density w_i / mu_i.
Density sample_density(Rng& rng, const MeasureSpace& space);

// Dirichlet(1) shape times a LogUniform(lo, hi) total mass.
ConeVector sample_cone_point(Rng& rng, const MeasureSpace& space, double lo = 0.1, double hi = 10.0);

// Componentwise Uniform(lo, hi).
ConeVector sample_box_point(Rng& rng, const MeasureSpace& space, double lo, double hi);

}  // namespace psr
