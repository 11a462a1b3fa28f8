#pragma once

// Direction cones, the two-sided direction space O(q), annihilators, the
// algebraic quasi-interior, and sampled subgradient probes on polyhedral
// domains.
//
// For a polyhedral K and q in K, a direction d is feasible (q + l d in K for
// some l > 0) iff it preserves every equality and does not increase any
// inequality that is active at q. O(q) is the null space of the equality
// normals together with the active inequality normals.

#include <cstdint>
#include <optional>
#include <vector>

#include "psr/domain.hpp"
#include "psr/entropy.hpp"
#include "psr/measure.hpp"

namespace psr {

// True iff q + l d lies in K for some l > 0. Throws PreconditionError if q is
// not in K.
bool direction_cone_membership(const ConvexDomainSpec& k, const ConeVector& q, const ConeVector& d);

// Euclidean-orthonormal basis of O(q) = Cone(K - q) cap -Cone(K - q).
std::vector<ConeVector> lineality_space(const ConvexDomainSpec& k, const ConeVector& q);

// Orthonormal basis of {f : pair(v, f) = 0 for every v}, computed by SVD
// with singular values <= 1e-10 * max(1, sigma_max) treated as zero. The
// annihilator of an empty list is the whole dual space.
std::vector<DualVector> annihilator_basis(const MeasureSpace& space, const std::vector<ConeVector>& vectors);

// q is quasi-interior iff O(q) has the same annihilator as the direction
// space of aff K, i.e. O(q) spans all directions that stay in aff K. For a
// full-dimensional K this is a trivial annihilator.
bool is_quasi_interior(const ConvexDomainSpec& k, const ConeVector& q);

struct RejectedCandidate {
  DualVector candidate;
  // a point p in K with Phi(p) < (p - q).q* + Phi(q), when one was found
  std::optional<ConeVector> witness_point;
  // a feasible direction d with d.q* > Phi'_+(d, q) + 1e-6, when one was found
  std::optional<ConeVector> witness_direction;
  double violation = 0.0;
};

struct SubgradientProbeResult {
  std::vector<DualVector> verified;
  std::vector<RejectedCandidate> rejected;
  bool quasi_interior = false;
  std::size_t directions_sampled = 0;
  std::size_t points_sampled = 0;
  bool unique_claim = false;
};

struct ProbeOptions {
  std::uint64_t seed = 42;
  std::size_t directions = 64;
  double inequality_tolerance = 1e-10;
  double derivative_tolerance = 1e-6;
};

// For each candidate q*, checks the subgradient inequality
//     Phi(p) >= (p - q).q* + Phi(q)
// on points p = q + t d along sampled feasible directions d (t from 1e-4 up
// to 1, kept inside K), and the derivative bound d.q* <= Phi'_+(d, q).
// unique_claim is set when q is quasi-interior and some verified candidate
// satisfies d.q* = Phi'_+(d, q) on all sampled two-sided directions.
SubgradientProbeResult subdifferential_probe(const Entropy& e, const ConvexDomainSpec& k, const ConeVector& q,
                                             const std::vector<DualVector>& candidates,
                                             const ProbeOptions& options = {});

// Feasible unit directions at q: the O(q) basis in both signs, the
// coordinate directions that are feasible, and random directions from the
// equality null space that pass direction_cone_membership.
std::vector<ConeVector> sample_feasible_directions(const ConvexDomainSpec& k, const ConeVector& q, std::uint64_t seed,
                                                   std::size_t count);

}  // namespace psr
