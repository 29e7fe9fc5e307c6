#pragma once

#include <optional>
#include <variant>

#include "qsphere/spaces.hpp"

namespace qsphere {

enum class SpaceTag { sphere = 0, orbi_pq = 1, quasi_st = 2 };

enum class Outcome { equal, not_equal, undetermined };

/// Answer of an orbit-equality decision. Numerics force a three-valued
/// outcome: for the real-line action the complement of "equal" is not
/// certifiable when moduli match, so those cases come back undetermined.
struct EquivalenceVerdict {
  Outcome outcome = Outcome::undetermined;
  /// Group parameter carrying representative 1 onto representative 2:
  /// turns for the circle actions, flow time for the real action,
  /// generator count for disk groups. Present exactly when outcome is equal.
  std::optional<double> witness;
  Tolerance tolerance_used;
};

/// A quotient-space point, stored as one representative plus the space it
/// lives in. Equality of OrbitRefs is orbit equality, never representative
/// equality; compare through orbit_equal.
struct OrbitRef {
  using Rep = std::variant<SpherePoint3, EllipsoidPointPQ, EllipsoidPointST>;
  Rep representative;
  SpaceTag space() const { return static_cast<SpaceTag>(representative.index()); }
};

/// Unique orbit representative with w real >= 0 (z real >= 0 when w = 0).
SpherePoint3 canonical_sphere(const SpherePoint3& p);

/// Orbit representative with w real >= 0 and arg(z) in [0, 1/q) turns.
/// The poles collapse: z = 0 maps to (0, sqrt(p)) and w = 0 to (sqrt(q), 0)
/// exactly. No such canonical form exists for the real-line action (a
/// fundamental domain of a dense rotation group has empty interior), which
/// is why there is no canonical_st; compare via orbit_equal_st instead.
EllipsoidPointPQ canonical_pq(const EllipsoidPointPQ& p);

/// Equal iff the Hopf images coincide within eps (fibers are exactly the
/// orbits). Never undetermined.
EquivalenceVerdict orbit_equal_sphere(const SpherePoint3& a, const SpherePoint3& b, double eps);

/// Closed-form orbit test for the weighted circle action. With both
/// coordinates nonzero, a and b are orbit-equal iff moduli agree and
/// q*dalpha - p*dbeta is an integer (dalpha, dbeta the argument
/// differences in turns): theta shifts the arguments by (p*theta, q*theta),
/// and eliminating theta leaves exactly that integrality condition.
/// With one coordinate zero, moduli agreement suffices. Never undetermined.
EquivalenceVerdict orbit_equal_pq(const EllipsoidPointPQ& a, const EllipsoidPointPQ& b,
                                  double eps);

/// Bounded semidecision for the real-line action. Moduli mismatch beyond
/// tol.eps is a certain not_equal; matching moduli with one coordinate at
/// a pole is a certain equal. Otherwise a and b are orbit-equal iff some
/// integer m makes (t/s)(dalpha + m) - dbeta an integer; the search runs
/// over |m| <= tol.search_bound and, when nothing is found, returns
/// undetermined: the orbit of the ratio is dense in the circle, so "not
/// equal" is never numerically certifiable in this branch.
EquivalenceVerdict orbit_equal_st(const EllipsoidPointST& a, const EllipsoidPointST& b,
                                  const Tolerance& tol);

/// Dispatch on the space tag. Both refs must live in the same space.
EquivalenceVerdict orbit_equal(const OrbitRef& a, const OrbitRef& b, const Tolerance& tol);

/// Demonstration that two equal-moduli orbits cannot be separated: a flow
/// time theta carrying a to within eps of b in ambient coordinates.
struct ClosureWitness {
  bool found = false;
  double theta = 0.0;     ///< flow parameter actually used
  double achieved = 0.0;  ///< realized ambient distance of act_st(theta, a) to b
  std::int64_t shift = 0;  ///< integer ladder index m of the winning candidate
  std::int64_t shift_bound = 0;  ///< first convergent denominator of t/s exceeding 1/eps
};

/// Searches theta = (dalpha + m)/s (z phases aligned, w phase off by the
/// orbit of t/s) and the mirror ladder theta = (dbeta + n)/t, stepping m
/// through convergent denominators of the ratio, then polishes theta
/// locally. Requires moduli of a and b within eps/10 and both coordinates
/// nonzero. found is false when no candidate within the shift bound
/// achieves eps; the partial result records the best distance reached.
/// Shrinking eps never worsens the achieved distance: the candidate set
/// for eps/10 contains the one for eps.
ClosureWitness closure_witness(const EllipsoidPointST& a, const EllipsoidPointST& b, double eps);

}  // namespace qsphere
