#pragma once

#include <optional>

#include "qsphere/quotients.hpp"

namespace qsphere {

enum class Pole { south, north };

enum class GroupKind { trivial, cyclic, dense_z };

/// A point of an open disk B(r) = { |rep|^2 < r } modulo the rotation group
/// generated by e^{2 pi i generator}: the chart-domain datum shared by the
/// plain disk, the cyclic quotient B(q)/Z_q, and the dense quotient B(t)/Z.
/// Exact boundary moduli are tolerated and flagged: doubles cannot resolve
/// the open ball any finer, and the square root loses relative precision
/// there anyway.
struct DiskClass {
  Complex rep;
  double radius_sq = 1.0;
  Turn generator;
  GroupKind group_kind = GroupKind::trivial;
  int cyclic_order = 0;      ///< n for cyclic, 0 otherwise
  bool near_boundary = false;  ///< |rep|^2 within 1e-9 of radius_sq
};

/// Domain data of one chart: which disk quotient it is modeled on.
struct ChartSpec {
  SpaceTag space = SpaceTag::sphere;
  Pole pole = Pole::south;
  double domain_radius_sq = 1.0;
  Turn generator;
  GroupKind group_kind = GroupKind::trivial;
  int cyclic_order = 0;
  std::optional<WeightsPQ> pq;
  std::optional<WeightsST> st;
};

/// The two charts covering one quotient. Domains and disk groups:
///   sphere   south B(1), trivial         north B(1), trivial
///   orbi     south B(q), Z_q by 1/q      north B(p), Z_p by 1/p
///   quasi    south B(t), Z by s/t        north B(s), Z by t/s
/// The quasi domains are forced by positivity under the square root:
/// phi_south needs |z|^2 < t, phi_north needs |w|^2 < s.
struct Atlas {
  ChartSpec south;
  ChartSpec north;
};

Atlas sphere_atlas();
Atlas orbi_atlas(const WeightsPQ& weights);
Atlas quasi_atlas(const WeightsST& weights);

/// Wraps a representative into the chart's disk quotient. Rejects
/// |rep|^2 > radius_sq; flags |rep|^2 within 1e-9 of the boundary.
DiskClass disk_class(const ChartSpec& spec, Complex rep);

/// South chart map [z] -> [z : sqrt(a - (a/b)|z|^2)] with (a, b) = (1, 1),
/// (p, q) or (s, t). The second coordinate comes out real nonnegative and
/// the representative satisfies the defining equation by construction.
OrbitRef phi_south(const Atlas& atlas, const DiskClass& d);

/// Inverse of the south chart: flows the representative until w is real
/// positive and reads off z. Requires |w| > 1e-9 (the chart condition
/// w != 0); a resulting |z|^2 beyond the domain radius is rejected as
/// inconsistent input.
DiskClass phi_south_inv(const Atlas& atlas, const OrbitRef& x);

/// North chart map [w] -> [sqrt(b - (b/a)|w|^2) : w], mirror of phi_south.
OrbitRef phi_north(const Atlas& atlas, const DiskClass& d);

/// Inverse of the north chart; chart condition z != 0.
DiskClass phi_north_inv(const Atlas& atlas, const OrbitRef& x);

/// Change of charts phi_north^{-1} o phi_south on the overlap (both
/// coordinates nonzero): [z] -> [(conj(z)/|z|)^e sqrt(a - (a/b)|z|^2)] with
/// exponent e = 1, q/p, t/s. The power uses the principal argument in
/// [0, 1) turns; any other branch differs by a codomain group step, so the
/// class is well defined even though the pointwise formula is multivalued.
DiskClass transition_south_north(const Atlas& atlas, const DiskClass& d);

/// Inverse transition, exponent s/t (resp. p/q, 1); composing the two is
/// the identity on classes.
DiskClass transition_north_south(const Atlas& atlas, const DiskClass& d);

/// Equality of disk classes. Trivial groups compare directly; cyclic
/// groups compare against all n rotations; dense groups compare moduli and
/// search generator multiples k in [-search_bound, search_bound], with
/// undetermined when the bounded search is exhausted (same honesty rule as
/// orbit_equal_st). Structure mismatch is rejected.
EquivalenceVerdict disk_class_equal(const DiskClass& a, const DiskClass& b, const Tolerance& tol);

/// Smallest representative distance seen over the searched group elements
/// (all of them for trivial/cyclic, |k| <= search_bound for dense). An
/// upper bound on the true class distance in the dense case.
double disk_class_distance(const DiskClass& a, const DiskClass& b, std::int64_t search_bound);

}  // namespace qsphere
