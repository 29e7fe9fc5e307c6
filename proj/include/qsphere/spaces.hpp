#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qsphere/angle.hpp"

namespace qsphere {

using Complex = std::complex<double>;

namespace detail {
/// Tag for constructors that skip invariant validation. Reserved for
/// library internals whose outputs satisfy the invariant by construction.
struct Unchecked {};
inline constexpr Unchecked unchecked{};
}  // namespace detail

/// Two coprime positive integer weights.
struct WeightsPQ {
  WeightsPQ(int p, int q);
  int p;
  int q;
};

bool operator==(const WeightsPQ& a, const WeightsPQ& b);

/// Two positive real weights whose ratio is meant to be irrational. The
/// ratio cannot be certified irrational numerically, so construction
/// records the continued fraction of s/t; a terminating expansion flags
/// the pair as effectively rational (near_rational).
struct WeightsST {
  WeightsST(double s, double t);
  double s;
  double t;
  ContinuedFraction ratio_cf;  ///< expansion of s/t
  bool near_rational;          ///< expansion terminated within the default depth
};

bool operator==(const WeightsST& a, const WeightsST& b);

/// Point (z, w) on the unit 3-sphere |z|^2 + |w|^2 = 1.
struct SpherePoint3 {
  SpherePoint3(Complex z, Complex w);
  SpherePoint3(Complex z, Complex w, detail::Unchecked) : z(z), w(w) {}
  Complex z;
  Complex w;
};

/// Point (z, w) on the ellipsoid p|z|^2 + q|w|^2 = pq.
struct EllipsoidPointPQ {
  EllipsoidPointPQ(Complex z, Complex w, WeightsPQ weights);
  EllipsoidPointPQ(Complex z, Complex w, WeightsPQ weights, detail::Unchecked)
      : z(z), w(w), weights(weights) {}
  Complex z;
  Complex w;
  WeightsPQ weights;
};

/// Point (z, w) on the ellipsoid s|z|^2 + t|w|^2 = st.
struct EllipsoidPointST {
  EllipsoidPointST(Complex z, Complex w, WeightsST weights);
  EllipsoidPointST(Complex z, Complex w, WeightsST weights, detail::Unchecked)
      : z(z), w(w), weights(std::move(weights)) {}
  Complex z;
  Complex w;
  WeightsST weights;
};

/// Point (z, x) on the unit 2-sphere |z|^2 + x^2 = 1.
struct S2Point {
  S2Point(Complex z, double x);
  S2Point(Complex z, double x, detail::Unchecked) : z(z), x(x) {}
  Complex z;
  double x;
};

/// Absolute deviation from the defining equation of the space.
double constraint_residual(const SpherePoint3& p);
double constraint_residual(const EllipsoidPointPQ& p);
double constraint_residual(const EllipsoidPointST& p);
double constraint_residual(const S2Point& p);

/// Constructors from modulus of z plus argument turns. The modulus of w is
/// derived from the defining equation, so the constraint holds by
/// construction. modulus_z ranges over [0, 1], [0, sqrt(q)], [0, sqrt(t)]
/// respectively; out-of-range moduli are rejected.
SpherePoint3 make_point(double modulus_z, Turn arg_z, Turn arg_w);
EllipsoidPointPQ make_point(double modulus_z, Turn arg_z, Turn arg_w, const WeightsPQ& weights);
EllipsoidPointST make_point(double modulus_z, Turn arg_z, Turn arg_w, const WeightsST& weights);

/// Hopf fibration (z, w) -> (2 z conj(w), |z|^2 - |w|^2).
S2Point hopf(const SpherePoint3& p);

/// A point of the fiber over target: moduli sqrt((1 + x)/2), sqrt((1 - x)/2)
/// with the phase difference arg(z0) split as arg_z = arg(z0) + fiber,
/// arg_w = fiber. Sweeping fiber over [0, 1) traces the whole fiber circle.
SpherePoint3 hopf_preimage(const S2Point& target, Turn fiber);

/// Diagonal circle action (z, w) -> (e^{2 pi i theta} z, e^{2 pi i theta} w).
SpherePoint3 act_hopf(Turn theta, const SpherePoint3& p);

/// Weighted circle action (z, w) -> (e^{2 pi i p theta} z, e^{2 pi i q theta} w).
EllipsoidPointPQ act_pq(Turn theta, const EllipsoidPointPQ& p);

/// Real-line action (z, w) -> (e^{2 pi i s theta} z, e^{2 pi i t theta} w).
/// theta is an unreduced real, not a Turn: for irrational s/t the action
/// does not factor through the circle (theta and theta + 1 act differently).
EllipsoidPointST act_st(double theta, const EllipsoidPointST& p);

/// Deterministic uniform doubles in [0, 1). The output sequence depends
/// only on the seed, independent of platform.
class SampleStream {
 public:
  explicit SampleStream(std::uint64_t seed) : state_(seed) {}
  double next_unit();
  Turn next_turn() { return frac(next_unit()); }

 private:
  std::uint64_t next_word();
  std::uint64_t state_;
};

/// Deterministic pseudo-random points: modulus_z^2 uniform over its full
/// range, argument turns independent uniform. Same seed, same sequence.
std::vector<SpherePoint3> sample_uniform(std::size_t count, std::uint64_t seed);
std::vector<EllipsoidPointPQ> sample_uniform(const WeightsPQ& weights, std::size_t count,
                                             std::uint64_t seed);
std::vector<EllipsoidPointST> sample_uniform(const WeightsST& weights, std::size_t count,
                                             std::uint64_t seed);

/// Uniform points on the 2-sphere (x uniform in [-1, 1], phase uniform).
std::vector<S2Point> sample_uniform_s2(std::size_t count, std::uint64_t seed);

/// Euclidean distance in the ambient C^2 (resp. C x R) coordinates.
double ambient_dist(const SpherePoint3& a, const SpherePoint3& b);
double ambient_dist(const EllipsoidPointPQ& a, const EllipsoidPointPQ& b);
double ambient_dist(const EllipsoidPointST& a, const EllipsoidPointST& b);
double ambient_dist(const S2Point& a, const S2Point& b);

}  // namespace qsphere
