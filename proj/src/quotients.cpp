#include "qsphere/quotients.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qsphere {

SpherePoint3 canonical_sphere(const SpherePoint3& p) {
  if (p.w == Complex{}) {
    return SpherePoint3(std::abs(p.z), Complex{}, detail::unchecked);
  }
  const double mw = std::abs(p.w);
  return SpherePoint3(p.z * std::conj(p.w) / mw, mw, detail::unchecked);
}

EllipsoidPointPQ canonical_pq(const EllipsoidPointPQ& p) {
  const double pw = p.weights.p, qw = p.weights.q;
  if (p.z == Complex{}) {
    return EllipsoidPointPQ(Complex{}, std::sqrt(pw), p.weights, detail::unchecked);
  }
  if (p.w == Complex{}) {
    return EllipsoidPointPQ(std::sqrt(qw), Complex{}, p.weights, detail::unchecked);
  }
  // Rotate w onto the positive real axis (theta = -beta/q turns), which
  // drags arg(z) to alpha - (p/q) beta; the leftover stabilizer steps
  // arg(z) by 1/q, so reduce it into [0, 1/q).
  const double alpha = arg_turn(p.z).value();
  const double beta = arg_turn(p.w).value();
  const double dragged = frac(alpha - (pw / qw) * beta).value();
  const double scaled = dragged * qw;
  const double reduced = (scaled - std::floor(scaled)) / qw;
  return EllipsoidPointPQ(std::abs(p.z) * unit_phase(frac(reduced)), std::abs(p.w), p.weights,
                          detail::unchecked);
}

EquivalenceVerdict orbit_equal_sphere(const SpherePoint3& a, const SpherePoint3& b, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("orbit_equal_sphere: eps must be positive");
  EquivalenceVerdict v;
  v.tolerance_used = Tolerance{eps, 1};
  if (ambient_dist(hopf(a), hopf(b)) < eps) {
    v.outcome = Outcome::equal;
    // Phase of the dominant coordinate is the best-conditioned witness.
    const bool use_w = std::abs(a.w) >= std::abs(a.z);
    const Turn phase_a = use_w ? arg_turn(a.w) : arg_turn(a.z);
    const Turn phase_b = use_w ? arg_turn(b.w) : arg_turn(b.z);
    v.witness = frac(phase_b.value() - phase_a.value()).value();
  } else {
    v.outcome = Outcome::not_equal;
  }
  return v;
}

EquivalenceVerdict orbit_equal_pq(const EllipsoidPointPQ& a, const EllipsoidPointPQ& b,
                                  double eps) {
  if (!(a.weights == b.weights)) {
    throw std::invalid_argument("orbit_equal_pq: mismatched weights");
  }
  if (!(eps > 0.0)) throw std::invalid_argument("orbit_equal_pq: eps must be positive");
  EquivalenceVerdict v;
  v.tolerance_used = Tolerance{eps, 1};
  const double mza = std::abs(a.z), mzb = std::abs(b.z);
  const double mwa = std::abs(a.w), mwb = std::abs(b.w);
  if (std::fabs(mza - mzb) > eps || std::fabs(mwa - mwb) > eps) {
    v.outcome = Outcome::not_equal;
    return v;
  }
  const double pw = a.weights.p, qw = a.weights.q;
  const Turn dbeta = arg_turn(b.w) - arg_turn(a.w);
  const Turn dalpha = arg_turn(b.z) - arg_turn(a.z);
  if (std::min(mza, mzb) <= eps) {
    // z at the pole: the w phase alone fixes a witness.
    v.outcome = Outcome::equal;
    v.witness = signed_turn(dbeta) / qw;
    return v;
  }
  if (std::min(mwa, mwb) <= eps) {
    v.outcome = Outcome::equal;
    v.witness = signed_turn(dalpha) / pw;
    return v;
  }
  const Turn crit = frac(frac_product(qw, dalpha.value()).value() -
                         frac_product(pw, dbeta.value()).value());
  if (circle_dist(crit, Turn{}) < eps) {
    v.outcome = Outcome::equal;
    // p*theta = dalpha (mod 1) gives theta = (dalpha + j)/p; pick the j
    // whose q*theta also lands on dbeta.
    double best = std::numeric_limits<double>::infinity();
    double witness = 0.0;
    for (int j = 0; j < a.weights.p; ++j) {
      const double theta = (dalpha.value() + j) / pw;
      const double miss = circle_dist(frac_product(qw, theta), dbeta);
      if (miss < best) {
        best = miss;
        witness = frac(theta).value();
      }
    }
    v.witness = witness;
  } else {
    v.outcome = Outcome::not_equal;
  }
  return v;
}

EquivalenceVerdict orbit_equal_st(const EllipsoidPointST& a, const EllipsoidPointST& b,
                                  const Tolerance& tol) {
  if (!(a.weights == b.weights)) {
    throw std::invalid_argument("orbit_equal_st: mismatched weights");
  }
  EquivalenceVerdict v;
  v.tolerance_used = tol;
  const double eps = tol.eps;
  const double s = a.weights.s, t = a.weights.t;
  const double mza = std::abs(a.z), mzb = std::abs(b.z);
  const double mwa = std::abs(a.w), mwb = std::abs(b.w);
  if (std::fabs(mza - mzb) > eps || std::fabs(mwa - mwb) > eps) {
    v.outcome = Outcome::not_equal;
    return v;
  }
  const Turn dalpha = arg_turn(b.z) - arg_turn(a.z);
  const Turn dbeta = arg_turn(b.w) - arg_turn(a.w);
  if (std::min(mza, mzb) <= eps) {
    v.outcome = Outcome::equal;
    v.witness = signed_turn(dbeta) / t;
    return v;
  }
  if (std::min(mwa, mwb) <= eps) {
    v.outcome = Outcome::equal;
    v.witness = signed_turn(dalpha) / s;
    return v;
  }
  // theta = (dalpha + m)/s matches the z phases; the w phases then differ
  // by (t/s)(dalpha + m) - dbeta, which must vanish mod 1.
  const double ratio = t / s;
  const double base = frac(frac_product(ratio, dalpha.value()).value() - dbeta.value()).value();
  for (std::int64_t i = 0; i <= 2 * tol.search_bound; ++i) {
    const std::int64_t m = (i % 2 == 0) ? i / 2 : -(i + 1) / 2;
    const Turn gap = frac(frac_product(ratio, static_cast<double>(m)).value() + base);
    if (circle_dist(gap, Turn{}) < eps) {
      v.outcome = Outcome::equal;
      v.witness = (dalpha.value() + static_cast<double>(m)) / s;
      return v;
    }
  }
  v.outcome = Outcome::undetermined;
  return v;
}

EquivalenceVerdict orbit_equal(const OrbitRef& a, const OrbitRef& b, const Tolerance& tol) {
  if (a.space() != b.space()) {
    throw std::invalid_argument("orbit_equal: refs live in different spaces");
  }
  switch (a.space()) {
    case SpaceTag::sphere:
      return orbit_equal_sphere(std::get<SpherePoint3>(a.representative),
                                std::get<SpherePoint3>(b.representative), tol.eps);
    case SpaceTag::orbi_pq:
      return orbit_equal_pq(std::get<EllipsoidPointPQ>(a.representative),
                            std::get<EllipsoidPointPQ>(b.representative), tol.eps);
    case SpaceTag::quasi_st:
      return orbit_equal_st(std::get<EllipsoidPointST>(a.representative),
                            std::get<EllipsoidPointST>(b.representative), tol);
  }
  throw std::logic_error("orbit_equal: unreachable");
}

namespace {

// One rung of the candidate ladder for the closure search.
struct LadderCandidate {
  std::int64_t m = 0;
  double theta = 0.0;
};

// Greedy descent on ||offset + m * ratio|| using convergent denominators
// q_1..q_J as step sizes, keeping |m| within budget, followed by a local
// sweep over combinations of the two largest usable steps. Collects every
// m it visits; the candidate sets for growing J are nested, which makes
// the achieved distance monotone in the requested tolerance.
void descend(double ratio, double offset, const std::vector<Convergent>& convs, std::size_t levels,
             std::int64_t budget, std::vector<std::int64_t>& out) {
  auto gap_at = [&](std::int64_t m) {
    return signed_turn(frac(frac_product(ratio, static_cast<double>(m)).value() + offset));
  };
  const std::size_t top = std::min(levels, convs.size());
  std::int64_t m = 0;
  double gap = gap_at(0);
  out.push_back(0);
  auto try_move = [&](std::int64_t trial) {
    if (std::llabs(trial) > budget || trial == m) return false;
    const double trial_gap = gap_at(trial);
    out.push_back(trial);
    if (std::fabs(trial_gap) < std::fabs(gap)) {
      m = trial;
      gap = trial_gap;
      return true;
    }
    return false;
  };
  for (int pass = 0; pass < 200; ++pass) {
    bool moved = false;
    for (std::size_t j = top; j-- > 0;) {
      const std::int64_t q = convs[j].den;
      const double step = signed_turn(frac_product(static_cast<double>(q), ratio));
      if (step == 0.0 || std::fabs(step) > std::fabs(gap)) continue;
      std::int64_t k = static_cast<std::int64_t>(std::llround(-gap / step));
      k = std::min(k, (budget - m) / q);
      k = std::max(k, (-budget - m) / q);
      if (k == 0) continue;
      moved = try_move(m + k * q) || moved;
    }
    if (moved) continue;
    // Stuck below every step size: sweep the bracketing rungs reachable by
    // small combinations of the two largest steps, then retry.
    const std::int64_t q1 = convs[top - 1].den;
    const std::int64_t q0 = top >= 2 ? convs[top - 2].den : 1;
    const std::int64_t base = m;
    for (int u = -3; u <= 3; ++u) {
      for (int v = -3; v <= 3; ++v) {
        if (u == 0 && v == 0) continue;
        moved = try_move(base + u * q1 + v * q0) || moved;
      }
    }
    if (!moved) break;
  }
}

// Convergent denominators of ratio up to (and including) the first one
// exceeding limit.
std::vector<Convergent> denominators_until(double ratio, double limit) {
  const ContinuedFraction cf = continued_fraction(ratio, 64);
  std::vector<Convergent> all = convergents(cf);
  std::vector<Convergent> kept;
  for (const Convergent& c : all) {
    if (c.den < 1) continue;
    if (!kept.empty() && c.den == kept.back().den) continue;
    kept.push_back(c);
    if (static_cast<double>(c.den) > limit) break;
  }
  return kept;
}

}  // namespace

ClosureWitness closure_witness(const EllipsoidPointST& a, const EllipsoidPointST& b, double eps) {
  if (!(a.weights == b.weights)) {
    throw std::invalid_argument("closure_witness: mismatched weights");
  }
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw std::invalid_argument("closure_witness: eps must be positive");
  }
  const double s = a.weights.s, t = a.weights.t;
  const double mza = std::abs(a.z), mwa = std::abs(a.w);
  const double mzb = std::abs(b.z), mwb = std::abs(b.w);
  if (mza == 0.0 || mwa == 0.0 || mzb == 0.0 || mwb == 0.0) {
    throw std::invalid_argument("closure_witness: coordinates must be nonzero");
  }
  if (std::fabs(mza - mzb) > eps / 10.0 || std::fabs(mwa - mwb) > eps / 10.0) {
    throw std::invalid_argument("closure_witness: moduli differ beyond eps/10");
  }

  const Turn dalpha = arg_turn(b.z) - arg_turn(a.z);
  const Turn dbeta = arg_turn(b.w) - arg_turn(a.w);
  auto dist_at = [&](double theta) { return ambient_dist(act_st(theta, a), b); };

  ClosureWitness best;
  best.achieved = std::numeric_limits<double>::infinity();

  // Two ladders: z phases matched exactly (ratio t/s acting on the w gap)
  // and w phases matched exactly (ratio s/t acting on the z gap).
  struct Route {
    double ratio;    // phase advance per ladder step
    double offset;   // gap at m = 0
    double align;    // divisor turning a rung into a flow time
    double base;     // aligned phase difference in turns
    double cross;    // weight whose phase takes the leftover gap
  };
  const Route routes[2] = {
      {t / s, frac(frac_product(t / s, dalpha.value()).value() - dbeta.value()).value(), s,
       dalpha.value(), t},
      {s / t, frac(frac_product(s / t, dbeta.value()).value() - dalpha.value()).value(), t,
       dbeta.value(), s},
  };

  for (const Route& route : routes) {
    const std::vector<Convergent> convs = denominators_until(route.ratio, 1.0 / eps);
    if (convs.empty()) continue;
    const std::int64_t bound = convs.back().den;
    best.shift_bound = std::max(best.shift_bound, bound);

    std::vector<std::int64_t> candidates;
    for (std::size_t levels = 1; levels <= convs.size(); ++levels) {
      descend(route.ratio, route.offset, convs, levels, convs[levels - 1].den, candidates);
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    for (std::int64_t m : candidates) {
      const double theta = (route.base + static_cast<double>(m)) / route.align;
      const double gap = signed_turn(
          frac(frac_product(route.ratio, static_cast<double>(m)).value() + route.offset));
      // The crossing phase zeroes out within |gap|/cross of theta; ternary
      // search over that bracket finds the local minimum of the true
      // ambient distance (the two-phase error trade-off).
      double lo = theta - 1.25 * std::fabs(gap) / route.cross;
      double hi = theta + 1.25 * std::fabs(gap) / route.cross;
      for (int it = 0; it < 96; ++it) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (dist_at(m1) <= dist_at(m2)) {
          hi = m2;
        } else {
          lo = m1;
        }
      }
      const double theta_star = 0.5 * (lo + hi);
      const double d_star = dist_at(theta_star);
      const double d_raw = dist_at(theta);
      const double d = std::min(d_star, d_raw);
      if (d < best.achieved) {
        best.achieved = d;
        best.theta = d_star <= d_raw ? theta_star : theta;
        best.shift = m;
      }
    }
  }

  best.found = best.achieved < eps;
  return best;
}

}  // namespace qsphere
