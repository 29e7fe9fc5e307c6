#include "qsphere/atlas.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qsphere {

namespace {

constexpr double kBoundaryGuard = 1e-9;
constexpr double kPoleGuard = 1e-9;

// Ellipsoid coefficients (a, b) of a|z|^2 + b|w|^2 = ab for the space.
std::pair<double, double> coefficients(const ChartSpec& spec) {
  switch (spec.space) {
    case SpaceTag::sphere:
      return {1.0, 1.0};
    case SpaceTag::orbi_pq:
      return {static_cast<double>(spec.pq->p), static_cast<double>(spec.pq->q)};
    case SpaceTag::quasi_st:
      return {spec.st->s, spec.st->t};
  }
  throw std::logic_error("coefficients: unreachable");
}

void require_same_structure(const DiskClass& d, const ChartSpec& spec, const char* what) {
  if (d.radius_sq != spec.domain_radius_sq || !(d.generator == spec.generator) ||
      d.group_kind != spec.group_kind || d.cyclic_order != spec.cyclic_order) {
    throw std::invalid_argument(std::string(what) + ": disk class does not match the chart domain");
  }
}

void require_same_structure(const DiskClass& a, const DiskClass& b, const char* what) {
  if (a.radius_sq != b.radius_sq || !(a.generator == b.generator) ||
      a.group_kind != b.group_kind || a.cyclic_order != b.cyclic_order) {
    throw std::invalid_argument(std::string(what) + ": disk classes differ in structure");
  }
}

}  // namespace

Atlas sphere_atlas() {
  Atlas a;
  a.south = ChartSpec{SpaceTag::sphere, Pole::south, 1.0, Turn{}, GroupKind::trivial, 0, {}, {}};
  a.north = ChartSpec{SpaceTag::sphere, Pole::north, 1.0, Turn{}, GroupKind::trivial, 0, {}, {}};
  return a;
}

Atlas orbi_atlas(const WeightsPQ& weights) {
  Atlas a;
  a.south = ChartSpec{SpaceTag::orbi_pq,       Pole::south, static_cast<double>(weights.q),
                      frac(1.0 / weights.q),   GroupKind::cyclic,
                      weights.q,               weights,
                      {}};
  a.north = ChartSpec{SpaceTag::orbi_pq,       Pole::north, static_cast<double>(weights.p),
                      frac(1.0 / weights.p),   GroupKind::cyclic,
                      weights.p,               weights,
                      {}};
  return a;
}

Atlas quasi_atlas(const WeightsST& weights) {
  Atlas a;
  a.south = ChartSpec{SpaceTag::quasi_st,           Pole::south, weights.t,
                      frac(weights.s / weights.t),  GroupKind::dense_z,
                      0,                            {},
                      weights};
  a.north = ChartSpec{SpaceTag::quasi_st,           Pole::north, weights.s,
                      frac(weights.t / weights.s),  GroupKind::dense_z,
                      0,                            {},
                      weights};
  return a;
}

DiskClass disk_class(const ChartSpec& spec, Complex rep) {
  if (!std::isfinite(rep.real()) || !std::isfinite(rep.imag())) {
    throw std::invalid_argument("disk_class: non-finite representative");
  }
  const double m2 = std::norm(rep);
  if (m2 > spec.domain_radius_sq) {
    throw std::invalid_argument("disk_class: representative outside the chart domain");
  }
  DiskClass d;
  d.rep = rep;
  d.radius_sq = spec.domain_radius_sq;
  d.generator = spec.generator;
  d.group_kind = spec.group_kind;
  d.cyclic_order = spec.cyclic_order;
  d.near_boundary = m2 > spec.domain_radius_sq - kBoundaryGuard;
  return d;
}

OrbitRef phi_south(const Atlas& atlas, const DiskClass& d) {
  const ChartSpec& spec = atlas.south;
  require_same_structure(d, spec, "phi_south");
  const auto [a, b] = coefficients(spec);
  const double w_mod = std::sqrt(std::max(0.0, a - (a / b) * std::norm(d.rep)));
  switch (spec.space) {
    case SpaceTag::sphere:
      return OrbitRef{SpherePoint3(d.rep, w_mod, detail::unchecked)};
    case SpaceTag::orbi_pq:
      return OrbitRef{EllipsoidPointPQ(d.rep, w_mod, *spec.pq, detail::unchecked)};
    case SpaceTag::quasi_st:
      return OrbitRef{EllipsoidPointST(d.rep, w_mod, *spec.st, detail::unchecked)};
  }
  throw std::logic_error("phi_south: unreachable");
}

OrbitRef phi_north(const Atlas& atlas, const DiskClass& d) {
  const ChartSpec& spec = atlas.north;
  require_same_structure(d, spec, "phi_north");
  const auto [a, b] = coefficients(spec);
  const double z_mod = std::sqrt(std::max(0.0, b - (b / a) * std::norm(d.rep)));
  switch (spec.space) {
    case SpaceTag::sphere:
      return OrbitRef{SpherePoint3(z_mod, d.rep, detail::unchecked)};
    case SpaceTag::orbi_pq:
      return OrbitRef{EllipsoidPointPQ(z_mod, d.rep, *spec.pq, detail::unchecked)};
    case SpaceTag::quasi_st:
      return OrbitRef{EllipsoidPointST(z_mod, d.rep, *spec.st, detail::unchecked)};
  }
  throw std::logic_error("phi_north: unreachable");
}

namespace {

struct RawPoint {
  Complex z;
  Complex w;
};

RawPoint raw(const OrbitRef& x) {
  switch (x.space()) {
    case SpaceTag::sphere: {
      const auto& p = std::get<SpherePoint3>(x.representative);
      return {p.z, p.w};
    }
    case SpaceTag::orbi_pq: {
      const auto& p = std::get<EllipsoidPointPQ>(x.representative);
      return {p.z, p.w};
    }
    case SpaceTag::quasi_st: {
      const auto& p = std::get<EllipsoidPointST>(x.representative);
      return {p.z, p.w};
    }
  }
  throw std::logic_error("raw: unreachable");
}

// Phase advance of the coordinate being read off, per turn of the
// coordinate being straightened: 1, p/q, s/t for the south inverse.
double drag_ratio(const ChartSpec& spec) {
  switch (spec.space) {
    case SpaceTag::sphere:
      return 1.0;
    case SpaceTag::orbi_pq:
      return static_cast<double>(spec.pq->p) / spec.pq->q;
    case SpaceTag::quasi_st:
      return spec.st->s / spec.st->t;
  }
  throw std::logic_error("drag_ratio: unreachable");
}

}  // namespace

DiskClass phi_south_inv(const Atlas& atlas, const OrbitRef& x) {
  const ChartSpec& spec = atlas.south;
  if (x.space() != spec.space) {
    throw std::invalid_argument("phi_south_inv: point from a different space");
  }
  const RawPoint p = raw(x);
  if (std::abs(p.w) <= kPoleGuard) {
    throw std::invalid_argument("phi_south_inv: w = 0 is not in the south chart");
  }
  const Turn beta = arg_turn(p.w);
  const Complex rep = p.z * unit_phase(frac(-drag_ratio(spec) * beta.value()));
  return disk_class(spec, rep);
}

DiskClass phi_north_inv(const Atlas& atlas, const OrbitRef& x) {
  const ChartSpec& spec = atlas.north;
  if (x.space() != spec.space) {
    throw std::invalid_argument("phi_north_inv: point from a different space");
  }
  const RawPoint p = raw(x);
  if (std::abs(p.z) <= kPoleGuard) {
    throw std::invalid_argument("phi_north_inv: z = 0 is not in the north chart");
  }
  const Turn alpha = arg_turn(p.z);
  const Complex rep = p.w * unit_phase(frac(-alpha.value() / drag_ratio(spec)));
  return disk_class(spec, rep);
}

namespace {

// Shared body of the two transitions: modulus from the defining equation,
// argument scaled by the exponent on the principal branch.
DiskClass transition_impl(const ChartSpec& from, const ChartSpec& to, const DiskClass& d,
                          double out_mod_sq, double exponent, const char* what) {
  require_same_structure(d, from, what);
  if (std::abs(d.rep) <= kPoleGuard) {
    throw std::invalid_argument(std::string(what) + ": representative at the pole is not in the overlap");
  }
  const double alpha = arg_turn(d.rep).value();
  const Turn out_arg = frac_product(exponent, frac(-alpha).value());
  const double out_mod = std::sqrt(std::max(0.0, out_mod_sq));
  return disk_class(to, out_mod * unit_phase(out_arg));
}

}  // namespace

DiskClass transition_south_north(const Atlas& atlas, const DiskClass& d) {
  const auto [a, b] = coefficients(atlas.south);
  const double out_sq = a - (a / b) * std::norm(d.rep);
  return transition_impl(atlas.south, atlas.north, d, out_sq, b / a, "transition_south_north");
}

DiskClass transition_north_south(const Atlas& atlas, const DiskClass& d) {
  const auto [a, b] = coefficients(atlas.north);
  const double out_sq = b - (b / a) * std::norm(d.rep);
  return transition_impl(atlas.north, atlas.south, d, out_sq, a / b, "transition_north_south");
}

EquivalenceVerdict disk_class_equal(const DiskClass& a, const DiskClass& b, const Tolerance& tol) {
  require_same_structure(a, b, "disk_class_equal");
  EquivalenceVerdict v;
  v.tolerance_used = tol;
  switch (a.group_kind) {
    case GroupKind::trivial:
      if (std::abs(a.rep - b.rep) < tol.eps) {
        v.outcome = Outcome::equal;
        v.witness = 0.0;
      } else {
        v.outcome = Outcome::not_equal;
      }
      return v;
    case GroupKind::cyclic:
      for (int k = 0; k < a.cyclic_order; ++k) {
        const Complex rotated = a.rep * unit_phase(frac_product(k, a.generator.value()));
        if (std::abs(rotated - b.rep) < tol.eps) {
          v.outcome = Outcome::equal;
          v.witness = static_cast<double>(k);
          return v;
        }
      }
      v.outcome = Outcome::not_equal;
      return v;
    case GroupKind::dense_z: {
      if (std::fabs(std::abs(a.rep) - std::abs(b.rep)) > tol.eps) {
        v.outcome = Outcome::not_equal;
        return v;
      }
      for (std::int64_t i = 0; i <= 2 * tol.search_bound; ++i) {
        const std::int64_t k = (i % 2 == 0) ? i / 2 : -(i + 1) / 2;
        const Complex rotated =
            a.rep * unit_phase(frac_product(static_cast<double>(k), a.generator.value()));
        if (std::abs(rotated - b.rep) < tol.eps) {
          v.outcome = Outcome::equal;
          v.witness = static_cast<double>(k);
          return v;
        }
      }
      v.outcome = Outcome::undetermined;
      return v;
    }
  }
  throw std::logic_error("disk_class_equal: unreachable");
}

double disk_class_distance(const DiskClass& a, const DiskClass& b, std::int64_t search_bound) {
  require_same_structure(a, b, "disk_class_distance");
  double best = std::numeric_limits<double>::infinity();
  auto consider = [&](double g) {
    const Complex rotated = a.rep * unit_phase(frac_product(g, a.generator.value()));
    best = std::min(best, std::abs(rotated - b.rep));
  };
  switch (a.group_kind) {
    case GroupKind::trivial:
      return std::abs(a.rep - b.rep);
    case GroupKind::cyclic:
      for (int k = 0; k < a.cyclic_order; ++k) consider(k);
      return best;
    case GroupKind::dense_z:
      for (std::int64_t k = -search_bound; k <= search_bound; ++k) {
        consider(static_cast<double>(k));
      }
      return best;
  }
  throw std::logic_error("disk_class_distance: unreachable");
}

}  // namespace qsphere
