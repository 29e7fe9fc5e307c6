#include "qsphere/angle.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace qsphere {

namespace {

double reduce_mod_1(double x) {
  double f = x - std::floor(x);
  // Rounding can push x - floor(x) to exactly 1.0 for tiny negative x.
  if (f >= 1.0) f -= 1.0;
  if (f < 0.0) f += 1.0;
  return f;
}

}  // namespace

Turn::Turn(double turns) {
  if (!std::isfinite(turns)) {
    throw std::invalid_argument("Turn: non-finite angle");
  }
  value_ = reduce_mod_1(turns);
}

Turn frac(double x) { return Turn(x); }

Turn frac_product(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw std::invalid_argument("frac_product: non-finite input");
  }
  const double prod = a * b;
  if (!std::isfinite(prod)) {
    throw std::invalid_argument("frac_product: overflow");
  }
  // fma recovers the bits of a*b that rounding discarded; p - floor(p) is
  // exact by Sterbenz, so the sum carries the true fractional part.
  const double err = std::fma(a, b, -prod);
  return Turn(reduce_mod_1(prod) + err);
}

double circle_dist(Turn a, Turn b) {
  const double d = std::fabs(a.value() - b.value());
  return std::min(d, 1.0 - d);
}

double signed_turn(Turn a) {
  return a.value() >= 0.5 ? a.value() - 1.0 : a.value();
}

std::complex<double> unit_phase(Turn theta) {
  const double rad = 2.0 * std::numbers::pi * theta.value();
  return {std::cos(rad), std::sin(rad)};
}

Turn arg_turn(const std::complex<double>& z) {
  if (z.real() == 0.0 && z.imag() == 0.0) return Turn{};
  return frac(std::atan2(z.imag(), z.real()) / (2.0 * std::numbers::pi));
}

ContinuedFraction continued_fraction(double x, int max_terms) {
  if (!std::isfinite(x) || x <= 0.0) {
    throw std::invalid_argument("continued_fraction: x must be finite and positive");
  }
  if (max_terms < 1) {
    throw std::invalid_argument("continued_fraction: need at least one term");
  }
  ContinuedFraction cf;
  cf.source_value = x;
  double rem = x;
  for (int i = 0; i < max_terms; ++i) {
    const double a = std::floor(rem);
    cf.partial_quotients.push_back(static_cast<std::int64_t>(a));
    const double frac_part = rem - a;
    if (frac_part < 1e-12) {
      // Below double resolution: further quotients would be noise.
      cf.terminated = true;
      break;
    }
    rem = 1.0 / frac_part;
  }
  return cf;
}

std::vector<Convergent> convergents(const ContinuedFraction& cf) {
  if (cf.partial_quotients.empty()) {
    throw std::invalid_argument("convergents: empty expansion");
  }
  std::vector<Convergent> out;
  out.reserve(cf.partial_quotients.size());
  std::int64_t p_prev = 1, p_prev2 = 0;
  std::int64_t q_prev = 0, q_prev2 = 1;
  for (std::int64_t a : cf.partial_quotients) {
    const __int128 p = static_cast<__int128>(a) * p_prev + p_prev2;
    const __int128 q = static_cast<__int128>(a) * q_prev + q_prev2;
    if (p > std::numeric_limits<std::int64_t>::max() ||
        q > std::numeric_limits<std::int64_t>::max()) {
      break;
    }
    p_prev2 = p_prev;
    q_prev2 = q_prev;
    p_prev = static_cast<std::int64_t>(p);
    q_prev = static_cast<std::int64_t>(q);
    out.push_back({p_prev, q_prev});
  }
  return out;
}

double evaluate(const ContinuedFraction& cf) {
  if (cf.partial_quotients.empty()) {
    throw std::invalid_argument("evaluate: empty expansion");
  }
  double value = 0.0;
  for (auto it = cf.partial_quotients.rbegin(); it != cf.partial_quotients.rend(); ++it) {
    if (value != 0.0) value = 1.0 / value;
    value += static_cast<double>(*it);
  }
  return value;
}

Tolerance make_tolerance(double eps, std::int64_t search_bound) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw std::invalid_argument("Tolerance: eps must be positive");
  }
  if (search_bound < 1) {
    throw std::invalid_argument("Tolerance: search_bound must be >= 1");
  }
  return Tolerance{eps, search_bound};
}

ShiftHit best_shift(double x, const Tolerance& tol) {
  if (!std::isfinite(x) || x <= 0.0) {
    throw std::invalid_argument("best_shift: x must be finite and positive");
  }
  const std::int64_t bound = tol.search_bound;
  ShiftHit best;
  best.dist = std::numeric_limits<double>::infinity();

  auto consider = [&](std::int64_t k) {
    const double d = circle_dist(frac_product(static_cast<double>(k), x), Turn{});
    if (d < best.dist || (d == best.dist && k < best.k)) {
      best.k = k;
      best.dist = d;
    }
  };

  // Convergent denominators are the best approximations of the second
  // kind, so the minimizer over [1, bound] is among them.
  const ContinuedFraction cf = continued_fraction(x, 64);
  for (const Convergent& c : convergents(cf)) {
    if (c.den >= 1 && c.den <= bound) consider(c.den);
  }

  if (!(best.dist < tol.eps)) {
    for (std::int64_t k = 1; k <= bound; ++k) consider(k);
  }
  best.meets_eps = best.dist < tol.eps;
  return best;
}

}  // namespace qsphere
