#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace qsphere {

/// An angle measured in turns (1 turn = one full rotation), kept in [0, 1).
/// One turn corresponds to the phase factor exp(2*pi*i).
class Turn {
 public:
  constexpr Turn() = default;

  /// Reduces any finite value modulo 1 into [0, 1). Throws
  /// std::invalid_argument on non-finite input.
  explicit Turn(double turns);

  double value() const { return value_; }

  friend Turn operator+(Turn a, Turn b) { return Turn(a.value_ + b.value_); }
  friend Turn operator-(Turn a, Turn b) { return Turn(a.value_ - b.value_); }
  friend Turn operator-(Turn a) { return Turn(-a.value_); }
  friend bool operator==(Turn a, Turn b) { return a.value_ == b.value_; }

 private:
  double value_ = 0.0;
};

/// Fractional part x - floor(x), wrapped into [0, 1).
Turn frac(double x);

/// frac(a * b) computed with an FMA-corrected product, so the fractional
/// part stays accurate even when a * b is large enough that plain double
/// multiplication would lose the low bits that survive the mod-1 reduction.
Turn frac_product(double a, double b);

/// Shortest arc distance on the unit circle, in turns; range [0, 0.5].
double circle_dist(Turn a, Turn b);

/// Signed representative of a turn in [-0.5, 0.5).
double signed_turn(Turn a);

/// The unit complex number exp(2*pi*i*theta).
std::complex<double> unit_phase(Turn theta);

/// Argument of z in turns, principal branch in [0, 1). arg(0) = 0.
Turn arg_turn(const std::complex<double>& z);

/// Continued fraction expansion [a0; a1, a2, ...] of a positive real.
/// a0 may be zero; every later partial quotient is >= 1.
struct ContinuedFraction {
  std::vector<std::int64_t> partial_quotients;
  double source_value = 0.0;
  /// True when the Euclidean recursion hit a remainder below 1e-12 before
  /// the requested depth. Double precision cannot distinguish the value
  /// from a rational at that point, so the expansion stops there.
  bool terminated = false;
};

/// First max_terms partial quotients of x > 0 by the Euclidean recursion.
/// Throws std::invalid_argument unless x is finite and positive.
ContinuedFraction continued_fraction(double x, int max_terms);

/// Best rational approximation p/q read off a continued fraction.
struct Convergent {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

/// Convergents p_k/q_k by the standard recurrence
///   p_k = a_k p_{k-1} + p_{k-2},  q_k = a_k q_{k-1} + q_{k-2}.
/// Stops early if the recurrence would overflow 64-bit integers.
std::vector<Convergent> convergents(const ContinuedFraction& cf);

/// Evaluates a finite continued fraction bottom-up. Used as a cross-check
/// that an expansion reproduces its source value.
double evaluate(const ContinuedFraction& cf);

/// Absolute tolerance plus a search bound for the bounded decision
/// procedures. eps must be positive, search_bound at least 1.
struct Tolerance {
  double eps = 1e-9;
  std::int64_t search_bound = 100;
};

/// Validates eps > 0 and search_bound >= 1; throws std::invalid_argument.
Tolerance make_tolerance(double eps, std::int64_t search_bound);

/// Result of the bounded search for k minimizing the distance of frac(k*x)
/// to 0 on the circle.
struct ShiftHit {
  std::int64_t k = 0;    ///< best shift, 1 <= k <= search_bound (-k ties it)
  double dist = 0.0;     ///< circle_dist(frac(k*x), 0)
  bool meets_eps = false;  ///< dist < tol.eps
};

/// Finds k in [1, tol.search_bound] minimizing circle_dist(frac(k*x), 0),
/// trying convergent denominators of x first and falling back to a full
/// scan when none of them meets tol.eps. The minimum over 1 <= |k| <= K is
/// always attained at a positive k, so only positive shifts are returned.
/// meets_eps is false when even the full scan stays at or above tol.eps.
ShiftHit best_shift(double x, const Tolerance& tol);

}  // namespace qsphere
