#include "qsphere/spaces.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qsphere {

namespace {

constexpr double kIngestTol = 1e-10;
constexpr int kRatioCfDepth = 48;

void require_finite(const Complex& z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw std::invalid_argument(std::string(what) + ": non-finite coordinate");
  }
}

}  // namespace

WeightsPQ::WeightsPQ(int p, int q) : p(p), q(q) {
  if (p < 1 || q < 1) {
    throw std::invalid_argument("WeightsPQ: weights must be positive");
  }
  if (std::gcd(p, q) != 1) {
    throw std::invalid_argument("WeightsPQ: weights must be coprime");
  }
}

bool operator==(const WeightsPQ& a, const WeightsPQ& b) { return a.p == b.p && a.q == b.q; }

WeightsST::WeightsST(double s, double t)
    : s(s), t(t), ratio_cf(), near_rational(false) {
  if (!std::isfinite(s) || !std::isfinite(t) || s <= 0.0 || t <= 0.0) {
    throw std::invalid_argument("WeightsST: weights must be finite and positive");
  }
  ratio_cf = continued_fraction(s / t, kRatioCfDepth);
  near_rational = ratio_cf.terminated;
}

bool operator==(const WeightsST& a, const WeightsST& b) { return a.s == b.s && a.t == b.t; }

SpherePoint3::SpherePoint3(Complex z, Complex w) : z(z), w(w) {
  require_finite(z, "SpherePoint3");
  require_finite(w, "SpherePoint3");
  if (constraint_residual(*this) > kIngestTol) {
    throw std::invalid_argument("SpherePoint3: |z|^2 + |w|^2 != 1");
  }
}

EllipsoidPointPQ::EllipsoidPointPQ(Complex z, Complex w, WeightsPQ weights)
    : z(z), w(w), weights(weights) {
  require_finite(z, "EllipsoidPointPQ");
  require_finite(w, "EllipsoidPointPQ");
  if (constraint_residual(*this) > kIngestTol) {
    throw std::invalid_argument("EllipsoidPointPQ: p|z|^2 + q|w|^2 != pq");
  }
}

EllipsoidPointST::EllipsoidPointST(Complex z, Complex w, WeightsST weights)
    : z(z), w(w), weights(std::move(weights)) {
  require_finite(z, "EllipsoidPointST");
  require_finite(w, "EllipsoidPointST");
  const double scale = std::max(1.0, this->weights.s * this->weights.t);
  if (constraint_residual(*this) > kIngestTol * scale) {
    throw std::invalid_argument("EllipsoidPointST: s|z|^2 + t|w|^2 != st");
  }
}

S2Point::S2Point(Complex z, double x) : z(z), x(x) {
  require_finite(z, "S2Point");
  if (!std::isfinite(x)) throw std::invalid_argument("S2Point: non-finite coordinate");
  if (constraint_residual(*this) > kIngestTol) {
    throw std::invalid_argument("S2Point: |z|^2 + x^2 != 1");
  }
}

double constraint_residual(const SpherePoint3& p) {
  return std::fabs(std::norm(p.z) + std::norm(p.w) - 1.0);
}

double constraint_residual(const EllipsoidPointPQ& p) {
  const double pp = p.weights.p, qq = p.weights.q;
  return std::fabs(pp * std::norm(p.z) + qq * std::norm(p.w) - pp * qq);
}

double constraint_residual(const EllipsoidPointST& p) {
  const double s = p.weights.s, t = p.weights.t;
  return std::fabs(s * std::norm(p.z) + t * std::norm(p.w) - s * t);
}

double constraint_residual(const S2Point& p) {
  return std::fabs(std::norm(p.z) + p.x * p.x - 1.0);
}

namespace {

// Shared body of the make_point constructors: given the coefficient pair
// (a, b) of a|z|^2 + b|w|^2 = ab, modulus_z in [0, sqrt(b)] determines
// |w| = sqrt(a - (a/b) modulus_z^2).
std::pair<Complex, Complex> synth_point(double modulus_z, Turn arg_z, Turn arg_w, double a,
                                        double b, const char* what) {
  if (!std::isfinite(modulus_z) || modulus_z < 0.0) {
    throw std::invalid_argument(std::string(what) + ": modulus_z must be >= 0");
  }
  const double m2 = modulus_z * modulus_z;
  if (m2 > b * (1.0 + 1e-15)) {
    throw std::invalid_argument(std::string(what) + ": modulus_z exceeds the domain");
  }
  const double w_mod = std::sqrt(std::max(0.0, a - (a / b) * m2));
  return {modulus_z * unit_phase(arg_z), w_mod * unit_phase(arg_w)};
}

}  // namespace

SpherePoint3 make_point(double modulus_z, Turn arg_z, Turn arg_w) {
  auto [z, w] = synth_point(modulus_z, arg_z, arg_w, 1.0, 1.0, "make_point(sphere)");
  return SpherePoint3(z, w, detail::unchecked);
}

EllipsoidPointPQ make_point(double modulus_z, Turn arg_z, Turn arg_w, const WeightsPQ& weights) {
  auto [z, w] = synth_point(modulus_z, arg_z, arg_w, static_cast<double>(weights.p),
                            static_cast<double>(weights.q), "make_point(pq)");
  return EllipsoidPointPQ(z, w, weights, detail::unchecked);
}

EllipsoidPointST make_point(double modulus_z, Turn arg_z, Turn arg_w, const WeightsST& weights) {
  auto [z, w] = synth_point(modulus_z, arg_z, arg_w, weights.s, weights.t, "make_point(st)");
  return EllipsoidPointST(z, w, weights, detail::unchecked);
}

S2Point hopf(const SpherePoint3& p) {
  return S2Point(2.0 * p.z * std::conj(p.w), std::norm(p.z) - std::norm(p.w), detail::unchecked);
}

SpherePoint3 hopf_preimage(const S2Point& target, Turn fiber) {
  const double r_z = std::sqrt(std::max(0.0, (1.0 + target.x) / 2.0));
  const double r_w = std::sqrt(std::max(0.0, (1.0 - target.x) / 2.0));
  const Turn split = arg_turn(target.z);
  return SpherePoint3(r_z * unit_phase(split + fiber), r_w * unit_phase(fiber),
                      detail::unchecked);
}

SpherePoint3 act_hopf(Turn theta, const SpherePoint3& p) {
  const Complex ph = unit_phase(theta);
  return SpherePoint3(ph * p.z, ph * p.w, detail::unchecked);
}

EllipsoidPointPQ act_pq(Turn theta, const EllipsoidPointPQ& p) {
  const Complex zph = unit_phase(frac_product(p.weights.p, theta.value()));
  const Complex wph = unit_phase(frac_product(p.weights.q, theta.value()));
  return EllipsoidPointPQ(zph * p.z, wph * p.w, p.weights, detail::unchecked);
}

EllipsoidPointST act_st(double theta, const EllipsoidPointST& p) {
  if (!std::isfinite(theta)) throw std::invalid_argument("act_st: non-finite theta");
  const Complex zph = unit_phase(frac_product(p.weights.s, theta));
  const Complex wph = unit_phase(frac_product(p.weights.t, theta));
  return EllipsoidPointST(zph * p.z, wph * p.w, p.weights, detail::unchecked);
}

double SampleStream::next_unit() {
  return static_cast<double>(next_word() >> 11) * 0x1.0p-53;
}

std::uint64_t SampleStream::next_word() {
  // splitmix64: fixed constants pin the sequence on every platform.
  std::uint64_t x = (state_ += 0x9e3779b97f4a7c15ULL);
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

template <typename Make>
auto sample_impl(std::size_t count, std::uint64_t seed, double modulus_sq_max, Make make) {
  if (count < 1) throw std::invalid_argument("sample_uniform: count must be >= 1");
  SampleStream rng(seed);
  std::vector<decltype(make(0.0, Turn{}, Turn{}))> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double m = std::sqrt(rng.next_unit() * modulus_sq_max);
    const Turn a = rng.next_turn();
    const Turn b = rng.next_turn();
    out.push_back(make(m, a, b));
  }
  return out;
}

}  // namespace

std::vector<SpherePoint3> sample_uniform(std::size_t count, std::uint64_t seed) {
  return sample_impl(count, seed, 1.0,
                     [](double m, Turn a, Turn b) { return make_point(m, a, b); });
}

std::vector<EllipsoidPointPQ> sample_uniform(const WeightsPQ& weights, std::size_t count,
                                             std::uint64_t seed) {
  return sample_impl(count, seed, static_cast<double>(weights.q),
                     [&](double m, Turn a, Turn b) { return make_point(m, a, b, weights); });
}

std::vector<EllipsoidPointST> sample_uniform(const WeightsST& weights, std::size_t count,
                                             std::uint64_t seed) {
  return sample_impl(count, seed, weights.t,
                     [&](double m, Turn a, Turn b) { return make_point(m, a, b, weights); });
}

std::vector<S2Point> sample_uniform_s2(std::size_t count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("sample_uniform_s2: count must be >= 1");
  SampleStream rng(seed);
  std::vector<S2Point> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double x = 2.0 * rng.next_unit() - 1.0;
    const double r = std::sqrt(std::max(0.0, 1.0 - x * x));
    out.emplace_back(r * unit_phase(rng.next_turn()), x, detail::unchecked);
  }
  return out;
}

namespace {
double dist2(const Complex& a, const Complex& b) { return std::norm(a - b); }
}  // namespace

double ambient_dist(const SpherePoint3& a, const SpherePoint3& b) {
  return std::sqrt(dist2(a.z, b.z) + dist2(a.w, b.w));
}

double ambient_dist(const EllipsoidPointPQ& a, const EllipsoidPointPQ& b) {
  return std::sqrt(dist2(a.z, b.z) + dist2(a.w, b.w));
}

double ambient_dist(const EllipsoidPointST& a, const EllipsoidPointST& b) {
  return std::sqrt(dist2(a.z, b.z) + dist2(a.w, b.w));
}

double ambient_dist(const S2Point& a, const S2Point& b) {
  const double dx = a.x - b.x;
  return std::sqrt(dist2(a.z, b.z) + dx * dx);
}

}  // namespace qsphere
