// qslab: command-line laboratory for the sphere, orbisphere and quasisphere
// quotients. Emits deterministic CSV/JSON data for plotting and checking;
// see docs/formats.md for the frozen output formats.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "qsphere/atlas.hpp"
#include "qsphere/quotients.hpp"

using namespace qsphere;

namespace {

constexpr int kVersion = 1;
constexpr int kExitEqual = 0;
constexpr int kExitNotEqual = 1;
constexpr int kExitUndetermined = 2;
constexpr int kExitUsage = 64;

// Real root of x^3 = x + 1.
constexpr double kPlastic = 1.3247179572447460;

double preset_or_literal(const std::string& token) {
  if (token == "golden") return (1.0 + std::sqrt(5.0)) / 2.0;
  if (token == "sqrt2") return std::sqrt(2.0);
  if (token == "sqrt3") return std::sqrt(3.0);
  if (token == "plastic") return kPlastic;
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse number or preset: '" + token + "'");
  }
  if (used != token.size()) {
    throw std::invalid_argument("trailing characters in number: '" + token + "'");
  }
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

enum class Space { sphere, orbi, quasi };

struct Config {
  Space space = Space::sphere;
  std::optional<WeightsPQ> pq;
  std::optional<WeightsST> st;
  double eps = 1e-9;
  std::int64_t search_bound = 100;
  std::uint64_t seed = 1;
  std::string format = "csv";
  std::string out_path;

  Tolerance tolerance() const { return make_tolerance(eps, search_bound); }
};

Config resolve_config(const std::string& space_str, const std::string& pq_str,
                      const std::string& st_str, double eps, std::int64_t search_bound,
                      std::uint64_t seed, const std::string& format, const std::string& out) {
  Config cfg;
  if (space_str == "sphere") {
    cfg.space = Space::sphere;
  } else if (space_str == "orbi") {
    cfg.space = Space::orbi;
  } else if (space_str == "quasi") {
    cfg.space = Space::quasi;
  } else {
    throw std::invalid_argument("--space must be one of sphere|orbi|quasi");
  }
  if (cfg.space == Space::orbi) {
    const auto parts = split(pq_str, ',');
    if (pq_str.empty() || parts.size() != 2) {
      throw std::invalid_argument("--pq expects P,Q with coprime positive integers");
    }
    cfg.pq.emplace(static_cast<int>(preset_or_literal(parts[0])),
                   static_cast<int>(preset_or_literal(parts[1])));
  }
  if (cfg.space == Space::quasi) {
    const auto parts = split(st_str, ',');
    if (st_str.empty() || parts.size() != 2) {
      throw std::invalid_argument("--st expects S,T (decimal literals or presets)");
    }
    cfg.st.emplace(preset_or_literal(parts[0]), preset_or_literal(parts[1]));
    if (cfg.st->near_rational) {
      std::cerr << "warning: s/t has a terminating continued fraction; the ratio "
                   "is effectively rational and the quotient degenerates\n";
    }
  }
  if (format != "csv" && format != "json") {
    throw std::invalid_argument("--format must be csv or json");
  }
  cfg.eps = eps;
  cfg.search_bound = search_bound;
  cfg.seed = seed;
  cfg.format = format;
  cfg.out_path = out;
  cfg.tolerance();  // validate eps/search_bound now
  return cfg;
}

// A total-space point in any of the three spaces.
using AnyPoint = std::variant<SpherePoint3, EllipsoidPointPQ, EllipsoidPointST>;

Complex z_of(const AnyPoint& p) {
  return std::visit([](const auto& q) { return q.z; }, p);
}
Complex w_of(const AnyPoint& p) {
  return std::visit([](const auto& q) { return q.w; }, p);
}
double residual_of(const AnyPoint& p) {
  return std::visit([](const auto& q) { return constraint_residual(q); }, p);
}

// Point syntax: "zre,zim,wre,wim" (validated against the space constraint)
// or "polar:MOD,ARGZ,ARGW" (moduli/turns, exact by construction).
AnyPoint parse_point(const Config& cfg, const std::string& text) {
  if (text.rfind("polar:", 0) == 0) {
    const auto parts = split(text.substr(6), ',');
    if (parts.size() != 3) {
      throw std::invalid_argument("polar point expects polar:MOD,ARGZ,ARGW");
    }
    const double mod = preset_or_literal(parts[0]);
    const Turn arg_z = frac(preset_or_literal(parts[1]));
    const Turn arg_w = frac(preset_or_literal(parts[2]));
    switch (cfg.space) {
      case Space::sphere:
        return make_point(mod, arg_z, arg_w);
      case Space::orbi:
        return make_point(mod, arg_z, arg_w, *cfg.pq);
      case Space::quasi:
        return make_point(mod, arg_z, arg_w, *cfg.st);
    }
  }
  const auto parts = split(text, ',');
  if (parts.size() != 4) {
    throw std::invalid_argument("point expects zre,zim,wre,wim or polar:MOD,ARGZ,ARGW");
  }
  const Complex z(preset_or_literal(parts[0]), preset_or_literal(parts[1]));
  const Complex w(preset_or_literal(parts[2]), preset_or_literal(parts[3]));
  switch (cfg.space) {
    case Space::sphere:
      return SpherePoint3(z, w);
    case Space::orbi:
      return EllipsoidPointPQ(z, w, *cfg.pq);
    case Space::quasi:
      return EllipsoidPointST(z, w, *cfg.st);
  }
  throw std::logic_error("parse_point: unreachable");
}

AnyPoint act_on(const Config& cfg, double theta, const AnyPoint& p) {
  switch (cfg.space) {
    case Space::sphere:
      return act_hopf(frac(theta), std::get<SpherePoint3>(p));
    case Space::orbi:
      return act_pq(frac(theta), std::get<EllipsoidPointPQ>(p));
    case Space::quasi:
      return act_st(theta, std::get<EllipsoidPointST>(p));
  }
  throw std::logic_error("act_on: unreachable");
}

// ---- output document assembly ---------------------------------------------

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string json_str(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out += '\\';
      out += c;
    } else {
      out += c;
    }
  }
  out += '"';
  return out;
}

// One scalar cell of a document: number, integer, string, boolean or null.
struct Cell {
  enum Kind { number, integer, text, boolean, null } kind = null;
  double num = 0.0;
  std::int64_t inum = 0;
  std::string str;
  bool flag = false;

  static Cell of(double v) { return Cell{number, v, 0, {}, false}; }
  static Cell of_int(std::int64_t v) { return Cell{integer, 0.0, v, {}, false}; }
  static Cell of_text(std::string v) { return Cell{text, 0.0, 0, std::move(v), false}; }
  static Cell of_bool(bool v) { return Cell{boolean, 0.0, 0, {}, v}; }
  static Cell none() { return Cell{}; }

  std::string csv() const {
    switch (kind) {
      case number:
        return fmt17(num);
      case integer:
        return std::to_string(inum);
      case text:
        return str;
      case boolean:
        return flag ? "true" : "false";
      case null:
        return "";
    }
    return "";
  }
  std::string json() const {
    switch (kind) {
      case number:
        return fmt17(num);
      case integer:
        return std::to_string(inum);
      case text:
        return json_str(str);
      case boolean:
        return flag ? "true" : "false";
      case null:
        return "null";
    }
    return "null";
  }
};

using Fields = std::vector<std::pair<std::string, Cell>>;

struct Document {
  std::string command;
  Fields config;
  std::vector<std::string> columns;  // row table, optional
  std::vector<std::vector<Cell>> rows;
  Fields report;  // report object, optional
};

Fields base_config(const Config& cfg) {
  Fields f;
  const char* names[] = {"sphere", "orbi", "quasi"};
  f.emplace_back("space", Cell::of_text(names[static_cast<int>(cfg.space)]));
  if (cfg.pq) {
    f.emplace_back("p", Cell::of_int(cfg.pq->p));
    f.emplace_back("q", Cell::of_int(cfg.pq->q));
  }
  if (cfg.st) {
    f.emplace_back("s", Cell::of(cfg.st->s));
    f.emplace_back("t", Cell::of(cfg.st->t));
    f.emplace_back("near_rational", Cell::of_bool(cfg.st->near_rational));
  }
  f.emplace_back("eps", Cell::of(cfg.eps));
  f.emplace_back("search_bound", Cell::of_int(cfg.search_bound));
  f.emplace_back("seed", Cell::of_int(static_cast<std::int64_t>(cfg.seed)));
  return f;
}

std::string render_json(const Document& doc) {
  std::string out = "{\n  \"version\": " + std::to_string(kVersion) + ",\n";
  out += "  \"command\": " + json_str(doc.command) + ",\n";
  out += "  \"config\": {";
  for (std::size_t i = 0; i < doc.config.size(); ++i) {
    if (i) out += ", ";
    out += json_str(doc.config[i].first) + ": " + doc.config[i].second.json();
  }
  out += "}";
  if (!doc.columns.empty()) {
    out += ",\n  \"columns\": [";
    for (std::size_t i = 0; i < doc.columns.size(); ++i) {
      if (i) out += ", ";
      out += json_str(doc.columns[i]);
    }
    out += "],\n  \"rows\": [";
    for (std::size_t r = 0; r < doc.rows.size(); ++r) {
      out += r ? ",\n    [" : "\n    [";
      for (std::size_t c = 0; c < doc.rows[r].size(); ++c) {
        if (c) out += ", ";
        out += doc.rows[r][c].json();
      }
      out += "]";
    }
    out += "\n  ]";
  }
  if (!doc.report.empty()) {
    out += ",\n  \"report\": {";
    for (std::size_t i = 0; i < doc.report.size(); ++i) {
      if (i) out += ", ";
      out += json_str(doc.report[i].first) + ": " + doc.report[i].second.json();
    }
    out += "}";
  }
  out += "\n}\n";
  return out;
}

std::string render_csv(const Document& doc) {
  std::string out;
  if (!doc.columns.empty()) {
    for (std::size_t i = 0; i < doc.columns.size(); ++i) {
      if (i) out += ',';
      out += doc.columns[i];
    }
    out += '\n';
    for (const auto& row : doc.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) out += ',';
        out += row[c].csv();
      }
      out += '\n';
    }
    return out;
  }
  // Report documents become a single-row table.
  for (std::size_t i = 0; i < doc.report.size(); ++i) {
    if (i) out += ',';
    out += doc.report[i].first;
  }
  out += '\n';
  for (std::size_t i = 0; i < doc.report.size(); ++i) {
    if (i) out += ',';
    out += doc.report[i].second.csv();
  }
  out += '\n';
  return out;
}

void emit(const Config& cfg, const Document& doc) {
  const std::string payload = cfg.format == "json" ? render_json(doc) : render_csv(doc);
  if (cfg.out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream file(cfg.out_path, std::ios::binary);
  if (!file) {
    throw std::runtime_error("cannot open output file: " + cfg.out_path);
  }
  file << payload;
}

// ---- commands ---------------------------------------------------------------

int cmd_sample_orbit(const Config& cfg, double theta_max, std::int64_t count,
                     const std::string& start_text) {
  if (count < 1) throw std::invalid_argument("--count must be >= 1");
  if (!(theta_max > 0.0)) throw std::invalid_argument("--theta-max must be positive");
  AnyPoint start = [&]() -> AnyPoint {
    if (!start_text.empty()) return parse_point(cfg, start_text);
    // Default starting point: mid-latitude with zero phases.
    switch (cfg.space) {
      case Space::sphere:
        return make_point(std::sqrt(0.5), Turn{}, Turn{});
      case Space::orbi:
        return make_point(std::sqrt(cfg.pq->q / 2.0), Turn{}, Turn{}, *cfg.pq);
      case Space::quasi:
        return make_point(std::sqrt(cfg.st->t / 2.0), Turn{}, Turn{}, *cfg.st);
    }
    throw std::logic_error("unreachable");
  }();

  Document doc;
  doc.command = "sample-orbit";
  doc.config = base_config(cfg);
  doc.config.emplace_back("theta_max", Cell::of(theta_max));
  doc.config.emplace_back("count", Cell::of_int(count));
  doc.columns = {"theta", "z_re", "z_im", "w_re", "w_im", "arg_z", "arg_w", "residual"};
  for (std::int64_t i = 0; i < count; ++i) {
    const double theta = count == 1 ? 0.0 : theta_max * static_cast<double>(i) / (count - 1);
    const AnyPoint p = act_on(cfg, theta, start);
    const Complex z = z_of(p), w = w_of(p);
    doc.rows.push_back({Cell::of(theta), Cell::of(z.real()), Cell::of(z.imag()),
                        Cell::of(w.real()), Cell::of(w.imag()), Cell::of(arg_turn(z).value()),
                        Cell::of(arg_turn(w).value()), Cell::of(residual_of(p))});
  }
  emit(cfg, doc);
  return 0;
}

int cmd_gaps(const Config& cfg, std::int64_t bound) {
  if (bound < 2) throw std::invalid_argument("--bound must be >= 2");
  const double ratio = [&] {
    switch (cfg.space) {
      case Space::sphere:
        return 1.0;
      case Space::orbi:
        return static_cast<double>(cfg.pq->p) / cfg.pq->q;
      case Space::quasi:
        return cfg.st->s / cfg.st->t;
    }
    throw std::logic_error("unreachable");
  }();

  std::vector<double> points;
  points.reserve(bound);
  for (std::int64_t k = 1; k <= bound; ++k) {
    points.push_back(frac_product(static_cast<double>(k), ratio).value());
  }
  std::vector<double> sorted = points;
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> gaps(sorted.size());
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) gaps[i] = sorted[i + 1] - sorted[i];
  gaps.back() = 1.0 - sorted.back() + sorted.front();

  // Cluster gap lengths at 1e-9 to count distinct values.
  std::vector<double> distinct;
  {
    std::vector<double> g = gaps;
    std::sort(g.begin(), g.end());
    for (double v : g) {
      if (distinct.empty() || v - distinct.back() > 1e-9) distinct.push_back(v);
    }
  }
  double gap_sum = 0.0;
  for (double g : gaps) gap_sum += g;

  Document doc;
  doc.command = "gaps";
  doc.config = base_config(cfg);
  doc.config.emplace_back("bound", Cell::of_int(bound));
  doc.config.emplace_back("ratio", Cell::of(ratio));
  doc.columns = {"k", "point", "sorted_point", "gap"};
  for (std::size_t i = 0; i < points.size(); ++i) {
    doc.rows.push_back({Cell::of_int(static_cast<std::int64_t>(i + 1)), Cell::of(points[i]),
                        Cell::of(sorted[i]), Cell::of(gaps[i])});
  }
  doc.report.emplace_back("distinct_gap_count",
                          Cell::of_int(static_cast<std::int64_t>(distinct.size())));
  doc.report.emplace_back("min_gap", Cell::of(distinct.front()));
  doc.report.emplace_back("max_gap", Cell::of(distinct.back()));
  doc.report.emplace_back("gap_sum", Cell::of(gap_sum));
  emit(cfg, doc);
  return 0;
}

int cmd_check_equal(const Config& cfg, const std::string& a_text, const std::string& b_text) {
  const AnyPoint a = parse_point(cfg, a_text);
  const AnyPoint b = parse_point(cfg, b_text);
  EquivalenceVerdict v;
  switch (cfg.space) {
    case Space::sphere:
      v = orbit_equal_sphere(std::get<SpherePoint3>(a), std::get<SpherePoint3>(b), cfg.eps);
      break;
    case Space::orbi:
      v = orbit_equal_pq(std::get<EllipsoidPointPQ>(a), std::get<EllipsoidPointPQ>(b), cfg.eps);
      break;
    case Space::quasi:
      v = orbit_equal_st(std::get<EllipsoidPointST>(a), std::get<EllipsoidPointST>(b),
                         cfg.tolerance());
      break;
  }
  Document doc;
  doc.command = "check-equal";
  doc.config = base_config(cfg);
  doc.config.emplace_back("a", Cell::of_text(a_text));
  doc.config.emplace_back("b", Cell::of_text(b_text));
  const char* outcome = v.outcome == Outcome::equal       ? "equal"
                        : v.outcome == Outcome::not_equal ? "not_equal"
                                                          : "undetermined";
  doc.report.emplace_back("outcome", Cell::of_text(outcome));
  doc.report.emplace_back("witness", v.witness ? Cell::of(*v.witness) : Cell::none());
  doc.report.emplace_back("eps", Cell::of(cfg.eps));
  doc.report.emplace_back("search_bound", Cell::of_int(cfg.search_bound));
  emit(cfg, doc);
  switch (v.outcome) {
    case Outcome::equal:
      return kExitEqual;
    case Outcome::not_equal:
      return kExitNotEqual;
    case Outcome::undetermined:
      return kExitUndetermined;
  }
  return kExitUsage;
}

int cmd_chart_roundtrip(const Config& cfg, std::int64_t count) {
  if (count < 1) throw std::invalid_argument("--count must be >= 1");
  const Atlas atlas = [&] {
    switch (cfg.space) {
      case Space::sphere:
        return sphere_atlas();
      case Space::orbi:
        return orbi_atlas(*cfg.pq);
      case Space::quasi:
        return quasi_atlas(*cfg.st);
    }
    throw std::logic_error("unreachable");
  }();
  const Tolerance tol = cfg.tolerance();

  // Class distance on the quotient: canonical forms where they exist, the
  // equality witness flow for the quasisphere.
  auto orbit_distance = [&](const OrbitRef& x, const OrbitRef& y) -> double {
    switch (cfg.space) {
      case Space::sphere:
        return ambient_dist(canonical_sphere(std::get<SpherePoint3>(x.representative)),
                            canonical_sphere(std::get<SpherePoint3>(y.representative)));
      case Space::orbi:
        return ambient_dist(canonical_pq(std::get<EllipsoidPointPQ>(x.representative)),
                            canonical_pq(std::get<EllipsoidPointPQ>(y.representative)));
      case Space::quasi: {
        const auto& xa = std::get<EllipsoidPointST>(x.representative);
        const auto& ya = std::get<EllipsoidPointST>(y.representative);
        const auto v = orbit_equal_st(xa, ya, tol);
        if (v.outcome != Outcome::equal) return 1.0;
        return ambient_dist(act_st(*v.witness, xa), ya);
      }
    }
    return 1.0;
  };

  SampleStream rng(cfg.seed);
  auto sample_class = [&](const ChartSpec& spec) {
    // Stay clear of the pole and the boundary: the overlap checks need
    // both coordinates nonzero.
    const double m2 = spec.domain_radius_sq * (1e-4 + (1.0 - 2e-4) * rng.next_unit());
    return disk_class(spec, std::sqrt(m2) * unit_phase(rng.next_turn()));
  };

  double south_disk = 0.0, north_disk = 0.0, south_orbit = 0.0, north_orbit = 0.0;
  double transition = 0.0, quotient_consistency = 0.0;
  for (std::int64_t i = 0; i < count; ++i) {
    const DiskClass ds = sample_class(atlas.south);
    const OrbitRef xs = phi_south(atlas, ds);
    south_disk =
        std::max(south_disk, disk_class_distance(phi_south_inv(atlas, xs), ds, cfg.search_bound));
    south_orbit =
        std::max(south_orbit, orbit_distance(phi_south(atlas, phi_south_inv(atlas, xs)), xs));

    const DiskClass dn = sample_class(atlas.north);
    const OrbitRef xn = phi_north(atlas, dn);
    north_disk =
        std::max(north_disk, disk_class_distance(phi_north_inv(atlas, xn), dn, cfg.search_bound));
    north_orbit =
        std::max(north_orbit, orbit_distance(phi_north(atlas, phi_north_inv(atlas, xn)), xn));

    const DiskClass via = transition_south_north(atlas, ds);
    transition = std::max(
        transition, disk_class_distance(transition_north_south(atlas, via), ds, cfg.search_bound));
    quotient_consistency =
        std::max(quotient_consistency, orbit_distance(phi_north(atlas, via), xs));
  }

  constexpr double kThreshold = 1e-8;
  Document doc;
  doc.command = "chart-roundtrip";
  doc.config = base_config(cfg);
  doc.config.emplace_back("count", Cell::of_int(count));
  doc.columns = {"check", "samples", "max_distance"};
  const std::pair<const char*, double> checks[] = {
      {"south_disk_roundtrip", south_disk},   {"north_disk_roundtrip", north_disk},
      {"south_orbit_roundtrip", south_orbit}, {"north_orbit_roundtrip", north_orbit},
      {"transition_roundtrip", transition},   {"transition_quotient", quotient_consistency},
  };
  bool pass = true;
  for (const auto& [name, value] : checks) {
    doc.rows.push_back({Cell::of_text(name), Cell::of_int(count), Cell::of(value)});
    pass = pass && value <= kThreshold;
  }
  doc.report.emplace_back("threshold", Cell::of(kThreshold));
  doc.report.emplace_back("pass", Cell::of_bool(pass));
  emit(cfg, doc);
  return pass ? 0 : 1;
}

int cmd_hopf_fiber(const Config& cfg, const std::string& point_text, std::int64_t count) {
  if (cfg.space != Space::sphere) {
    throw std::invalid_argument("hopf-fiber runs on --space sphere");
  }
  if (count < 1) throw std::invalid_argument("--count must be >= 1");
  const auto parts = split(point_text, ',');
  if (parts.size() != 3) throw std::invalid_argument("--point expects zre,zim,x");
  Complex z(preset_or_literal(parts[0]), preset_or_literal(parts[1]));
  double x = preset_or_literal(parts[2]);
  const double norm_sq = std::norm(z) + x * x;
  if (std::fabs(norm_sq - 1.0) > 1e-9) {
    throw std::invalid_argument("--point is not on the 2-sphere (within 1e-9)");
  }
  // Renormalize so fiber rows pull back to the target at full precision.
  const double scale = 1.0 / std::sqrt(norm_sq);
  z *= scale;
  x *= scale;
  const S2Point target(z, x);

  Document doc;
  doc.command = "hopf-fiber";
  doc.config = base_config(cfg);
  doc.config.emplace_back("point", Cell::of_text(point_text));
  doc.config.emplace_back("count", Cell::of_int(count));
  doc.columns = {"fiber_turn", "z_re", "z_im", "w_re", "w_im", "hopf_dist"};
  for (std::int64_t i = 0; i < count; ++i) {
    const Turn fiber = frac(static_cast<double>(i) / static_cast<double>(count));
    const SpherePoint3 p = hopf_preimage(target, fiber);
    doc.rows.push_back({Cell::of(fiber.value()), Cell::of(p.z.real()), Cell::of(p.z.imag()),
                        Cell::of(p.w.real()), Cell::of(p.w.imag()),
                        Cell::of(ambient_dist(hopf(p), target))});
  }
  emit(cfg, doc);
  return 0;
}

int cmd_witness(const Config& cfg, const std::string& a_text, const std::string& b_text) {
  if (cfg.space != Space::quasi) {
    throw std::invalid_argument("witness runs on --space quasi");
  }
  const AnyPoint a = parse_point(cfg, a_text);
  const AnyPoint b = parse_point(cfg, b_text);
  const ClosureWitness w =
      closure_witness(std::get<EllipsoidPointST>(a), std::get<EllipsoidPointST>(b), cfg.eps);

  Document doc;
  doc.command = "witness";
  doc.config = base_config(cfg);
  doc.config.emplace_back("a", Cell::of_text(a_text));
  doc.config.emplace_back("b", Cell::of_text(b_text));
  doc.report.emplace_back("found", Cell::of_bool(w.found));
  doc.report.emplace_back("theta", Cell::of(w.theta));
  doc.report.emplace_back("achieved", Cell::of(w.achieved));
  doc.report.emplace_back("shift", Cell::of_int(w.shift));
  doc.report.emplace_back("shift_bound", Cell::of_int(w.shift_bound));
  emit(cfg, doc);
  return w.found ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quasisphere laboratory: orbits, gaps, equality, charts, fibers, witnesses"};
  app.require_subcommand(1);

  std::string space_str = "sphere", pq_str, st_str, format = "csv", out_path;
  double eps = 1e-9;
  std::int64_t search_bound = 100;
  std::uint64_t seed = 1;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--space", space_str, "Space: sphere|orbi|quasi");
    sub->add_option("--pq", pq_str, "Orbisphere weights P,Q (coprime positive integers)");
    sub->add_option("--st", st_str,
                    "Quasisphere weights S,T (decimal literals or presets "
                    "golden|sqrt2|sqrt3|plastic)");
    sub->add_option("--eps", eps, "Tolerance for equality and witness searches");
    sub->add_option("--search-bound", search_bound, "Bound K for the dense-orbit searches");
    sub->add_option("--seed", seed, "Seed for deterministic sampling");
    sub->add_option("--format", format, "Output format: csv|json");
    sub->add_option("--out", out_path, "Output path (stdout when omitted)");
  };

  auto* sample = app.add_subcommand("sample-orbit", "Sample one orbit at evenly spaced times");
  double theta_max = 1.0;
  std::int64_t count = 100;
  std::int64_t bound = 100;
  std::string start_text, a_text, b_text, point_text;
  sample->add_option("--theta-max", theta_max, "Largest action parameter");
  sample->add_option("--count", count, "Number of rows");
  sample->add_option("--start", start_text, "Starting point (default: mid-latitude)");
  add_common(sample);

  auto* gaps = app.add_subcommand("gaps", "Gap statistics of {frac(k*ratio)} on the circle");
  gaps->add_option("--bound", bound, "Number of orbit points K");
  add_common(gaps);

  auto* check = app.add_subcommand("check-equal", "Decide orbit equality of two points");
  check->add_option("--a", a_text, "First point")->required();
  check->add_option("--b", b_text, "Second point")->required();
  add_common(check);

  auto* chart = app.add_subcommand("chart-roundtrip", "Chart and transition round-trip report");
  chart->add_option("--count", count, "Samples per check");
  add_common(chart);

  auto* fiber = app.add_subcommand("hopf-fiber", "Sample the Hopf fiber over a 2-sphere point");
  fiber->add_option("--point", point_text, "Target zre,zim,x")->required();
  fiber->add_option("--count", count, "Number of fiber samples");
  add_common(fiber);

  auto* witness = app.add_subcommand("witness", "Non-separability witness for two quasi orbits");
  witness->add_option("--a", a_text, "First point")->required();
  witness->add_option("--b", b_text, "Second point")->required();
  add_common(witness);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    const Config cfg =
        resolve_config(space_str, pq_str, st_str, eps, search_bound, seed, format, out_path);
    if (sample->parsed()) return cmd_sample_orbit(cfg, theta_max, count, start_text);
    if (gaps->parsed()) return cmd_gaps(cfg, bound);
    if (check->parsed()) return cmd_check_equal(cfg, a_text, b_text);
    if (chart->parsed()) return cmd_chart_roundtrip(cfg, count);
    if (fiber->parsed()) return cmd_hopf_fiber(cfg, point_text, count);
    if (witness->parsed()) return cmd_witness(cfg, a_text, b_text);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
