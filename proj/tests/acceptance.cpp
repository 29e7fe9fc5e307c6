// Acceptance suite: one criterion per check, one PASS/FAIL line each.
// Exits nonzero if any criterion fails. Runs in well under a minute.

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qsphere/atlas.hpp"
#include "qsphere/quotients.hpp"

using namespace qsphere;

namespace {

int failures = 0;

void report(int index, const char* label, bool pass, const std::string& detail) {
  std::printf("%s criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", index, label,
              detail.c_str());
  if (!pass) ++failures;
}

WeightsST golden_weights() { return WeightsST(1.0, (1.0 + std::sqrt(5.0)) / 2.0); }

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// --- 1: actions preserve the defining equations ---------------------------

void criterion_constraints() {
  SampleStream rng(1001);
  const WeightsPQ pq(3, 5);
  const WeightsST st = golden_weights();
  const auto sphere_pts = sample_uniform(1000, 11);
  const auto pq_pts = sample_uniform(pq, 1000, 12);
  const auto st_pts = sample_uniform(st, 1000, 13);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Turn theta = rng.next_turn();
    const double flow = 2000.0 * rng.next_unit() - 1000.0;
    worst = std::max(worst, constraint_residual(act_hopf(theta, sphere_pts[i])));
    worst = std::max(worst, constraint_residual(act_pq(theta, pq_pts[i])));
    worst = std::max(worst, constraint_residual(act_st(flow, st_pts[i])));
  }
  report(1, "actions preserve the defining equations", worst < 1e-12,
         "worst residual " + fmt(worst) + " over 1000 pairs x 3 spaces");
}

// --- 2: Hopf fibers are orbits, poles land where they belong ---------------

void criterion_hopf() {
  SampleStream rng(1002);
  const auto pts = sample_uniform(1000, 14);
  double worst = 0.0;
  for (const auto& p : pts) {
    worst = std::max(worst, ambient_dist(hopf(act_hopf(rng.next_turn(), p)), hopf(p)));
  }
  const S2Point north = hopf(SpherePoint3(Complex(1.0, 0.0), Complex(0.0, 0.0)));
  const S2Point south = hopf(SpherePoint3(Complex(0.0, 0.0), Complex(1.0, 0.0)));
  const bool poles_exact =
      north.z == Complex(0.0, 0.0) && north.x == 1.0 && south.z == Complex(0.0, 0.0) &&
      south.x == -1.0;
  report(2, "Hopf map is constant on orbits; poles exact", worst < 1e-12 && poles_exact,
         "worst fiber drift " + fmt(worst) + ", poles " + (poles_exact ? "exact" : "WRONG"));
}

// --- 3: orbisphere closed form vs brute-force grid -------------------------

void criterion_pq_oracle() {
  SampleStream rng(1003);
  const int coprime[][2] = {{1, 1}, {1, 2}, {2, 3}, {3, 4}, {3, 5}, {4, 7}, {5, 6}, {5, 7},
                            {6, 7}, {2, 7}, {1, 7}, {3, 7}, {4, 5}, {1, 6}, {2, 5}, {1, 5}};
  int disagreements = 0, equal_count = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto& [p, q] = coprime[trial % 16];
    const WeightsPQ weights(p, q);
    const auto base = sample_uniform(weights, 1, 20000 + trial)[0];
    EllipsoidPointPQ other = base;
    if (trial % 2 == 0) {
      other = act_pq(rng.next_turn(), base);  // constructed equal
    } else {
      other = EllipsoidPointPQ(base.z * unit_phase(rng.next_turn()),
                               base.w * unit_phase(rng.next_turn()), weights, detail::unchecked);
    }
    const bool closed_form = orbit_equal_pq(base, other, 1e-4).outcome == Outcome::equal;
    const bool grid = oracles::grid_orbit_equal_pq(base, other, 1e-4, 1e-6);
    if (closed_form != grid) ++disagreements;
    if (closed_form) ++equal_count;
  }
  report(3, "orbisphere equality: closed form == theta-grid oracle",
         disagreements == 0 && equal_count >= 250,
         std::to_string(disagreements) + " disagreements over 500 pairs, " +
             std::to_string(equal_count) + " equal");
}

// --- 4: chart round trips ---------------------------------------------------

void criterion_chart_roundtrips() {
  SampleStream rng(1004);
  const Atlas atlases[3] = {sphere_atlas(), orbi_atlas(WeightsPQ(2, 3)),
                            quasi_atlas(golden_weights())};
  const Tolerance tol = make_tolerance(1e-9, 100);
  double worst_disk = 0.0;
  bool orbits_ok = true;
  for (const Atlas& atlas : atlases) {
    for (int i = 0; i < 500; ++i) {
      const double m2s = atlas.south.domain_radius_sq * (1e-4 + 0.9996 * rng.next_unit());
      const DiskClass ds = disk_class(atlas.south, std::sqrt(m2s) * unit_phase(rng.next_turn()));
      const OrbitRef xs = phi_south(atlas, ds);
      worst_disk = std::max(worst_disk, disk_class_distance(phi_south_inv(atlas, xs), ds, 100));
      orbits_ok = orbits_ok && orbit_equal(phi_south(atlas, phi_south_inv(atlas, xs)), xs,
                                           tol).outcome == Outcome::equal;

      const double m2n = atlas.north.domain_radius_sq * (1e-4 + 0.9996 * rng.next_unit());
      const DiskClass dn = disk_class(atlas.north, std::sqrt(m2n) * unit_phase(rng.next_turn()));
      const OrbitRef xn = phi_north(atlas, dn);
      worst_disk = std::max(worst_disk, disk_class_distance(phi_north_inv(atlas, xn), dn, 100));
      orbits_ok = orbits_ok && orbit_equal(phi_north(atlas, phi_north_inv(atlas, xn)), xn,
                                           tol).outcome == Outcome::equal;
    }
  }
  report(4, "chart round trips close to 1e-9 (disk and orbit level)",
         worst_disk < 1e-9 && orbits_ok,
         "worst disk distance " + fmt(worst_disk) +
             std::string(orbits_ok ? ", all orbit round trips equal" : ", ORBIT TRIP FAILED"));
}

// --- 5: transition output class ignores the representative -----------------

void criterion_transition_representative() {
  const WeightsST st = golden_weights();
  const Atlas atlas = quasi_atlas(st);
  const Tolerance tol = make_tolerance(1e-9, 100);
  SampleStream rng(1005);
  int bad = 0, undetermined = 0;
  for (int i = 0; i < 200; ++i) {
    const double m2 = atlas.south.domain_radius_sq * (0.01 + 0.98 * rng.next_unit());
    const DiskClass d = disk_class(atlas.south, std::sqrt(m2) * unit_phase(rng.next_turn()));
    const DiskClass out = transition_south_north(atlas, d);
    for (int k = -20; k <= 20; ++k) {
      const Complex shifted =
          d.rep * unit_phase(frac_product(static_cast<double>(k), atlas.south.generator.value()));
      const DiskClass out_k = transition_south_north(atlas, disk_class(atlas.south, shifted));
      const auto v = disk_class_equal(out, out_k, tol);
      if (v.outcome == Outcome::undetermined) ++undetermined;
      if (v.outcome != Outcome::equal) ++bad;
    }
  }
  report(5, "transition is well defined across representative shifts", bad == 0,
         std::to_string(bad) + " non-equal of 8200 shifted pairs, " +
             std::to_string(undetermined) + " undetermined");
}

// --- 6: transition composition and compatibility with the quotient ---------

void criterion_transition_composition() {
  SampleStream rng(1006);
  const Atlas atlases[3] = {sphere_atlas(), orbi_atlas(WeightsPQ(2, 3)),
                            quasi_atlas(golden_weights())};
  const Tolerance tol = make_tolerance(1e-9, 100);
  double worst = 0.0;
  bool quotient_ok = true;
  for (const Atlas& atlas : atlases) {
    for (int i = 0; i < 1000; ++i) {
      const double m2 = atlas.south.domain_radius_sq * (1e-4 + 0.9996 * rng.next_unit());
      const DiskClass d = disk_class(atlas.south, std::sqrt(m2) * unit_phase(rng.next_turn()));
      const DiskClass via = transition_south_north(atlas, d);
      worst = std::max(worst, disk_class_distance(transition_north_south(atlas, via), d, 100));
      if (i < 300) {
        quotient_ok = quotient_ok && orbit_equal(phi_north(atlas, via), phi_south(atlas, d),
                                                 tol).outcome == Outcome::equal;
      }
    }
  }
  report(6, "transition composition is the identity; matches the quotient",
         worst < 1e-9 && quotient_ok,
         "worst composed distance " + fmt(worst) +
             std::string(quotient_ok ? ", quotient consistency holds" : ", QUOTIENT MISMATCH"));
}

// --- 7: quasisphere formulas specialize to the sphere at s = t = 1 ---------

void criterion_specialization() {
  const WeightsST degenerate(1.0, 1.0);
  const Atlas qua = quasi_atlas(degenerate);
  const Atlas sph = sphere_atlas();
  SampleStream rng(1007);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Complex rep = std::sqrt(0.02 + 0.96 * rng.next_unit()) * unit_phase(rng.next_turn());
    const DiskClass dq = disk_class(qua.south, rep);
    const DiskClass ds = disk_class(sph.south, rep);
    const OrbitRef xq = phi_south(qua, dq);
    const OrbitRef xs = phi_south(sph, ds);
    worst = std::max(worst, std::abs(std::get<EllipsoidPointST>(xq.representative).z -
                                     std::get<SpherePoint3>(xs.representative).z));
    worst = std::max(worst, std::abs(std::get<EllipsoidPointST>(xq.representative).w -
                                     std::get<SpherePoint3>(xs.representative).w));
    worst = std::max(worst, std::abs(transition_south_north(qua, dq).rep -
                                     transition_south_north(sph, ds).rep));
    worst = std::max(worst, std::abs(transition_north_south(qua, transition_south_north(qua, dq)).rep -
                                     transition_north_south(sph, transition_south_north(sph, ds)).rep));
  }
  report(7, "s = t = 1 reproduces the sphere formulas", worst < 1e-12,
         "worst coordinate deviation " + fmt(worst) + " over 100 points");
}

// --- 8: three-gap sanity ----------------------------------------------------

void criterion_three_gap() {
  const double values[3] = {(1.0 + std::sqrt(5.0)) / 2.0, std::sqrt(2.0), std::sqrt(3.0)};
  const int bounds[3] = {10, 100, 1000};
  int worst_count = 0;
  for (double x : values) {
    for (int bound : bounds) {
      std::vector<double> pts;
      pts.reserve(bound);
      for (int k = 1; k <= bound; ++k) {
        pts.push_back(frac_product(static_cast<double>(k), x).value());
      }
      std::sort(pts.begin(), pts.end());
      std::vector<double> gaps;
      for (std::size_t i = 0; i + 1 < pts.size(); ++i) gaps.push_back(pts[i + 1] - pts[i]);
      gaps.push_back(1.0 - pts.back() + pts.front());
      std::sort(gaps.begin(), gaps.end());
      int distinct = 1;
      for (std::size_t i = 1; i < gaps.size(); ++i) {
        if (gaps[i] - gaps[i - 1] > 1e-9) ++distinct;
      }
      worst_count = std::max(worst_count, distinct);
    }
  }
  report(8, "at most three distinct gaps for golden, sqrt2, sqrt3", worst_count <= 3,
         "max distinct gap count " + std::to_string(worst_count) + " over K in {10,100,1000}");
}

// --- 9: non-Hausdorff closure witness ---------------------------------------

void criterion_witness() {
  const WeightsST st = golden_weights();
  // First Fibonacci denominators of t/s = golden exceeding 1/eps.
  const std::int64_t bound_coarse = 1597;    // > 1e3
  const std::int64_t bound_fine = 121393;    // > 1e5
  SampleStream rng(1009);
  double worst3 = 0.0, worst5 = 0.0;
  bool ok = true;
  for (int i = 0; i < 20; ++i) {
    const double mod = std::sqrt(st.t * (0.05 + 0.9 * rng.next_unit()));
    const auto a = make_point(mod, rng.next_turn(), rng.next_turn(), st);
    const EllipsoidPointST b(a.z * unit_phase(rng.next_turn()), a.w * unit_phase(rng.next_turn()),
                             st, detail::unchecked);
    const auto coarse = closure_witness(a, b, 1e-3);
    const auto fine = closure_witness(a, b, 1e-5);
    worst3 = std::max(worst3, coarse.achieved);
    worst5 = std::max(worst5, fine.achieved);
    ok = ok && coarse.found && fine.found;
    ok = ok && coarse.shift_bound <= bound_coarse && std::llabs(coarse.shift) <= bound_coarse;
    ok = ok && fine.shift_bound <= bound_fine && std::llabs(fine.shift) <= bound_fine;
    ok = ok && ambient_dist(act_st(coarse.theta, a), b) < 1e-3;
    ok = ok && ambient_dist(act_st(fine.theta, a), b) < 1e-5;
  }
  report(9, "closure witnesses reach eps within the convergent bound", ok,
         "worst achieved " + fmt(worst3) + " @1e-3, " + fmt(worst5) + " @1e-5, 20 pairs");
}

// --- 10: poles collapse to single orbits ------------------------------------

void criterion_pole_collapse() {
  SampleStream rng(1010);
  const WeightsPQ pq(2, 3);
  const WeightsST st = golden_weights();
  const Tolerance tol = make_tolerance(1e-9, 100);
  bool ok = true;
  for (int i = 0; i < 50; ++i) {
    const Turn phase = rng.next_turn();
    // South: z = 0, any w phase, against the reference representative.
    ok = ok && orbit_equal_sphere(make_point(0.0, Turn{}, phase),
                                  SpherePoint3(Complex(0.0, 0.0), Complex(1.0, 0.0)),
                                  1e-9).outcome == Outcome::equal;
    ok = ok && orbit_equal_pq(make_point(0.0, Turn{}, phase, pq),
                              EllipsoidPointPQ(Complex(0.0, 0.0), std::sqrt(2.0), pq),
                              1e-9).outcome == Outcome::equal;
    ok = ok && orbit_equal_st(make_point(0.0, Turn{}, phase, st),
                              EllipsoidPointST(Complex(0.0, 0.0), std::sqrt(st.s), st),
                              tol).outcome == Outcome::equal;
    // North: w = 0, any z phase.
    ok = ok && orbit_equal_sphere(SpherePoint3(unit_phase(phase), Complex(0.0, 0.0)),
                                  SpherePoint3(Complex(1.0, 0.0), Complex(0.0, 0.0)),
                                  1e-9).outcome == Outcome::equal;
    ok = ok && orbit_equal_pq(EllipsoidPointPQ(std::sqrt(3.0) * unit_phase(phase), 0.0, pq),
                              EllipsoidPointPQ(std::sqrt(3.0), 0.0, pq),
                              1e-9).outcome == Outcome::equal;
    ok = ok && orbit_equal_st(EllipsoidPointST(std::sqrt(st.t) * unit_phase(phase), 0.0, st),
                              EllipsoidPointST(std::sqrt(st.t), 0.0, st),
                              tol).outcome == Outcome::equal;
  }
  report(10, "z = 0 and w = 0 loci collapse to the pole orbits", ok,
         "50 random phases x 3 spaces x 2 poles");
}

// --- 11: CLI determinism and exit-status contract ---------------------------

int run_cli(const std::string& args, const std::string& out_path = "") {
  std::string cmd = std::string(QSLAB_PATH) + " " + args;
  if (!out_path.empty()) cmd += " --out " + out_path;
  cmd += " > /dev/null 2> /dev/null";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

void criterion_cli() {
  namespace fs = std::filesystem;
  const std::string dir = (fs::temp_directory_path() / "qslab_acceptance").string();
  fs::create_directories(dir);
  const std::string f1 = dir + "/a.json", f2 = dir + "/b.json";
  const std::string sample_args =
      "sample-orbit --space quasi --st 1,golden --count 200 --theta-max 11 --seed 5 --format json";
  const int s1 = run_cli(sample_args, f1);
  const int s2 = run_cli(sample_args, f2);
  const bool deterministic = s1 == 0 && s2 == 0 && slurp(f1) == slurp(f2) && !slurp(f1).empty();

  const int code_equal = run_cli(
      "check-equal --space orbi --pq 2,3 --a polar:1.2,0.1,0.3 --b polar:1.2,0.3,0.6");
  const int code_not_equal = run_cli("check-equal --space sphere --a 1,0,0,0 --b 0,0,1,0");
  const int code_undetermined = run_cli(
      "check-equal --space quasi --st 1,golden --a polar:0.8,0.1,0.2 "
      "--b polar:0.8,0.34567,0.7891 --search-bound 40 --eps 1e-10");
  const int code_usage = run_cli("check-equal --space sphere --a 1,0,0 --b 0,0,1,0");
  const bool codes_ok = code_equal == 0 && code_not_equal == 1 && code_undetermined == 2 &&
                        code_usage == 64;

  report(11, "CLI is deterministic and honors the exit-status contract",
         deterministic && codes_ok,
         std::string(deterministic ? "byte-identical outputs" : "OUTPUT DIFFERS") + ", codes " +
             std::to_string(code_equal) + "/" + std::to_string(code_not_equal) + "/" +
             std::to_string(code_undetermined) + "/" + std::to_string(code_usage));
}

}  // namespace

int main() {
  criterion_constraints();
  criterion_hopf();
  criterion_pq_oracle();
  criterion_chart_roundtrips();
  criterion_transition_representative();
  criterion_transition_composition();
  criterion_specialization();
  criterion_three_gap();
  criterion_witness();
  criterion_pole_collapse();
  criterion_cli();
  if (failures == 0) {
    std::printf("all 11 acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criteria FAILED\n", failures);
  return 1;
}
