// Acceptance suite: one check per shipped guarantee, each printed as a
// [PASS]/[FAIL] line with the observed numbers. Exits nonzero when any
// check fails. Everything runs from first principles in a few seconds.
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "cqed/atomic_data.hpp"
#include "cqed/coupling.hpp"
#include "cqed/full_model.hpp"
#include "cqed/lineshape.hpp"
#include "cqed/reduced_model.hpp"
#include "wigner_oracle.hpp"

namespace {

int failures = 0;

void report(int id, const std::string& name, bool pass,
            const std::string& detail) {
  std::printf("[%s] %d %s: %s\n", pass ? "PASS" : "FAIL", id, name.c_str(),
              detail.c_str());
  if (!pass) ++failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

cqed::EffectiveCouplings equal_mf_couplings(const cqed::DipoleTable& table,
                                            double gbar) {
  cqed::EffectiveCouplings c;
  c.gbar = gbar;
  for (int f_prime = 1; f_prime <= 3; ++f_prime) {
    double mean_sq = 0.0;
    for (int m = -2; m <= 2; ++m) {
      const double d = table.d(f_prime, m, 0);
      mean_sq += 0.2 * d * d;
    }
    c.gbar_by_f_prime[f_prime - 1] = gbar * std::sqrt(mean_sq);
  }
  return c;
}

cqed::EffectiveCouplings lone_coupling(int f_prime, double g) {
  cqed::EffectiveCouplings c;
  c.gbar = g;
  c.gbar_by_f_prime = {0.0, 0.0, 0.0};
  c.gbar_by_f_prime[f_prime - 1] = g;
  return c;
}

cqed::ReducedSystem make_system(const cqed::EffectiveCouplings& couplings,
                                double n, double delta_c) {
  return cqed::ReducedSystem::assemble(cqed::LineConstants{}, couplings, n,
                                       delta_c);
}

// --- criterion 1: spatial average -----------------------------------------

void criterion_spatial_average() {
  cqed::SpatialModel model;
  model.g_max = 9.2;
  const double gbar = cqed::axial_average(model);
  const double closed = 9.2 / std::sqrt(2.0);
  const double rel = std::abs(gbar - closed) / closed;
  const bool prints_as_6_5 = std::round(gbar * 10.0) / 10.0 == 6.5;
  report(1, "axial spatial average", rel <= 1e-12 && prints_as_6_5,
         "gbar = " + fmt(gbar) + " MHz, closed form 9.2/sqrt(2) = " +
             fmt(closed) + ", relative deviation " + fmt(rel));
}

// --- criterion 2: transverse thermal correction ----------------------------

void criterion_transverse() {
  cqed::SpatialModel model;
  model.g_max = 9.2;
  model.transverse = cqed::TransverseModel{25.0, 330.0, 33.0};
  const double factor = cqed::transverse_thermal_factor(model);
  report(2, "transverse thermal correction",
         factor >= 0.91 && factor <= 0.93,
         "factor = " + fmt(factor) + ", required window [0.91, 0.93]");
}

// --- criterion 3: collective enhancement ----------------------------------

void criterion_collective_enhancement() {
  const double g = 6.5;
  bool pass = true;
  std::string detail;
  std::vector<double> log_n, log_gap;
  for (double n : {1.0, 4.0, 100.0, 10000.0}) {
    const double gap =
        cqed::splitting_size(make_system(lone_coupling(3, g), n, 0.0), 3);
    const double expected = 2.0 * std::sqrt(n) * g;
    const double rel = std::abs(gap - expected) / expected;
    pass = pass && rel <= 1e-9;
    log_n.push_back(std::log(n));
    log_gap.push_back(std::log(gap));
    if (!detail.empty()) detail += ", ";
    detail += "N=" + fmt(n) + ": " + fmt(gap) + " MHz (rel " + fmt(rel) + ")";
  }

  // least-squares slope of log(gap) vs log(N)
  const size_t k = log_n.size();
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < k; ++i) {
    mx += log_n[i] / k;
    my += log_gap[i] / k;
  }
  double sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < k; ++i) {
    sxx += (log_n[i] - mx) * (log_n[i] - mx);
    sxy += (log_n[i] - mx) * (log_gap[i] - my);
  }
  const double slope = sxy / sxx;
  pass = pass && std::abs(slope - 0.5) <= 1e-6;
  report(3, "collective enhancement 2 sqrt(N) g", pass,
         detail + "; log-log slope = " + fmt(slope));
}

// --- criterion 4: reduced vs full equivalence ------------------------------

void criterion_reduced_vs_full() {
  const cqed::DipoleTable table = cqed::build_dipole_table();
  const cqed::LineConstants line;
  double worst_energy = 0.0, worst_weight = 0.0;
  for (int n = 1; n <= 4; ++n)
    for (int m : {0, 1, 2}) {
      const auto config = cqed::AtomConfiguration::symmetric(n, m, 6.5);
      const auto report_ = cqed::compare_reduced(
          config, table, line, 0.0, cqed::TransitionFilter::pi_only());
      worst_energy = std::max(worst_energy, report_.max_energy_deviation);
      worst_weight = std::max(worst_weight, report_.max_weight_deviation);
    }
  report(4, "reduced vs full model (perp sector off)",
         worst_energy <= 1e-9 && worst_weight <= 1e-9,
         "max eigenvalue deviation " + fmt(worst_energy) +
             " MHz, max weight deviation " + fmt(worst_weight) +
             " over symmetric N <= 4");
}

// --- criterion 5: Dicke matrix elements -----------------------------------

void criterion_dicke_elements() {
  const cqed::DipoleTable table = cqed::build_dipole_table();
  bool pass = true;
  std::string detail;
  for (int n : {1, 2, 4, 6}) {
    const auto config = cqed::AtomConfiguration::symmetric(n, 2, 6.5);
    const auto elems = cqed::dicke_matrix_elements(config, table, 3);
    const double pi_ratio = elems.pi_element / elems.gbar_f_prime;
    const double perp_ratio = elems.perp_element / elems.gbar_f_prime;
    const double pi_rel = std::abs(pi_ratio / std::sqrt(double(n)) - 1.0);
    const double perp_rel = std::abs(perp_ratio - 1.0);
    pass = pass && pi_rel <= 1e-12 && perp_rel <= 1e-12;
    if (!detail.empty()) detail += ", ";
    detail += "N=" + std::to_string(n) + ": pi/gbar=" + fmt(pi_ratio) +
              ", perp/gbar=" + fmt(perp_ratio);
  }
  report(5, "Dicke pi enhancement and perp non-enhancement", pass, detail);
}

// --- criterion 6: spectral morphology of the avoided-crossing map ----------

void criterion_morphology() {
  const cqed::DipoleTable table = cqed::build_dipole_table();
  const auto couplings = equal_mf_couplings(table, 6.5);
  const std::array<double, 3> offsets{-423.597, -266.650, 0.0};
  bool pass = true;
  std::string detail;

  // small N: sqrt(N) gbar_3 <= 20 MHz, three disjoint weight-carrying gaps
  const double n_small = 16.0;
  std::array<std::pair<double, double>, 3> intervals;
  for (int f = 1; f <= 3; ++f) {
    const auto modes =
        cqed::eigenmodes(make_system(couplings, n_small, offsets[f - 1]));
    std::array<int, 4> order{0, 1, 2, 3};
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return modes[a].photonic_weight > modes[b].photonic_weight;
    });
    const double lo = std::min(modes[order[0]].energy, modes[order[1]].energy);
    const double hi = std::max(modes[order[0]].energy, modes[order[1]].energy);
    pass = pass && lo < offsets[f - 1] && hi > offsets[f - 1];
    pass = pass && modes[order[0]].photonic_weight > 0.1 &&
           modes[order[1]].photonic_weight > 0.1;
    intervals[f - 1] = {lo, hi};
  }
  pass = pass && intervals[0].second < intervals[1].first &&
         intervals[1].second < intervals[2].first;
  detail += "N=16 crossings [" + fmt(intervals[0].first) + "," +
            fmt(intervals[0].second) + "] [" + fmt(intervals[1].first) + "," +
            fmt(intervals[1].second) + "] [" + fmt(intervals[2].first) + "," +
            fmt(intervals[2].second) + "] MHz disjoint";

  // large N: sqrt(N) gbar_3 >= 300 MHz, inner branches dark at the center
  const double n_large = 10000.0;
  const double central = 0.5 * (offsets[0] + offsets[2]);
  const auto modes = cqed::eigenmodes(make_system(couplings, n_large, central));
  pass = pass && modes[1].photonic_weight < 0.05 &&
         modes[2].photonic_weight < 0.05 && modes[0].photonic_weight >= 0.4 &&
         modes[3].photonic_weight >= 0.4;
  detail += "; N=10000 weights at Delta_C=" + fmt(central) + ": " +
            fmt(modes[0].photonic_weight) + ", " + fmt(modes[1].photonic_weight) +
            ", " + fmt(modes[2].photonic_weight) + ", " +
            fmt(modes[3].photonic_weight);

  report(6, "spectral morphology across regimes", pass, detail);
}

// --- criterion 7: lineshape consistency ------------------------------------

void criterion_lineshape() {
  const cqed::DipoleTable table = cqed::build_dipole_table();
  const auto couplings = equal_mf_couplings(table, 6.5);
  bool pass = true;
  std::string detail;

  // 41 x 281 grid, the full transmission map
  std::vector<double> cavity, probe;
  for (double x = -700.0; x <= 700.0; x += 35.0) cavity.push_back(x);
  for (double p = -700.0; p <= 700.0; p += 5.0) probe.push_back(p);
  cqed::ProbeSweep sweep;
  sweep.probe_detunings = probe;

  for (double n : {200.0, 10000.0}) {
    const auto base = make_system(couplings, n, 0.0);
    auto grid = cqed::spectrum_sweep(base, cavity, sweep);
    // the measured maps zero sub-floor counts; transparency windows between
    // the absorption lines otherwise register micro-maxima carrying no light
    cqed::apply_floor(grid, 0.02);
    auto sys = base;
    double worst = 0.0;
    int maxima = 0;
    for (size_t r = 0; r < cavity.size(); ++r) {
      sys.cavity_detuning = cavity[r];
      const auto modes = cqed::eigenmodes(sys);
      for (size_t c = 1; c + 1 < probe.size(); ++c) {
        const double v = grid.at(r, c);
        if (!(v > grid.at(r, c - 1) && v > grid.at(r, c + 1))) continue;
        ++maxima;
        double closest = 1e300;
        for (const auto& mode : modes)
          if (mode.photonic_weight >= 0.1)
            closest = std::min(closest, std::abs(mode.energy - probe[c]));
        worst = std::max(worst, closest);
      }
    }
    pass = pass && worst <= 3.0 && maxima > 0;
    if (!detail.empty()) detail += "; ";
    detail += "N=" + fmt(n) + ": " + std::to_string(maxima) +
              " maxima above the 0.02 floor, worst offset from a photonic "
              "eigenmode " +
              fmt(worst) + " MHz";
  }

  // empty-cavity normalization and width
  const auto empty = make_system(couplings, 0.0, 0.0);
  double peak = cqed::cavity_response(empty, 0.0);
  for (double p = -700.0; p <= 700.0; p += 0.1)
    peak = std::max(peak, cqed::cavity_response(empty, p));
  pass = pass && std::abs(peak - 1.0) <= 1e-9;

  double lo = 0.0, hi = 50.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (cqed::cavity_response(empty, mid) > 0.5)
      lo = mid;
    else
      hi = mid;
  }
  const double width = 0.5 * (lo + hi);
  pass = pass && std::abs(width - 2.6) <= 0.01 * 2.6;
  detail += "; empty-cavity max = " + fmt(peak) + ", HWHM = " + fmt(width) +
            " MHz (kappa = 2.6)";

  report(7, "lineshape consistency with the eigenstructure", pass, detail);
}

// --- criterion 8: dipole table properties ----------------------------------

void criterion_dipole_table() {
  const cqed::DipoleTable table = cqed::build_dipole_table();
  bool pass = table.d(3, 2, 1) == 1.0;

  double lo = 1e300, hi = -1e300;
  for (int m = -2; m <= 2; ++m) {
    double sum = 0.0;
    for (int f_prime = 1; f_prime <= 3; ++f_prime)
      for (int q = -1; q <= 1; ++q) {
        const double d = table.d(f_prime, m, q);
        sum += d * d;
      }
    lo = std::min(lo, sum);
    hi = std::max(hi, sum);
  }
  const double spread = hi - lo;
  pass = pass && spread <= 1e-12;

  double worst = 0.0;
  bool zeros_exact = true;
  for (int f_prime = 1; f_prime <= 3; ++f_prime)
    for (int m = -2; m <= 2; ++m)
      for (int q = -1; q <= 1; ++q) {
        const auto exact = oracle::dipole_element(f_prime, m, q);
        const double value = table.d(f_prime, m, q);
        worst = std::max(worst, std::abs(value - exact.value()));
        if (exact.sign == 0 && value != 0.0) zeros_exact = false;
        if (std::abs(m + q) > f_prime && value != 0.0) zeros_exact = false;
      }
  pass = pass && worst <= 1e-12 && zeros_exact;

  report(8, "dipole table properties", pass,
         "cycling = " + fmt(table.d(3, 2, 1)) + ", sum-rule spread = " +
             fmt(spread) + ", worst deviation from the exact-rational oracle = " +
             fmt(worst) + std::string(zeros_exact ? ", selection zeros exact"
                                                  : ", selection zeros BROKEN"));
}

}  // namespace

int main() {
  criterion_spatial_average();
  criterion_transverse();
  criterion_collective_enhancement();
  criterion_reduced_vs_full();
  criterion_dicke_elements();
  criterion_morphology();
  criterion_lineshape();
  criterion_dipole_table();

  if (failures == 0)
    std::printf("all 8 acceptance checks passed\n");
  else
    std::printf("%d acceptance check(s) FAILED\n", failures);
  return failures == 0 ? 0 : 1;
}
