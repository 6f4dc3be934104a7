#include "cqed/lineshape.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "test_util.hpp"

using namespace cqed;

namespace {

EffectiveCouplings equal_mf_couplings(double gbar) {
  EffectiveCouplings c;
  c.gbar = gbar;
  c.gbar_by_f_prime = {gbar * std::sqrt(1.0 / 70.0),
                       gbar * std::sqrt(5.0 / 42.0),
                       gbar * std::sqrt(7.0 / 15.0)};
  return c;
}

EffectiveCouplings single_coupling(int f_prime, double g) {
  EffectiveCouplings c;
  c.gbar = g;
  c.gbar_by_f_prime = {0.0, 0.0, 0.0};
  c.gbar_by_f_prime[f_prime - 1] = g;
  return c;
}

ReducedSystem make_system(const EffectiveCouplings& couplings, double n,
                          double delta_c) {
  return ReducedSystem::assemble(LineConstants{}, couplings, n, delta_c);
}

// half width at half maximum by bisection on the response itself
double hwhm(const ReducedSystem& sys, double center) {
  const double peak = cavity_response(sys, center);
  double lo = 0.0, hi = 50.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (cavity_response(sys, center + mid) > 0.5 * peak)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("empty cavity normalization") {
  const auto sys = make_system(equal_mf_couplings(6.5), 0.0, 35.0);
  CHECK(cavity_response(sys, 35.0) == doctest::Approx(1.0).epsilon(1e-12));
  // Lorentzian half maximum at +-kappa
  CHECK(cavity_response(sys, 35.0 + 2.6) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(cavity_response(sys, 35.0 - 2.6) == doctest::Approx(0.5).epsilon(1e-12));

  // never exceeds 1 across the band, and attains it on resonance
  double max = cavity_response(sys, 35.0);
  for (double p = -700.0; p <= 700.0; p += 0.05)
    max = std::max(max, cavity_response(sys, p));
  CHECK(max <= 1.0 + 1e-9);
  CHECK(max >= 1.0 - 1e-9);
  CHECK(hwhm(sys, 35.0) == doctest::Approx(2.6).epsilon(1e-9));
}

TEST_CASE("resonant suppression for an isolated transition") {
  const double g = 6.5, kappa = 2.6, gamma = 3.0;
  for (double n : {1.0, 10.0, 400.0}) {
    const auto sys = make_system(single_coupling(3, g), n, 0.0);
    const double expected =
        std::pow(kappa / (kappa + n * g * g / gamma), 2.0);
    CHECK(cavity_response(sys, 0.0) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("transmission on atomic resonance decreases monotonically in N") {
  double previous = 1.0;
  for (double n : {1.0, 2.0, 5.0, 20.0, 100.0, 1000.0}) {
    const auto sys = make_system(equal_mf_couplings(6.5), n, 0.0);
    const double value = cavity_response(sys, 0.0);
    CHECK(value < previous);
    previous = value;
  }
}

TEST_CASE("small-linewidth peaks converge to the eigenmode energies") {
  auto sys = make_system(equal_mf_couplings(6.5), 25.0, -150.0);
  const auto modes = eigenmodes(sys);
  sys.kappa = 1e-3;
  sys.gamma = 1e-3;
  for (const auto& mode : modes) {
    if (mode.photonic_weight < 0.01) continue;
    // refine the maximum near the eigenvalue by golden-section-like scan
    double best = mode.energy, best_value = 0.0;
    for (double x = mode.energy - 0.05; x <= mode.energy + 0.05; x += 1e-4) {
      const double v = cavity_response(sys, x);
      if (v > best_value) {
        best_value = v;
        best = x;
      }
    }
    CHECK(std::abs(best - mode.energy) <= 1e-2);
  }
}

TEST_CASE("spectrum is symmetric about an isolated resonant crossing") {
  const auto sys = make_system(single_coupling(3, 6.5), 50.0, 0.0);
  for (double d = 0.5; d <= 120.0; d += 0.5)
    CHECK(cavity_response(sys, d) ==
          doctest::Approx(cavity_response(sys, -d)).epsilon(1e-9));
}

TEST_CASE("bare-cavity sweep puts the ridge on the diagonal") {
  const auto sys = make_system(equal_mf_couplings(6.5), 0.0, 0.0);
  std::vector<double> cavity{-300.0, -100.0, 50.0, 420.0};
  ProbeSweep sweep;
  for (double p = -700.0; p <= 700.0; p += 1.0)
    sweep.probe_detunings.push_back(p);
  const SpectrumGrid grid = spectrum_sweep(sys, cavity, sweep);
  for (size_t r = 0; r < cavity.size(); ++r) {
    size_t best = 0;
    for (size_t c = 0; c < grid.probe_detunings.size(); ++c)
      if (grid.at(r, c) > grid.at(r, best)) best = c;
    CHECK_ABS(grid.probe_detunings[best], cavity[r], 0.6);
  }
}

TEST_CASE("sweep results are independent of the worker count") {
  const auto sys = make_system(equal_mf_couplings(6.5), 300.0, 0.0);
  std::vector<double> cavity;
  for (double x = -700.0; x <= 700.0; x += 70.0) cavity.push_back(x);
  ProbeSweep sweep;
  for (double p = -700.0; p <= 700.0; p += 10.0)
    sweep.probe_detunings.push_back(p);

  const SpectrumGrid serial = spectrum_sweep(sys, cavity, sweep, 1);
  const SpectrumGrid parallel = spectrum_sweep(sys, cavity, sweep, 7);
  REQUIRE(serial.values.size() == parallel.values.size());
  for (size_t i = 0; i < serial.values.size(); ++i)
    CHECK(serial.values[i] == parallel.values[i]);
}

TEST_CASE("peak positions line up with photonic eigenmodes") {
  const auto base = make_system(equal_mf_couplings(6.5), 900.0, 0.0);
  std::vector<double> cavity;
  for (double x = -700.0; x <= 700.0; x += 35.0) cavity.push_back(x);
  ProbeSweep sweep;
  for (double p = -700.0; p <= 700.0; p += 5.0)
    sweep.probe_detunings.push_back(p);
  SpectrumGrid grid = spectrum_sweep(base, cavity, sweep);
  // drop sub-floor transparency windows, as in the measured maps
  apply_floor(grid, 0.02);

  ReducedSystem sys = base;
  const double slack = std::max(sys.kappa, sys.gamma);
  int maxima = 0;
  for (size_t r = 0; r < cavity.size(); ++r) {
    sys.cavity_detuning = cavity[r];
    const auto modes = eigenmodes(sys);
    for (size_t c = 1; c + 1 < grid.probe_detunings.size(); ++c) {
      const double v = grid.at(r, c);
      if (!(v > grid.at(r, c - 1) && v > grid.at(r, c + 1))) continue;
      ++maxima;
      double closest = 1e300;
      for (const auto& mode : modes)
        if (mode.photonic_weight >= 0.1)
          closest = std::min(closest,
                             std::abs(mode.energy - grid.probe_detunings[c]));
      CHECK(closest <= slack);
    }
  }
  CHECK(maxima > 20);
}

TEST_CASE("detector floor zeroes faint points") {
  SpectrumGrid grid;
  grid.cavity_detunings = {0.0};
  grid.probe_detunings = {0.0, 1.0, 2.0};
  grid.values = {0.5, 0.01, 0.03};
  apply_floor(grid, 0.02);
  CHECK(grid.values[0] == 0.5);
  CHECK(grid.values[1] == 0.0);
  CHECK(grid.values[2] == 0.03);
}

TEST_CASE("probe sweep validation") {
  ProbeSweep sweep;
  CHECK_THROWS_AS(sweep.validate(), std::invalid_argument);
  sweep.probe_detunings = {0.0, 1.0, 1.0};
  CHECK_THROWS_AS(sweep.validate(), std::invalid_argument);
  sweep.probe_detunings = {0.0, 1.0, 0.5};
  CHECK_THROWS_AS(sweep.validate(), std::invalid_argument);
  sweep.probe_detunings = {2.0, 1.0, 0.0};  // descending is fine
  CHECK_NOTHROW(sweep.validate());
}
