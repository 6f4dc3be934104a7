// Effective single-atom coupling: spatial averaging along the cavity axis,
// optional thermal transverse correction, and the m_F-population average
// that turns the dipole table into per-transition couplings gbar_F'.
#pragma once

#include <array>
#include <optional>
#include <vector>

#include "cqed/atomic_data.hpp"

namespace cqed {

enum class AxialDistribution { kUniform, kFixedPositions };

// Thermal cloud transverse to the cavity axis: Gaussian trap of the given
// depth and 1/e radius w0, harmonic approximation, Boltzmann statistics.
struct TransverseModel {
  double waist_um = 25.0;
  double trap_depth_uK = 330.0;
  double temperature_uK = 33.0;
};

struct SpatialModel {
  double g_max = 9.2;  // MHz
  AxialDistribution axial = AxialDistribution::kUniform;
  std::vector<double> positions_kz;  // phases k*z in radians, fixed-position mode
  std::optional<TransverseModel> transverse;

  void validate() const;
};

// Relative populations of the five F=2 ground sublevels, m_F = -2..+2.
struct MfDistribution {
  std::array<double, 5> p{0.2, 0.2, 0.2, 0.2, 0.2};

  static MfDistribution equal_populations() { return {}; }
  static MfDistribution delta(int m_f);

  double operator()(int m_f) const { return p[m_f + 2]; }

  // all p >= 0 and sum(p) = 1 to 1e-12
  void validate() const;
};

struct EffectiveCouplings {
  double gbar = 0.0;                          // MHz
  std::array<double, 3> gbar_by_f_prime{};    // MHz, index F'-1

  double g(int f_prime) const { return gbar_by_f_prime[f_prime - 1]; }
};

// gbar from the axial distribution alone: sqrt(mean |g_max cos(kz)|^2).
// Uniform distributions give exactly g_max/sqrt(2); fixed positions give
// the RMS of the sampled couplings. An empty position list is rejected.
double axial_average(const SpatialModel& model);

// Multiplicative reduction of gbar from the thermal transverse spread of
// the cloud: RMS of the mode envelope exp(-rho^2/w0^2) over the Boltzmann
// distribution in the harmonic approximation of the Gaussian trap,
// evaluated by adaptive quadrature (1e-8 relative). Requires a transverse
// model with 0 < T < trap depth.
double transverse_thermal_factor(const SpatialModel& model);

// gbar = axial average x transverse factor (1 when no transverse model);
// gbar_F' = gbar * sqrt(sum_m p(m) |<2,m|mu_0|F',m>|^2)  (pi probe, q = 0).
EffectiveCouplings effective_couplings(const DipoleTable& table,
                                       const MfDistribution& dist,
                                       const SpatialModel& spatial);

}  // namespace cqed
