// Single-excitation manifold of the collective-spin model: one cavity mode
// coupled to the three F' transitions with strengths sqrt(N) gbar_F'.
// All energies are detunings from the F=2 -> F'=3 transition, in MHz.
#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "cqed/atomic_data.hpp"
#include "cqed/coupling.hpp"

namespace cqed {

struct ReducedSystem {
  double atom_number = 0.0;     // mean N, non-integer allowed
  double cavity_detuning = 0.0; // Delta_C, MHz
  std::array<double, 3> atomic_offsets{-423.597, -266.650, 0.0};
  EffectiveCouplings couplings;
  double kappa = 2.6;
  double gamma = 3.0;

  static ReducedSystem assemble(const LineConstants& line,
                                const EffectiveCouplings& couplings,
                                double atom_number, double cavity_detuning);

  void validate() const;  // N >= 0, kappa > 0, gamma > 0
};

struct EigenMode {
  double energy = 0.0;           // MHz, probe detuning at resonance
  double photonic_weight = 0.0;  // |<photon|v>|^2, in [0, 1]
};

// Basis ordering (photon, F'=1, F'=2, F'=3): diagonal carries
// (Delta_C, offsets...), the photon row carries sqrt(N) gbar_F'.
using Matrix4 = std::array<std::array<double, 4>, 4>;
Matrix4 build_hamiltonian(const ReducedSystem& sys);

// Eigenvalues ascending, exact ties broken by descending photonic weight.
std::array<EigenMode, 4> eigenmodes(const ReducedSystem& sys);

// Gap of the avoided crossing at transition F'. Requires the cavity tuned
// onto that transition, and rejects geometries where the other coupled
// transitions sit closer than 10x the splitting.
double splitting_size(const ReducedSystem& sys, int f_prime);

// Eigenmodes along a cavity-detuning grid (the avoided-crossing map).
std::vector<std::pair<double, std::array<EigenMode, 4>>> eigen_map(
    const ReducedSystem& base, std::span<const double> cavity_detunings);

}  // namespace cqed
