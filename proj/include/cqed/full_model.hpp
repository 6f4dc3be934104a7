// Brute-force single-excitation treatment of the full two-mode Hamiltonian
// at small N: explicit basis over both cavity polarizations, Dicke-state
// matrix elements, and the comparison that validates the reduced model.
//
// The basis keeps every state reachable from the pi-driven ground
// configuration with at most one atom displaced from its original
// sublevel: the pi photon, the perp photon over the original and the
// one-atom-changed ground configurations, and the singly excited states
// |i, F', m_i + q>. Deeper m_F random-walk configurations are truncated;
// they enter only at higher order in the perp channel.
#pragma once

#include <complex>
#include <vector>

#include "cqed/atomic_data.hpp"
#include "cqed/reduced_model.hpp"

namespace cqed {

struct Atom {
  int m_f = 0;
  std::complex<double> g;  // MHz, complex coupling
};

struct AtomConfiguration {
  std::vector<Atom> atoms;

  static AtomConfiguration symmetric(int n, int m_f, std::complex<double> g);

  // 1 <= N <= 6, |m_F| <= 2, |g_i| <= g_max
  void validate(double g_max) const;
};

// Restricts which (F', q) transition channels act; the default keeps all.
// pi_only() zeroes the perp sector, single() reduces to a two-level atom.
struct TransitionFilter {
  std::array<std::array<bool, 3>, 3> allowed{};  // [F'-1][q+1]

  static TransitionFilter all();
  static TransitionFilter pi_only();
  static TransitionFilter single(int f_prime);

  bool operator()(int f_prime, int q) const {
    return allowed[f_prime - 1][q + 1];
  }
};

enum class StateKind {
  kPiPhoton,            // |pi> x original ground configuration
  kPerpPhotonOriginal,  // |perp> x original ground configuration
  kPerpPhotonChanged,   // |perp> x one atom moved to a neighboring sublevel
  kExcited              // no photon, one atom in |F', m'>
};

struct BasisState {
  StateKind kind = StateKind::kPiPhoton;
  int atom = -1;     // changed / excited states
  int m = 0;         // ground sublevel (changed) or excited m' (excited)
  int f_prime = 0;   // excited states only
};

struct SingleExcitationBasis {
  std::vector<BasisState> states;

  size_t dimension() const { return states.size(); }
  // index of the pi-photon state is always 0
  int find(const BasisState& s) const;  // -1 when absent
};

// Deterministic ordering: photons first (pi, perp-original, perp-changed by
// atom then sublevel), then excited states by atom, F' ascending, m'
// ascending. States only reachable through zeroed or filtered dipole
// elements are omitted.
SingleExcitationBasis enumerate_basis(const AtomConfiguration& config,
                                      const DipoleTable& table,
                                      const TransitionFilter& filter =
                                          TransitionFilter::all());

struct FullHamiltonian {
  SingleExcitationBasis basis;
  std::vector<std::complex<double>> matrix;  // row-major dim x dim, MHz
};

// Hermitian by construction. Photon states carry Delta_C on the diagonal,
// excited states their hyperfine offset; the pi photon couples through
// g_i <2,m|mu_0|F',m>, the perp photon through g_i (mu_+1 + mu_-1)/sqrt(2).
FullHamiltonian build_full_hamiltonian(const AtomConfiguration& config,
                                       const DipoleTable& table,
                                       const LineConstants& line,
                                       double cavity_detuning,
                                       const TransitionFilter& filter =
                                           TransitionFilter::all());

struct DickeElements {
  double pi_element = 0.0;    // |<Dicke(F')|H_I|pi, ground>| = sqrt(N) gbar_F'
  double perp_element = 0.0;  // ||P_perp H_I |Dicke(F')>||, N-independent
  double gbar_f_prime = 0.0;  // |g| |<2,m|mu_0|F',m>| for reference
  int perp_components = 0;    // product terms in the perp-reached state
};

// Explicit state construction for the symmetric case (one shared m_F and
// one shared |g_i|); other configurations are rejected. The perp element
// is the norm of the interaction image of the Dicke state in the perp
// sector, i.e. its matrix element to that state after normalization.
DickeElements dicke_matrix_elements(const AtomConfiguration& config,
                                    const DipoleTable& table, int f_prime);

struct ReducedComparison {
  double max_energy_deviation = 0.0;  // MHz
  double max_weight_deviation = 0.0;
  int compared_modes = 0;
  int full_photonic_modes = 0;  // pi weight >= 1e-6 in the full model
  bool mode_count_mismatch = false;
};

// Diagonalizes the full model and the reduced model built from the
// configuration's empirical m_F distribution and RMS coupling, then
// reports the worst eigenvalue and pi-weight deviation over the reduced
// modes with photonic weight >= 1e-6 (each matched to the nearest-energy
// photonic mode of the full model). With the perp sector filtered away
// the two agree to solver tolerance.
ReducedComparison compare_reduced(const AtomConfiguration& config,
                                  const DipoleTable& table,
                                  const LineConstants& line,
                                  double cavity_detuning,
                                  const TransitionFilter& filter =
                                      TransitionFilter::all());

// Effective couplings seen by the reduced model for this configuration:
// gbar = sqrt(sum |g_i|^2 / N), empirical p(m_F), filtered pi elements.
EffectiveCouplings config_couplings(const AtomConfiguration& config,
                                    const DipoleTable& table,
                                    const TransitionFilter& filter =
                                        TransitionFilter::all());

}  // namespace cqed
