#include "cqed/full_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "cqed/eigen.hpp"

namespace cqed {

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
constexpr double kWeightFloor = 1e-6;  // "photonic" cutoff for comparisons

bool valid_ground(int m) { return m >= -2 && m <= 2; }

// emission element from excited (F', m') to ground m_g, polarization
// q = m' - m_g; zero when out of range or filtered
double emission(const DipoleTable& table, const TransitionFilter& filter,
                int f_prime, int m_excited, int m_ground) {
  const int q = m_excited - m_ground;
  if (q < -1 || q > 1 || !valid_ground(m_ground)) return 0.0;
  if (!filter(f_prime, q)) return 0.0;
  return table.d(f_prime, m_ground, q);
}

}  // namespace

AtomConfiguration AtomConfiguration::symmetric(int n, int m_f,
                                               std::complex<double> g) {
  AtomConfiguration config;
  config.atoms.assign(static_cast<size_t>(n), Atom{m_f, g});
  return config;
}

void AtomConfiguration::validate(double g_max) const {
  if (atoms.empty() || atoms.size() > 6)
    throw std::invalid_argument("oracle configurations take 1 to 6 atoms");
  for (const Atom& atom : atoms) {
    if (!valid_ground(atom.m_f))
      throw std::invalid_argument("m_F must be in [-2, 2]");
    if (std::abs(atom.g) > g_max * (1.0 + 1e-12))
      throw std::invalid_argument("|g_i| must not exceed g_max");
  }
}

TransitionFilter TransitionFilter::all() {
  TransitionFilter f;
  for (auto& row : f.allowed) row = {true, true, true};
  return f;
}

TransitionFilter TransitionFilter::pi_only() {
  TransitionFilter f;
  for (auto& row : f.allowed) row = {false, true, false};
  return f;
}

TransitionFilter TransitionFilter::single(int f_prime) {
  if (f_prime < 1 || f_prime > 3)
    throw std::invalid_argument("F' must be 1, 2 or 3");
  TransitionFilter f{};
  f.allowed[f_prime - 1][1] = true;
  return f;
}

int SingleExcitationBasis::find(const BasisState& s) const {
  for (size_t i = 0; i < states.size(); ++i) {
    const BasisState& b = states[i];
    if (b.kind == s.kind && b.atom == s.atom && b.m == s.m &&
        b.f_prime == s.f_prime)
      return static_cast<int>(i);
  }
  return -1;
}

SingleExcitationBasis enumerate_basis(const AtomConfiguration& config,
                                      const DipoleTable& table,
                                      const TransitionFilter& filter) {
  if (config.atoms.empty() || config.atoms.size() > 6)
    throw std::invalid_argument("oracle configurations take 1 to 6 atoms");
  for (const Atom& atom : config.atoms)
    if (!valid_ground(atom.m_f))
      throw std::invalid_argument("m_F must be in [-2, 2]");
  const int n = static_cast<int>(config.atoms.size());

  // excited states per atom: (F', m_i + q) with a live absorption element
  auto excited_of = [&](int i) {
    std::vector<BasisState> out;
    const int m_i = config.atoms[i].m_f;
    for (int f_prime = 1; f_prime <= 3; ++f_prime)
      for (int q = -1; q <= 1; ++q) {
        const int m_e = m_i + q;
        if (std::abs(m_e) > f_prime) continue;
        if (!filter(f_prime, q) || table.d(f_prime, m_i, q) == 0.0) continue;
        out.push_back({StateKind::kExcited, i, m_e, f_prime});
      }
    return out;
  };

  SingleExcitationBasis basis;
  basis.states.push_back({StateKind::kPiPhoton, -1, 0, 0});

  // perp photon over the unchanged configuration: kept when some atom can
  // absorb it (a sigma channel out of the original sublevel is live)
  bool perp_original = false;
  for (int i = 0; i < n && !perp_original; ++i)
    for (const BasisState& e : excited_of(i))
      if (e.m != config.atoms[i].m_f) {
        perp_original = true;
        break;
      }
  if (perp_original)
    basis.states.push_back({StateKind::kPerpPhotonOriginal, -1, 0, 0});

  // perp photon over one-atom-changed configurations, reachable in one
  // pi-absorption / perp-emission cycle
  for (int i = 0; i < n; ++i) {
    const int m_i = config.atoms[i].m_f;
    for (int m_changed = m_i - 1; m_changed <= m_i + 1; m_changed += 2) {
      if (!valid_ground(m_changed)) continue;
      bool reachable = false;
      for (int f_prime = 1; f_prime <= 3 && !reachable; ++f_prime) {
        const bool pi_excitable =
            filter(f_prime, 0) && std::abs(m_i) <= f_prime &&
            table.d(f_prime, m_i, 0) != 0.0;
        reachable = pi_excitable &&
                    emission(table, filter, f_prime, m_i, m_changed) != 0.0;
      }
      if (reachable)
        basis.states.push_back(
            {StateKind::kPerpPhotonChanged, i, m_changed, 0});
    }
  }

  for (int i = 0; i < n; ++i)
    for (const BasisState& e : excited_of(i)) basis.states.push_back(e);

  return basis;
}

FullHamiltonian build_full_hamiltonian(const AtomConfiguration& config,
                                       const DipoleTable& table,
                                       const LineConstants& line,
                                       double cavity_detuning,
                                       const TransitionFilter& filter) {
  config.validate(line.g_max);
  FullHamiltonian full;
  full.basis = enumerate_basis(config, table, filter);
  const size_t dim = full.basis.dimension();
  full.matrix.assign(dim * dim, 0.0);

  auto at = [&](size_t r, size_t c) -> std::complex<double>& {
    return full.matrix[r * dim + c];
  };
  auto set_coupling = [&](size_t photon_row, size_t excited_col,
                          std::complex<double> value) {
    at(photon_row, excited_col) = value;
    at(excited_col, photon_row) = std::conj(value);
  };

  for (size_t r = 0; r < dim; ++r) {
    const BasisState& s = full.basis.states[r];
    at(r, r) = (s.kind == StateKind::kExcited)
                   ? line.offset(s.f_prime)
                   : cavity_detuning;
  }

  for (size_t c = 0; c < dim; ++c) {
    const BasisState& e = full.basis.states[c];
    if (e.kind != StateKind::kExcited) continue;
    const Atom& atom = config.atoms[e.atom];

    for (size_t r = 0; r < dim; ++r) {
      const BasisState& p = full.basis.states[r];
      switch (p.kind) {
        case StateKind::kPiPhoton:
          // pi photon absorbed from the original sublevel, q = 0
          if (e.m == atom.m_f && filter(e.f_prime, 0))
            set_coupling(r, c, atom.g * table.d(e.f_prime, atom.m_f, 0));
          break;
        case StateKind::kPerpPhotonOriginal:
          if (std::abs(e.m - atom.m_f) == 1)
            set_coupling(r, c,
                         atom.g * kInvSqrt2 *
                             emission(table, filter, e.f_prime, e.m, atom.m_f));
          break;
        case StateKind::kPerpPhotonChanged:
          // same atom, ground sublevel one step away from the excited m'
          if (p.atom == e.atom && std::abs(e.m - p.m) == 1)
            set_coupling(r, c,
                         atom.g * kInvSqrt2 *
                             emission(table, filter, e.f_prime, e.m, p.m));
          break;
        case StateKind::kExcited:
          break;
      }
    }
  }
  return full;
}

DickeElements dicke_matrix_elements(const AtomConfiguration& config,
                                    const DipoleTable& table, int f_prime) {
  if (f_prime < 1 || f_prime > 3)
    throw std::invalid_argument("F' must be 1, 2 or 3");
  if (config.atoms.empty())
    throw std::invalid_argument("configuration is empty");

  const int m = config.atoms.front().m_f;
  const double g_mag = std::abs(config.atoms.front().g);
  for (const Atom& atom : config.atoms) {
    if (atom.m_f != m || std::abs(std::abs(atom.g) - g_mag) > 1e-12 * g_mag)
      throw std::invalid_argument(
          "Dicke matrix elements need one shared m_F and one shared |g_i|");
  }
  if (std::abs(m) > f_prime)
    throw std::invalid_argument("no F' level reachable from this m_F");

  const size_t n = config.atoms.size();
  const double c0 = table.d(f_prime, m, 0);
  const TransitionFilter all = TransitionFilter::all();

  // |Dicke> = N^{-1/2} sum_i phi_i |e_i(F', m)>, phases aligned with the
  // coupling phases; real equal couplings give the plain symmetric state.
  std::vector<std::complex<double>> dicke(n);
  for (size_t i = 0; i < n; ++i) {
    const std::complex<double> g = config.atoms[i].g;
    dicke[i] = (g_mag == 0.0 ? 1.0 : std::conj(g) / std::abs(g)) /
               std::sqrt(double(n));
  }

  // pi-photon absorption image of |pi, ground>: amplitude on |e_i(F', m)>
  // is conj(g_i) <2,m|mu_0|F',m>. The Dicke element is the inner product.
  std::complex<double> pi_overlap = 0.0;
  for (size_t i = 0; i < n; ++i)
    pi_overlap += std::conj(dicke[i]) * std::conj(config.atoms[i].g) * c0;

  // perp-emission image of the Dicke state: amplitude on the product state
  // |perp; atom i moved to m_g> is g_i dicke_i (1/sqrt 2) <2,m_g|mu_q|F',m>.
  double perp_norm_sq = 0.0;
  int components = 0;
  for (size_t i = 0; i < n; ++i) {
    for (int m_ground = m - 1; m_ground <= m + 1; m_ground += 2) {
      const double amp = emission(table, all, f_prime, m, m_ground);
      if (amp == 0.0) continue;
      perp_norm_sq +=
          std::norm(config.atoms[i].g * dicke[i] * kInvSqrt2 * amp);
      ++components;
    }
  }

  DickeElements out;
  out.pi_element = std::abs(pi_overlap);
  out.perp_element = std::sqrt(perp_norm_sq);
  out.gbar_f_prime = g_mag * std::abs(c0);
  out.perp_components = components;
  return out;
}

EffectiveCouplings config_couplings(const AtomConfiguration& config,
                                    const DipoleTable& table,
                                    const TransitionFilter& filter) {
  if (config.atoms.empty())
    throw std::invalid_argument("configuration is empty");
  const double n = static_cast<double>(config.atoms.size());

  double sum_g_sq = 0.0;
  for (const Atom& atom : config.atoms) sum_g_sq += std::norm(atom.g);
  const double gbar = std::sqrt(sum_g_sq / n);

  EffectiveCouplings out;
  out.gbar = gbar;
  for (int f_prime = 1; f_prime <= 3; ++f_prime) {
    double mean_sq = 0.0;
    if (filter(f_prime, 0)) {
      for (const Atom& atom : config.atoms) {
        const double d = table.d(f_prime, atom.m_f, 0);
        mean_sq += d * d / n;
      }
    }
    out.gbar_by_f_prime[f_prime - 1] = gbar * std::sqrt(mean_sq);
  }
  return out;
}

ReducedComparison compare_reduced(const AtomConfiguration& config,
                                  const DipoleTable& table,
                                  const LineConstants& line,
                                  double cavity_detuning,
                                  const TransitionFilter& filter) {
  const FullHamiltonian full =
      build_full_hamiltonian(config, table, line, cavity_detuning, filter);
  const int dim = static_cast<int>(full.basis.dimension());
  const HermitianEigen eig = hermitian_eigensolve(full.matrix, dim, 1e-14);

  struct Mode {
    double energy, weight;
  };
  std::vector<Mode> full_modes;
  for (int k = 0; k < dim; ++k) {
    const double w = std::norm(eig.vectors[k][0]);  // pi photon is index 0
    if (w >= kWeightFloor) full_modes.push_back({eig.values[k], w});
  }

  ReducedSystem reduced = ReducedSystem::assemble(
      line, config_couplings(config, table, filter),
      static_cast<double>(config.atoms.size()), cavity_detuning);
  std::vector<Mode> reduced_modes;
  for (const EigenMode& mode : eigenmodes(reduced))
    if (mode.photonic_weight >= kWeightFloor)
      reduced_modes.push_back({mode.energy, mode.photonic_weight});

  ReducedComparison report;
  report.full_photonic_modes = static_cast<int>(full_modes.size());
  report.compared_modes = static_cast<int>(reduced_modes.size());
  report.mode_count_mismatch = full_modes.size() != reduced_modes.size();

  for (const Mode& r : reduced_modes) {
    double best_distance = std::numeric_limits<double>::infinity();
    double best_weight_dev = best_distance;
    for (const Mode& f : full_modes) {
      const double distance = std::abs(f.energy - r.energy);
      if (distance < best_distance) {
        best_distance = distance;
        best_weight_dev = std::abs(f.weight - r.weight);
      }
    }
    report.max_energy_deviation =
        std::max(report.max_energy_deviation, best_distance);
    report.max_weight_deviation =
        std::max(report.max_weight_deviation, best_weight_dev);
  }
  return report;
}

}  // namespace cqed
