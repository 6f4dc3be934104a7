#include "cqed/reduced_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cqed/eigen.hpp"

namespace cqed {

ReducedSystem ReducedSystem::assemble(const LineConstants& line,
                                      const EffectiveCouplings& couplings,
                                      double atom_number,
                                      double cavity_detuning) {
  line.validate();
  ReducedSystem sys;
  sys.atom_number = atom_number;
  sys.cavity_detuning = cavity_detuning;
  sys.atomic_offsets = line.hyperfine_offsets;
  sys.couplings = couplings;
  sys.kappa = line.kappa;
  sys.gamma = line.gamma;
  sys.validate();
  return sys;
}

void ReducedSystem::validate() const {
  if (!(atom_number >= 0.0))
    throw std::invalid_argument("atom number must be >= 0");
  if (!(kappa > 0.0) || !(gamma > 0.0))
    throw std::invalid_argument("kappa and gamma must be positive");
}

Matrix4 build_hamiltonian(const ReducedSystem& sys) {
  sys.validate();
  const double root_n = std::sqrt(sys.atom_number);
  Matrix4 h{};
  h[0][0] = sys.cavity_detuning;
  for (int f_prime = 1; f_prime <= 3; ++f_prime) {
    h[f_prime][f_prime] = sys.atomic_offsets[f_prime - 1];
    const double g = root_n * sys.couplings.g(f_prime);
    h[0][f_prime] = g;
    h[f_prime][0] = g;
  }
  return h;
}

std::array<EigenMode, 4> eigenmodes(const ReducedSystem& sys) {
  const Matrix4 h = build_hamiltonian(sys);
  std::vector<double> flat(16);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) flat[i * 4 + j] = h[i][j];
  const SymmetricEigen eig = jacobi_eigensolve(std::move(flat), 4, 1e-14);

  std::array<EigenMode, 4> modes;
  for (int k = 0; k < 4; ++k) {
    modes[k].energy = eig.values[k];
    modes[k].photonic_weight = eig.vectors[k][0] * eig.vectors[k][0];
  }
  // ascending already; break exact energy ties by descending photonic weight
  std::stable_sort(modes.begin(), modes.end(), [](const EigenMode& a, const EigenMode& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    return a.photonic_weight > b.photonic_weight;
  });
  return modes;
}

double splitting_size(const ReducedSystem& sys, int f_prime) {
  if (f_prime < 1 || f_prime > 3)
    throw std::invalid_argument("F' must be 1, 2 or 3");
  const double offset = sys.atomic_offsets[f_prime - 1];
  if (std::abs(sys.cavity_detuning - offset) > 1e-6)
    throw std::invalid_argument(
        "cavity must be tuned onto the selected transition");

  const auto modes = eigenmodes(sys);
  // the avoided pair carries the photonic weight at resonance
  std::array<int, 4> order{0, 1, 2, 3};
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return modes[a].photonic_weight > modes[b].photonic_weight;
  });
  const double gap = std::abs(modes[order[0]].energy - modes[order[1]].energy);

  for (int other = 1; other <= 3; ++other) {
    if (other == f_prime || sys.couplings.g(other) == 0.0) continue;
    const double distance = std::abs(sys.atomic_offsets[other - 1] - offset);
    if (distance < 10.0 * gap)
      throw std::invalid_argument(
          "avoided crossing is not isolated from the other transitions");
  }
  return gap;
}

std::vector<std::pair<double, std::array<EigenMode, 4>>> eigen_map(
    const ReducedSystem& base, std::span<const double> cavity_detunings) {
  if (cavity_detunings.empty())
    throw std::invalid_argument("cavity detuning grid is empty");
  for (size_t i = 1; i < cavity_detunings.size(); ++i)
    if (!(cavity_detunings[i] > cavity_detunings[i - 1]))
      throw std::invalid_argument("cavity detuning grid must be increasing");

  std::vector<std::pair<double, std::array<EigenMode, 4>>> out;
  out.reserve(cavity_detunings.size());
  ReducedSystem sys = base;
  for (double delta_c : cavity_detunings) {
    sys.cavity_detuning = delta_c;
    out.emplace_back(delta_c, eigenmodes(sys));
  }
  return out;
}

}  // namespace cqed
