// Rb-87 D2 line data for the F=2 ground manifold: normalized dipole
// matrix elements <2,m|mu_q|F',m+q> and the fixed frequencies and rates.
//
// Conventions used throughout the project:
//   * all frequencies are in MHz with the 2*pi factor stripped,
//   * all detunings are referenced to the F=2 -> F'=3 transition,
//   * dipole elements are normalized so the cycling element
//     <2,2|mu_+1|3,3> is exactly +1 (Condon-Shortley phases otherwise).
#pragma once

#include <array>

namespace cqed {

// Normalized dipole matrix element <2, m_F | mu_q | F', m_F + q> for the
// ground F=2 manifold. F' in {1,2,3}, m_F in [-2,2], q in {-1,0,+1};
// anything else throws std::invalid_argument. Selection-rule zeros
// (|m_F + q| > F') are exact.
double dipole_element(int f_prime, int m_f, int q);

// All 45 (F', m_F, q) elements of dipole_element in one lookup table.
struct DipoleTable {
  // indexed [F'-1][m_F+2][q+1]
  std::array<std::array<std::array<double, 3>, 5>, 3> elements{};

  double d(int f_prime, int m_f, int q) const;
};

DipoleTable build_dipole_table();

// Line constants; defaults are the Rb-87 D2 datasheet values quoted in MHz.
struct LineConstants {
  // omega_F' - omega_3 for F' = 1..3; by construction offsets[2] = 0.
  // F'=2 -> F'=3 splitting 266.650 MHz, F'=1 -> F'=2 splitting 156.947 MHz.
  std::array<double, 3> hyperfine_offsets{-423.597, -266.650, 0.0};
  double g_max = 9.2;   // max single-atom coupling, MHz
  double kappa = 2.6;   // cavity field decay, MHz
  double gamma = 3.0;   // atomic dipole decay, MHz

  double offset(int f_prime) const;

  // Offsets strictly increasing with F', offsets[3] = 0, rates positive.
  void validate() const;
};

}  // namespace cqed
