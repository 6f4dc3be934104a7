#include "cqed/atomic_data.hpp"

#include <cmath>
#include <stdexcept>

#include "cqed/angular.hpp"

namespace cqed {

namespace {

// Rb-87: I = 3/2, ground J = 1/2 (F = 2), excited J' = 3/2 (F' = 1..3).
constexpr int kTwoI = 3;
constexpr int kTwoJ = 1;
constexpr int kTwoJp = 3;
constexpr int kF = 2;

// Unnormalized <F=2, m | mu_q | F', m+q>:
//   <F m; 1 q | F' m+q>  x  (-1)^(F'+J+1+I) sqrt((2F'+1)(2J+1)) {J J' 1; F' F I}
// The Clebsch-Gordan factor is expressed through a 3-j symbol.
double raw_element(int f_prime, int m_f, int q) {
  const int m_e = m_f + q;
  if (std::abs(m_e) > f_prime || std::abs(m_f) > kF) return 0.0;

  const auto F = AngularMomentum::integer(kF);
  const auto Fp = AngularMomentum::integer(f_prime);
  const auto one = AngularMomentum::integer(1);

  // <F m; 1 q | F' m'> = (-1)^(F-1+m') sqrt(2F'+1) (F 1 F'; m q -m')
  const double threej = wigner3j(F, one, Fp, 2 * m_f, 2 * q, -2 * m_e);
  const int phase_cg = ((kF - 1 + m_e) % 2 + 2) % 2;
  const double cg =
      (phase_cg ? -1.0 : 1.0) * std::sqrt(2.0 * f_prime + 1.0) * threej;

  const auto J = AngularMomentum::from_twice(kTwoJ);
  const auto Jp = AngularMomentum::from_twice(kTwoJp);
  const auto I = AngularMomentum::from_twice(kTwoI);
  const double sixj = wigner6j(J, Jp, one, Fp, F, I);
  const int phase_red = ((2 * f_prime + kTwoJ + 2 + kTwoI) / 2) % 2;
  const double reduced = (phase_red ? -1.0 : 1.0) *
                         std::sqrt((2.0 * f_prime + 1.0) * (kTwoJ + 1.0)) *
                         sixj;
  return cg * reduced;
}

double cycling_raw() {
  static const double value = raw_element(3, 2, +1);
  return value;
}

}  // namespace

double dipole_element(int f_prime, int m_f, int q) {
  if (f_prime < 1 || f_prime > 3)
    throw std::invalid_argument("F' must be 1, 2 or 3");
  if (m_f < -2 || m_f > 2)
    throw std::invalid_argument("m_F must be in [-2, 2]");
  if (q < -1 || q > 1)
    throw std::invalid_argument("q must be -1, 0 or +1");

  if (f_prime == 3 && m_f == 2 && q == 1) return 1.0;  // cycling, by definition
  return raw_element(f_prime, m_f, q) / cycling_raw();
}

double DipoleTable::d(int f_prime, int m_f, int q) const {
  if (f_prime < 1 || f_prime > 3 || m_f < -2 || m_f > 2 || q < -1 || q > 1)
    throw std::invalid_argument("dipole table index out of range");
  return elements[f_prime - 1][m_f + 2][q + 1];
}

DipoleTable build_dipole_table() {
  DipoleTable table;
  for (int f_prime = 1; f_prime <= 3; ++f_prime)
    for (int m_f = -2; m_f <= 2; ++m_f)
      for (int q = -1; q <= 1; ++q)
        table.elements[f_prime - 1][m_f + 2][q + 1] =
            dipole_element(f_prime, m_f, q);
  return table;
}

double LineConstants::offset(int f_prime) const {
  if (f_prime < 1 || f_prime > 3)
    throw std::invalid_argument("F' must be 1, 2 or 3");
  return hyperfine_offsets[f_prime - 1];
}

void LineConstants::validate() const {
  if (!(hyperfine_offsets[0] < hyperfine_offsets[1] &&
        hyperfine_offsets[1] < hyperfine_offsets[2]))
    throw std::invalid_argument(
        "hyperfine offsets must be strictly increasing with F'");
  if (hyperfine_offsets[2] != 0.0)
    throw std::invalid_argument("the F'=3 offset must be 0");
  if (!(g_max > 0.0) || !(kappa > 0.0) || !(gamma > 0.0))
    throw std::invalid_argument("g_max, kappa and gamma must be positive");
}

}  // namespace cqed
