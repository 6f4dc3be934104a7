// Steady-state weak-drive transmission: the linear susceptibility of the
// coupled system with finite kappa and gamma, normalized to the resonant
// empty cavity (n_bar / n_bar_empty).
#pragma once

#include <span>
#include <vector>

#include "cqed/reduced_model.hpp"

namespace cqed {

struct ProbeSweep {
  std::vector<double> probe_detunings;  // MHz, strictly monotone
  double drive_amplitude = 1.0;         // cancels under normalization

  void validate() const;
};

struct SpectrumGrid {
  std::vector<double> cavity_detunings;  // rows
  std::vector<double> probe_detunings;   // cols
  std::vector<double> values;            // row-major, n_bar / n_bar_empty

  double at(size_t row, size_t col) const {
    return values[row * probe_detunings.size() + col];
  }
};

// n_bar/n_bar_empty at one probe detuning:
//   |kappa / ( i(Delta_C - Delta_p) + kappa
//              + sum_F' N gbar_F'^2 / (i(offset_F' - Delta_p) + gamma) )|^2
// An empty cavity probed on resonance gives exactly 1.
double cavity_response(const ReducedSystem& sys, double probe_detuning);

// Point-wise map over (cavity detuning x probe detuning). Rows may be
// evaluated on several threads; the result does not depend on the count.
SpectrumGrid spectrum_sweep(const ReducedSystem& base,
                            std::span<const double> cavity_detunings,
                            const ProbeSweep& sweep, unsigned threads = 1);

// Detector-floor emulation: zero out values below the floor (optional
// post-processing, off by default in the CLI).
void apply_floor(SpectrumGrid& grid, double floor);

}  // namespace cqed
