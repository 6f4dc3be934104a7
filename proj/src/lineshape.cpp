#include "cqed/lineshape.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <thread>

namespace cqed {

void ProbeSweep::validate() const {
  if (probe_detunings.empty())
    throw std::invalid_argument("probe grid is empty");
  const bool ascending = probe_detunings.size() < 2 ||
                         probe_detunings[1] > probe_detunings[0];
  for (size_t i = 1; i < probe_detunings.size(); ++i) {
    const bool step_up = probe_detunings[i] > probe_detunings[i - 1];
    if (step_up != ascending || probe_detunings[i] == probe_detunings[i - 1])
      throw std::invalid_argument("probe grid must be strictly monotone");
  }
}

double cavity_response(const ReducedSystem& sys, double probe_detuning) {
  sys.validate();
  const std::complex<double> i(0.0, 1.0);
  std::complex<double> denom =
      i * (sys.cavity_detuning - probe_detuning) + sys.kappa;
  for (int f_prime = 1; f_prime <= 3; ++f_prime) {
    const double g = sys.couplings.g(f_prime);
    if (g == 0.0 || sys.atom_number == 0.0) continue;
    denom += sys.atom_number * g * g /
             (i * (sys.atomic_offsets[f_prime - 1] - probe_detuning) +
              sys.gamma);
  }
  return std::norm(sys.kappa / denom);
}

SpectrumGrid spectrum_sweep(const ReducedSystem& base,
                            std::span<const double> cavity_detunings,
                            const ProbeSweep& sweep, unsigned threads) {
  if (cavity_detunings.empty())
    throw std::invalid_argument("cavity detuning grid is empty");
  for (size_t i = 1; i < cavity_detunings.size(); ++i)
    if (!(cavity_detunings[i] > cavity_detunings[i - 1]))
      throw std::invalid_argument("cavity detuning grid must be increasing");
  sweep.validate();

  SpectrumGrid grid;
  grid.cavity_detunings.assign(cavity_detunings.begin(), cavity_detunings.end());
  grid.probe_detunings = sweep.probe_detunings;
  const size_t rows = grid.cavity_detunings.size();
  const size_t cols = grid.probe_detunings.size();
  grid.values.assign(rows * cols, 0.0);

  const auto fill_rows = [&](size_t row_begin, size_t row_end) {
    ReducedSystem sys = base;
    for (size_t r = row_begin; r < row_end; ++r) {
      sys.cavity_detuning = grid.cavity_detunings[r];
      for (size_t c = 0; c < cols; ++c)
        grid.values[r * cols + c] = cavity_response(sys, grid.probe_detunings[c]);
    }
  };

  const unsigned workers =
      std::min<unsigned>(std::max(threads, 1u), static_cast<unsigned>(rows));
  if (workers <= 1) {
    fill_rows(0, rows);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const size_t chunk = (rows + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const size_t begin = w * chunk;
      const size_t end = std::min(rows, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(fill_rows, begin, end);
    }
    for (auto& t : pool) t.join();
  }
  return grid;
}

void apply_floor(SpectrumGrid& grid, double floor) {
  for (double& v : grid.values)
    if (v < floor) v = 0.0;
}

}  // namespace cqed
