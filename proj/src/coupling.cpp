#include "cqed/coupling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cqed {

namespace {

// Composite Simpson with interval doubling until the estimate settles to
// the requested relative tolerance.
template <typename F>
double integrate(const F& f, double a, double b, double rel_tol) {
  double previous = 0.0;
  for (int n = 64; n <= (1 << 22); n *= 2) {
    const double h = (b - a) / n;
    double sum = f(a) + f(b);
    for (int i = 1; i < n; ++i) sum += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    const double estimate = sum * h / 3.0;
    if (n > 64 && std::abs(estimate - previous) <=
                      rel_tol * std::max(std::abs(estimate), 1e-300))
      return estimate;
    previous = estimate;
  }
  return previous;
}

}  // namespace

void SpatialModel::validate() const {
  if (!(g_max > 0.0)) throw std::invalid_argument("g_max must be positive");
  if (axial == AxialDistribution::kFixedPositions && positions_kz.empty())
    throw std::invalid_argument("fixed-position model needs at least one atom");
  if (transverse) {
    if (!(transverse->waist_um > 0.0))
      throw std::invalid_argument("transverse waist must be positive");
    if (!(transverse->temperature_uK > 0.0) ||
        !(transverse->temperature_uK < transverse->trap_depth_uK))
      throw std::invalid_argument(
          "transverse model requires 0 < temperature < trap depth");
  }
}

MfDistribution MfDistribution::delta(int m_f) {
  if (m_f < -2 || m_f > 2)
    throw std::invalid_argument("m_F must be in [-2, 2]");
  MfDistribution dist;
  dist.p = {0.0, 0.0, 0.0, 0.0, 0.0};
  dist.p[m_f + 2] = 1.0;
  return dist;
}

void MfDistribution::validate() const {
  double sum = 0.0;
  for (double v : p) {
    if (v < 0.0) throw std::invalid_argument("m_F populations must be >= 0");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("m_F populations must sum to 1");
}

double axial_average(const SpatialModel& model) {
  model.validate();
  if (model.axial == AxialDistribution::kUniform)
    return model.g_max / std::numbers::sqrt2;

  double sum_sq = 0.0;
  for (double kz : model.positions_kz) {
    const double g = model.g_max * std::cos(kz);
    sum_sq += g * g;
  }
  return std::sqrt(sum_sq / static_cast<double>(model.positions_kz.size()));
}

double transverse_thermal_factor(const SpatialModel& model) {
  model.validate();
  if (!model.transverse)
    throw std::invalid_argument("no transverse model configured");
  const TransverseModel& tm = *model.transverse;

  // Trap U(rho) = -depth * exp(-rho^2/w0^2); harmonically the per-axis
  // Boltzmann variance is sigma^2 = w0^2 T / (2 depth). The cloud is 2D
  // in the plane transverse to the cavity axis, so radially
  // P(rho) ~ rho exp(-rho^2/(2 sigma^2)), and the factor is
  // sqrt(<exp(-2 rho^2/w0^2)>).
  const double w0 = tm.waist_um;
  const double sigma_sq =
      w0 * w0 * tm.temperature_uK / (2.0 * tm.trap_depth_uK);

  const auto weight = [&](double rho) {
    return rho * std::exp(-rho * rho / (2.0 * sigma_sq));
  };
  const auto weighted_env_sq = [&](double rho) {
    return weight(rho) * std::exp(-2.0 * rho * rho / (w0 * w0));
  };

  const double rmax = 12.0 * std::sqrt(sigma_sq);
  const double norm = integrate(weight, 0.0, rmax, 1e-10);
  const double mean_env_sq = integrate(weighted_env_sq, 0.0, rmax, 1e-10) / norm;
  return std::sqrt(mean_env_sq);
}

EffectiveCouplings effective_couplings(const DipoleTable& table,
                                       const MfDistribution& dist,
                                       const SpatialModel& spatial) {
  dist.validate();
  double gbar = axial_average(spatial);
  if (spatial.transverse) gbar *= transverse_thermal_factor(spatial);

  EffectiveCouplings out;
  out.gbar = gbar;
  for (int f_prime = 1; f_prime <= 3; ++f_prime) {
    double mean_sq = 0.0;
    for (int m_f = -2; m_f <= 2; ++m_f) {
      const double d = table.d(f_prime, m_f, 0);
      mean_sq += dist(m_f) * d * d;
    }
    out.gbar_by_f_prime[f_prime - 1] = gbar * std::sqrt(mean_sq);
  }
  return out;
}

}  // namespace cqed
