#include "cqed/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cqed {

namespace {

double off_diagonal_norm(const std::vector<double>& a, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) s += 2.0 * a[i * n + j] * a[i * n + j];
  return std::sqrt(s);
}

double frobenius_norm(const std::vector<double>& a, int n) {
  double s = 0.0;
  for (int i = 0; i < n * n; ++i) s += a[i] * a[i];
  return std::sqrt(s);
}

}  // namespace

SymmetricEigen jacobi_eigensolve(std::vector<double> a, int n, double tol) {
  if (n <= 0 || static_cast<int>(a.size()) != n * n)
    throw std::invalid_argument("jacobi_eigensolve: bad matrix size");

  std::vector<double> v(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) v[i * n + i] = 1.0;

  const double norm = frobenius_norm(a, n);
  const double threshold = tol * std::max(norm, 1e-300);

  for (int sweep = 0; sweep < 100; ++sweep) {
    if (off_diagonal_norm(a, n) <= threshold) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double app = a[p * n + p], aqq = a[q * n + q];
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (int k = 0; k < n; ++k) {
          const double akp = a[k * n + p], akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a[p * n + k], aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;
        for (int k = 0; k < n; ++k) {
          const double vkp = v[k * n + p], vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return a[i * n + i] < a[j * n + j]; });

  SymmetricEigen out;
  out.values.resize(n);
  out.vectors.assign(n, std::vector<double>(n));
  for (int k = 0; k < n; ++k) {
    const int col = order[k];
    out.values[k] = a[col * n + col];
    for (int i = 0; i < n; ++i) out.vectors[k][i] = v[i * n + col];
  }
  return out;
}

HermitianEigen hermitian_eigensolve(const std::vector<std::complex<double>>& h,
                                    int n, double tol) {
  if (n <= 0 || static_cast<int>(h.size()) != n * n)
    throw std::invalid_argument("hermitian_eigensolve: bad matrix size");

  // Real embedding M = [[A, -B], [B, A]] with H = A + iB. M is symmetric
  // when H is Hermitian, and each eigenvector (u; v) of M maps to the
  // complex eigenvector u + iv of H, with (-v; u) giving the same ray.
  const int m = 2 * n;
  std::vector<double> embed(static_cast<size_t>(m) * m, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double re = h[i * n + j].real();
      const double im = h[i * n + j].imag();
      embed[i * m + j] = re;
      embed[(i + n) * m + (j + n)] = re;
      embed[i * m + (j + n)] = -im;
      embed[(i + n) * m + j] = im;
    }
  }

  const SymmetricEigen real = jacobi_eigensolve(std::move(embed), m, tol);

  // Each complex eigenpair shows up twice in the embedding ((u; v) and
  // (-v; u) both map onto the ray of u + iv). Walk the doubled spectrum in
  // eigenvalue groups and reduce each group of 2k real vectors to k complex
  // ones by pivoted Gram-Schmidt.
  const double scale = std::max(1.0, std::abs(real.values[0]) +
                                         std::abs(real.values[m - 1]));
  HermitianEigen out;
  int begin = 0;
  while (begin < m) {
    int end = begin + 1;
    while (end < m && real.values[end] - real.values[end - 1] <= 1e-8 * scale)
      ++end;
    const int group = end - begin;
    if (group % 2 != 0)
      throw std::runtime_error("hermitian_eigensolve: unpaired eigenvalue");

    std::vector<std::vector<std::complex<double>>> candidates;
    candidates.reserve(group);
    for (int k = begin; k < end; ++k) {
      std::vector<std::complex<double>> psi(n);
      for (int i = 0; i < n; ++i)
        psi[i] = {real.vectors[k][i], real.vectors[k][i + n]};
      candidates.push_back(std::move(psi));
    }

    std::vector<std::vector<std::complex<double>>> kept;
    for (int pick = 0; pick < group / 2; ++pick) {
      // orthogonalize every candidate against the kept set, take the largest
      size_t best = 0;
      double best_norm = -1.0;
      std::vector<std::vector<std::complex<double>>> residuals(candidates.size());
      for (size_t c = 0; c < candidates.size(); ++c) {
        auto res = candidates[c];
        for (const auto& k : kept) {
          std::complex<double> overlap = 0.0;
          for (int i = 0; i < n; ++i) overlap += std::conj(k[i]) * res[i];
          for (int i = 0; i < n; ++i) res[i] -= overlap * k[i];
        }
        double norm_sq = 0.0;
        for (int i = 0; i < n; ++i) norm_sq += std::norm(res[i]);
        if (norm_sq > best_norm) {
          best_norm = norm_sq;
          best = c;
        }
        residuals[c] = std::move(res);
      }
      if (best_norm <= 0.0)
        throw std::runtime_error("hermitian_eigensolve: degenerate pairing");
      auto psi = std::move(residuals[best]);
      const double inv = 1.0 / std::sqrt(best_norm);
      for (int i = 0; i < n; ++i) psi[i] *= inv;
      kept.push_back(std::move(psi));
      candidates.erase(candidates.begin() + static_cast<long>(best));
    }

    for (int j = 0; j < group / 2; ++j) {
      out.values.push_back(real.values[begin + 2 * j]);
      out.vectors.push_back(std::move(kept[j]));
    }
    begin = end;
  }
  if (static_cast<int>(out.values.size()) != n)
    throw std::runtime_error("hermitian_eigensolve: pairing failed");
  return out;
}

}  // namespace cqed
