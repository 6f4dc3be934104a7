// Dense eigensolvers for the small matrices this project diagonalizes:
// cyclic Jacobi rotations for real symmetric matrices, and complex
// Hermitian matrices handled through their real symmetric embedding.
#pragma once

#include <complex>
#include <vector>

namespace cqed {

struct SymmetricEigen {
  std::vector<double> values;                // ascending
  std::vector<std::vector<double>> vectors;  // vectors[k] pairs with values[k]
};

// Cyclic Jacobi sweeps until the off-diagonal Frobenius norm drops below
// tol * ||A||_F. `matrix` is row-major n x n and must be symmetric.
SymmetricEigen jacobi_eigensolve(std::vector<double> matrix, int n,
                                 double tol = 1e-14);

struct HermitianEigen {
  std::vector<double> values;  // ascending
  std::vector<std::vector<std::complex<double>>> vectors;
};

// Solves H = A + iB via the 2n x 2n real embedding [[A, -B], [B, A]].
// Each complex eigenpair shows up twice in the embedding; the doubled
// spectrum is reduced back to n orthonormal complex eigenvectors.
HermitianEigen hermitian_eigensolve(const std::vector<std::complex<double>>& matrix,
                                    int n, double tol = 1e-14);

}  // namespace cqed
