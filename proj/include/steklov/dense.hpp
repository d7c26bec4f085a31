#pragma once

#include <cstddef>
#include <vector>

namespace steklov {

// Row-major dense matrix. Rows are contiguous so the simd kernels apply
// directly to row slices.
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double* row(std::size_t i) { return data.data() + i * cols; }
  const double* row(std::size_t i) const { return data.data() + i * cols; }
  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  DenseMatrix transposed() const;
  void symmetrize();  // a <- (a + a^T)/2, square only
};

// In-place lower Cholesky A = L L^T on the square matrix a; the strict upper
// triangle is left untouched. Throws NotPositiveDefinite.
void cholesky_in_place(DenseMatrix& a);

// Triangular solves against the lower factor L stored in l. b is row-major
// n x nrhs; every right-hand side advances in lockstep so the inner loops run
// over contiguous rows.
void forward_solve_rows(const DenseMatrix& l, double* b, std::size_t nrhs);
void backward_solve_rows(const DenseMatrix& l, double* b, std::size_t nrhs);

struct SymmetricEigen {
  std::vector<double> values;  // ascending
  DenseMatrix vectors;         // vectors(i, k) = component i of eigenvector k
  int sweeps = 0;
};

// Cyclic Jacobi for a symmetric matrix (copy taken by value and destroyed).
// Stops when the off-diagonal Frobenius norm falls below 1e-12 of the total.
SymmetricEigen jacobi_eigensolve(DenseMatrix a);

// A x = sigma B x with A symmetric, B symmetric positive definite.
// B = L L^T, C = L^-1 A L^-T, Jacobi on C, x = L^-T q. Eigenvectors come out
// B-orthonormal, eigenvalues ascending. Throws NotPositiveDefinite.
SymmetricEigen generalized_sym_eig(const DenseMatrix& a, const DenseMatrix& b);

}  // namespace steklov
