#include "steklov/dense.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>

#include "steklov/errors.hpp"
#include "steklov/simd/kernels.hpp"

namespace steklov {

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols, rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
  return t;
}

void DenseMatrix::symmetrize() {
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = i + 1; j < cols; ++j) {
      const double m = 0.5 * ((*this)(i, j) + (*this)(j, i));
      (*this)(i, j) = m;
      (*this)(j, i) = m;
    }
}

void cholesky_in_place(DenseMatrix& a) {
  const std::size_t n = a.rows;
  for (std::size_t j = 0; j < n; ++j) {
    double* rj = a.row(j);
    const double piv = rj[j] - simd::dot(rj, rj, j);
    if (!(piv > 0.0)) {
      raise(ErrorCode::NotPositiveDefinite,
            "dense: nonpositive pivot at column " + std::to_string(j));
    }
    const double ljj = std::sqrt(piv);
    rj[j] = ljj;
    const double inv = 1.0 / ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double* ri = a.row(i);
      ri[j] = (ri[j] - simd::dot(ri, rj, j)) * inv;
    }
  }
}

void forward_solve_rows(const DenseMatrix& l, double* b, std::size_t nrhs) {
  const std::size_t n = l.rows;
  for (std::size_t i = 0; i < n; ++i) {
    const double* li = l.row(i);
    double* bi = b + i * nrhs;
    for (std::size_t k = 0; k < i; ++k) {
      if (li[k] != 0.0) simd::axpy(-li[k], b + k * nrhs, bi, nrhs);
    }
    simd::scal(1.0 / li[i], bi, nrhs);
  }
}

void backward_solve_rows(const DenseMatrix& l, double* b, std::size_t nrhs) {
  const std::size_t n = l.rows;
  for (std::size_t ii = n; ii-- > 0;) {
    double* bi = b + ii * nrhs;
    for (std::size_t k = ii + 1; k < n; ++k) {
      const double lki = l(k, ii);
      if (lki != 0.0) simd::axpy(-lki, b + k * nrhs, bi, nrhs);
    }
    simd::scal(1.0 / l(ii, ii), bi, nrhs);
  }
}

namespace {

double off_diagonal_sq(const DenseMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = i + 1; j < a.cols; ++j) s += 2.0 * a(i, j) * a(i, j);
  return s;
}

double frobenius_sq(const DenseMatrix& a) {
  return simd::dot(a.data.data(), a.data.data(), a.data.size());
}

}  // namespace

SymmetricEigen jacobi_eigensolve(DenseMatrix a) {
  const std::size_t n = a.rows;
  // vt holds the transpose of the accumulated rotation product, so each
  // eigenvector update touches two contiguous rows.
  DenseMatrix vt(n, n);
  for (std::size_t i = 0; i < n; ++i) vt(i, i) = 1.0;

  const double total = frobenius_sq(a);
  const double stop = total > 0.0 ? 1e-24 * total : 0.0;  // (1e-12 relative)^2

  int sweeps = 0;
  const int max_sweeps = 64;
  while (off_diagonal_sq(a) > stop) {
    if (++sweeps > max_sweeps) {
      raise(ErrorCode::ValidationError,
            "dense: Jacobi sweep limit reached without convergence");
    }
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t =
            (tau >= 0.0 ? 1.0 : -1.0) / (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // A <- J^T A J applied as row then column rotation.
        simd::rot(a.row(p), a.row(q), c, s, n);
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        simd::rot(vt.row(p), vt.row(q), c, s, n);
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&a](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

  SymmetricEigen out;
  out.values.resize(n);
  out.vectors = DenseMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = vt(order[k], i);
  }
  out.sweeps = sweeps;
  return out;
}

SymmetricEigen generalized_sym_eig(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows != a.cols || b.rows != b.cols || a.rows != b.rows) {
    raise(ErrorCode::InvalidSpec, "dense: generalized eigensolve needs square matrices of one size");
  }
  const std::size_t n = a.rows;
  DenseMatrix l = b;
  cholesky_in_place(l);

  // C = L^-1 A L^-T via two forward sweeps with a transpose in between.
  DenseMatrix c = a;
  forward_solve_rows(l, c.data.data(), n);
  c = c.transposed();
  forward_solve_rows(l, c.data.data(), n);
  c.symmetrize();

  SymmetricEigen eig = jacobi_eigensolve(std::move(c));
  // Back-transform all eigenvectors at once: rows of the coefficient matrix
  // are vector components, columns index the eigenvectors.
  backward_solve_rows(l, eig.vectors.data.data(), n);
  return eig;
}

}  // namespace steklov
