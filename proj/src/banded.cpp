#include "steklov/banded.hpp"

#include <cmath>
#include <string>

#include "steklov/errors.hpp"
#include "steklov/simd/kernels.hpp"

namespace steklov {

BandedCholesky::BandedCholesky(std::size_t n, std::size_t band)
    : n_(n), band_(band), data_(n * (band + 1), 0.0) {}

void BandedCholesky::add(std::size_t i, std::size_t j, double value) {
  if (j > i || i - j > band_ || i >= n_) {
    raise(ErrorCode::OutOfRange, "banded: entry outside the stored band");
  }
  at(i, j) += value;
}

void BandedCholesky::factor() {
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t lo = i > band_ ? i - band_ : 0;
    for (std::size_t j = lo; j <= i; ++j) {
      // sum over k in [max(lo, j-band), j): both row slices are contiguous.
      const std::size_t k0 = (j > band_ && j - band_ > lo) ? j - band_ : lo;
      const std::size_t len = j - k0;
      const double* ri = &data_[i * (band_ + 1) + band_ - (i - k0)];
      const double* rj = &data_[j * (band_ + 1) + band_ - (j - k0)];
      const double s = at(i, j) - simd::dot(ri, rj, len);
      if (i == j) {
        if (!(s > 0.0)) {
          raise(ErrorCode::SingularInterior,
                "banded: nonpositive pivot at row " + std::to_string(i));
        }
        at(i, i) = std::sqrt(s);
      } else {
        at(i, j) = s / at(j, j);
      }
    }
  }
  factored_ = true;
}

void BandedCholesky::solve_in_place(double* b, std::size_t nrhs) const {
  if (!factored_) {
    raise(ErrorCode::ValidationError, "banded: solve before factor");
  }
  // L y = b
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t lo = i > band_ ? i - band_ : 0;
    double* bi = b + i * nrhs;
    for (std::size_t k = lo; k < i; ++k) {
      const double lik = at(i, k);
      if (lik != 0.0) simd::axpy(-lik, b + k * nrhs, bi, nrhs);
    }
    simd::scal(1.0 / at(i, i), bi, nrhs);
  }
  // L^T x = y
  for (std::size_t ii = n_; ii-- > 0;) {
    double* bi = b + ii * nrhs;
    const std::size_t hi = ii + band_ < n_ - 1 ? ii + band_ : n_ - 1;
    for (std::size_t k = ii + 1; k <= hi; ++k) {
      const double lki = at(k, ii);
      if (lki != 0.0) simd::axpy(-lki, b + k * nrhs, bi, nrhs);
    }
    simd::scal(1.0 / at(ii, ii), bi, nrhs);
  }
}

}  // namespace steklov
